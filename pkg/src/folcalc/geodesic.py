"""Geodesic vector fields on the total spaces of ``T_F`` and ``J^1 T_F``,
their structural fields, gluing checks and the ``J^1`` cocycle."""

from fractions import Fraction

from .algebra import MPoly, RatFunc, TSeries, as_scalar, directional_derivative
from .errors import InputError, VariableMismatch
from .foliation import AFFINE, PROJECTIVE, ChartField, Christoffel, change_generator_affine, \
    change_generator_projective


class LiftedField(ChartField):
    """A vector field on ``chart x C^k`` (fiber coordinates last)."""

    def __init__(self, components, base_vars, fiber_vars, name="lift"):
        super().__init__(components, name, allow_zero=True)
        self.base_vars = tuple(base_vars)
        self.fiber_vars = tuple(fiber_vars)
        if self.base_vars + self.fiber_vars != self.variables:
            raise VariableMismatch("lifted field variables must be base variables then fiber variables")

    def component(self, name):
        return self.components[self.variables.index(name)]

    def fiber_degree(self):
        idx = [self.variables.index(v) for v in self.fiber_vars]
        best = 0
        for c in self.components:
            poly = c if isinstance(c, MPoly) else c.num
            for e in poly.terms:
                best = max(best, sum(e[i] for i in idx))
        return best


def _zero_like(c):
    return c * 0


def _components_equal(a, b):
    for x, y in zip(a, b):
        if isinstance(x, RatFunc) or isinstance(y, RatFunc):
            x = x if isinstance(x, RatFunc) else RatFunc(x)
            if x != y:
                return False
        elif x != y:
            return False
    return True


def lie_bracket(X, Y):
    """``[X, Y]^i = X(Y^i) - Y(X^i)``."""
    if X.variables != Y.variables:
        raise VariableMismatch("bracket of fields over different variables")
    comps = [directional_derivative(y, X.components) - directional_derivative(x, Y.components)
             for x, y in zip(X.components, Y.components)]
    if isinstance(X, LiftedField):
        return LiftedField(comps, X.base_vars, X.fiber_vars, "bracket")
    return ChartField(comps, "bracket", allow_zero=True)


def fields_equal(X, Y):
    return X.variables == Y.variables and _components_equal(X.components, Y.components)


def _fresh(names, wanted):
    name = wanted
    while name in names:
        name += "_"
    return name


def _lift_symbol(sym, variables):
    if isinstance(sym, MPoly):
        return sym.extend(variables)
    if isinstance(sym, RatFunc):
        return RatFunc(sym.num.extend(variables), sym.den.extend(variables))
    if isinstance(sym, TSeries):
        raise InputError("geodesic fields need polynomial or rational symbols, not series")
    raise InputError(f"unsupported symbol type {type(sym).__name__}")


def build_geodesic_affine(Z, gamma, fiber="zeta"):
    """``X = zeta Z - gamma zeta^2 d/dzeta`` and ``H = zeta d/dzeta``."""
    if gamma.kind != AFFINE:
        raise InputError("build_geodesic_affine needs an affine symbol")
    zeta = _fresh(Z.variables, fiber)
    allv = Z.variables + (zeta,)
    zt = MPoly.gen(zeta, allv)
    g = _lift_symbol(gamma.symbol, allv)
    comps = [_lift_symbol(c, allv) * zt for c in Z.components]
    comps.append(g * zt * zt * -1)
    X = LiftedField(comps, Z.variables, (zeta,), f"X[{Z.name}]")
    zero = MPoly.zero(allv)
    H = LiftedField([zero] * len(Z.variables) + [zt], Z.variables, (zeta,), "H")
    return X, H


def build_geodesic_projective(Z, rho, fibers=("zeta", "xi")):
    """``X = zeta Z + zeta xi d/dzeta + (xi^2/2 - rho zeta^2) d/dxi`` with
    ``H = zeta d/dzeta + xi d/dxi`` and ``Y = 2 d/dxi``."""
    if rho.kind != PROJECTIVE:
        raise InputError("build_geodesic_projective needs a projective symbol")
    zeta = _fresh(Z.variables, fibers[0])
    xi = _fresh(Z.variables + (zeta,), fibers[1])
    allv = Z.variables + (zeta, xi)
    zt, x = MPoly.gen(zeta, allv), MPoly.gen(xi, allv)
    r = _lift_symbol(rho.symbol, allv)
    comps = [_lift_symbol(c, allv) * zt for c in Z.components]
    comps.append(zt * x)
    comps.append(r * zt * zt * -1 + x * x * Fraction(1, 2))
    fv = (zeta, xi)
    X = LiftedField(comps, Z.variables, fv, f"X[{Z.name}]")
    zero = MPoly.zero(allv)
    base_zero = [zero] * len(Z.variables)
    H = LiftedField(base_zero + [zt, x], Z.variables, fv, "H")
    Y = LiftedField(base_zero + [zero, MPoly.const(2, allv)], Z.variables, fv, "Y")
    return X, H, Y


def check_affine_relations(X, H):
    return {"[H,X]=X": fields_equal(lie_bracket(H, X), X)}


def check_sl2_relations(X, H, Y):
    two_h = LiftedField([c * 2 for c in H.components], H.base_vars, H.fiber_vars)
    minus_y = LiftedField([c * -1 for c in Y.components], Y.base_vars, Y.fiber_vars)
    return {
        "[Y,X]=2H": fields_equal(lie_bracket(Y, X), two_h),
        "[H,X]=X": fields_equal(lie_bracket(H, X), X),
        "[H,Y]=-Y": fields_equal(lie_bracket(H, Y), minus_y),
    }


def check_base_components(X, Z):
    """``T_G = pi^* T_F``: base components of ``X`` are ``zeta`` times those of ``Z``."""
    zt = MPoly.gen(X.fiber_vars[0], X.variables)
    return all(x == _lift_symbol(c, X.variables) * zt
               for x, c in zip(X.components[:len(Z.variables)], Z.components))


# ---------------------------------------------------------------------------
# gluing


def _ratfunc(c, variables):
    if isinstance(c, RatFunc):
        if c.variables != variables:
            return RatFunc(c.num.extend(variables), c.den.extend(variables))
        return c
    if isinstance(c, MPoly):
        return RatFunc(c.extend(variables))
    return RatFunc(MPoly.const(c, variables))


def pushforward_check(X_src, phi, X_dst):
    """Whether the map ``phi`` (target coordinates as functions of the source
    variables) carries ``X_src`` to ``X_dst``.  Returns ``(ok, witness)``."""
    v = X_src.variables
    phi = [_ratfunc(p, v) for p in phi]
    if len(phi) != len(X_dst.variables):
        raise InputError("map and target field dimensions differ")
    src = [_ratfunc(c, v) for c in X_src.components]
    for a, (p, comp) in enumerate(zip(phi, X_dst.components)):
        lhs = p.derive(src)
        rhs = _ratfunc(comp, X_dst.variables).compose(phi)
        if lhs != rhs:
            return False, {"coordinate": X_dst.variables[a], "pushed": str(lhs), "expected": str(rhs)}
    return True, None


def gluing_check_affine(Z_j, gamma_j, g):
    """Chart ``i`` has generator ``Z_i = g Z_j`` and the transported symbol;
    check that ``zeta_j = g zeta_i`` carries ``X_i`` to ``X_j``."""
    Z_i = ChartField([_ratfunc(g, Z_j.variables) * c for c in Z_j.components], "i")
    gamma_i = change_generator_affine(_rat_symbol(gamma_j), _ratfunc(g, Z_j.variables), Z_j)
    X_i, _ = build_geodesic_affine(Z_i, gamma_i)
    X_j, _ = build_geodesic_affine(Z_j, gamma_j)
    v = X_i.variables
    zeta = MPoly.gen(v[-1], v)
    phi = [MPoly.gen(x, v) for x in Z_j.variables] + [_ratfunc(g, v) * zeta]
    return pushforward_check(X_i, phi, X_j)


def gluing_check_projective(Z_j, rho_j, g):
    """As :func:`gluing_check_affine` for ``J^1``: ``zeta_j = g zeta_i`` and
    ``xi_j = (Z_j g) zeta_i + xi_i``."""
    gr = _ratfunc(g, Z_j.variables)
    Z_i = ChartField([gr * c for c in Z_j.components], "i")
    rho_i = change_generator_projective(_rat_symbol(rho_j), gr, Z_j)
    X_i, _, _ = build_geodesic_projective(Z_i, rho_i)
    X_j, _, _ = build_geodesic_projective(Z_j, rho_j)
    v = X_i.variables
    zeta, xi = MPoly.gen(v[-2], v), MPoly.gen(v[-1], v)
    zg = _ratfunc(Z_j.derive(gr), v)
    phi = [MPoly.gen(x, v) for x in Z_j.variables] + [_ratfunc(g, v) * zeta, zg * zeta + xi]
    return pushforward_check(X_i, phi, X_j)


def _rat_symbol(chris):
    s = chris.symbol
    return Christoffel(chris.kind, s if isinstance(s, RatFunc) else RatFunc(s))


# ---------------------------------------------------------------------------
# the fiberwise Riccati field


def projectivized_riccati(Z, rho, fiber="u"):
    """Both affine charts of the projectivized field: ``Z - (u^2/2 + rho) d/du``
    and, with ``v = 1/u``, ``Z + (1/2 + rho v^2) d/dv``."""
    if rho.kind != PROJECTIVE:
        raise InputError("projectivized_riccati needs a projective symbol")
    u = _fresh(Z.variables, fiber)
    vname = _fresh(Z.variables + (u,), "v")
    uv = Z.variables + (u,)
    vv = Z.variables + (vname,)
    U = MPoly.gen(u, uv)
    V = MPoly.gen(vname, vv)
    Fu = LiftedField([_lift_symbol(c, uv) for c in Z.components]
                     + [(U * U * Fraction(1, 2) + _lift_symbol(rho.symbol, uv)) * -1], Z.variables, (u,), "riccati[u]")
    Fv = LiftedField([_lift_symbol(c, vv) for c in Z.components]
                     + [_lift_symbol(rho.symbol, vv) * V * V + Fraction(1, 2)], Z.variables, (vname,), "riccati[v]")
    return Fu, Fv


def riccati_charts_agree(Fu, Fv):
    """Check that ``v = 1/u`` carries the ``u``-chart field to the ``v``-chart field."""
    v = Fu.variables
    U = MPoly.gen(v[-1], v)
    phi = [RatFunc(MPoly.gen(x, v)) for x in v[:-1]] + [RatFunc(MPoly.one(v), U)]
    return pushforward_check(Fu, phi, Fv)


def fiber_equilibria(Fu, point):
    """Pair-invariants of the fiber equilibria over a zero ``point`` of the base.

    Returns ``{"sum", "product", "degenerate"}`` for the two eigenvalues of
    the fiber polynomial at its roots, without extracting roots.
    """
    point = [as_scalar(p) for p in point]
    nb = len(Fu.base_vars)
    for c in Fu.components[:nb]:
        restricted = c.compose([MPoly.const(p, (Fu.fiber_vars[0],)) for p in point]
                               + [MPoly.gen(Fu.fiber_vars[0], (Fu.fiber_vars[0],))],
                               zero=MPoly.zero((Fu.fiber_vars[0],)))
        if not restricted.is_zero():
            raise InputError("point is not a zero of the base field")
    uvar = (Fu.fiber_vars[0],)
    P = Fu.components[nb].compose([MPoly.const(p, uvar) for p in point] + [MPoly.gen(uvar[0], uvar)],
                                  zero=MPoly.zero(uvar))
    if P.degree() != 2:
        raise InputError("fiber polynomial is not quadratic")
    a, b, c = P.coefficient((2,)), P.coefficient((1,)), P.coefficient((0,))
    # eigenvalues P'(u_k) = 2a u_k + b at the two roots
    return {"sum": Fraction(0), "product": 4 * a * c - b * b, "degenerate": b * b - 4 * a * c == 0}


# ---------------------------------------------------------------------------
# the J^1 cocycle


def psi_matrix(g, Z_target):
    """``psi = [[g, 0], [Z g, 1]]`` for ``Z_source = g Z_target``."""
    return [[g, g * 0], [Z_target.derive(g), g * 0 + 1]]


def _matmul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _entry_is(value, target, order):
    if isinstance(value, TSeries):
        return value.agrees_with(TSeries.const(target, value.variables, value.order), order)
    if isinstance(value, RatFunc):
        return value == target
    return value == MPoly.const(target, value.variables) if isinstance(value, MPoly) else value == target


def _identity_witness(M, order=None):
    for i in range(2):
        for j in range(2):
            if not _entry_is(M[i][j], 1 if i == j else 0, order):
                return {"entry": [i, j], "value": str(M[i][j])}
    return None


def cocycle_check(fields, multipliers, order=None):
    """Verify the ``J^1`` cocycle identities on declared overlap data.

    ``fields`` maps chart names to generators written in one common
    coordinate system; ``multipliers[(j, i)] = g`` declares ``Z_i = g Z_j``
    and defines ``psi_ji``.  Checks ``psi_ij psi_ji = I`` for every declared
    pair and ``psi_ij psi_jk psi_ki = I`` for every declared triangle.
    Series multipliers are compared through ``order``.
    """
    report = {"consistency": [], "inverse": [], "triple": [], "ok": True}
    psi = {}
    for (j, i), g in multipliers.items():
        Zi, Zj = fields[i], fields[j]
        psi[(j, i)] = psi_matrix(g, Zj)
        ok = True
        for a, b in zip(Zi.components, Zj.components):
            prod = g * b
            if isinstance(prod, TSeries):
                ok = ok and prod.agrees_with(a if isinstance(a, TSeries) else TSeries(a, prod.order), order)
            elif isinstance(prod, RatFunc) or isinstance(a, RatFunc):
                ok = ok and _ratfunc(prod, prod.variables) == a
            else:
                ok = ok and prod == a
        report["consistency"].append({"pair": [j, i], "ok": ok})
        report["ok"] &= ok
    for (j, i) in multipliers:
        if (i, j) in psi and (j, i) < (i, j):
            w = _identity_witness(_matmul(psi[(i, j)], psi[(j, i)]), order)
            report["inverse"].append({"pair": [i, j], "ok": w is None, "witness": w})
            report["ok"] &= w is None
    names = sorted({n for pair in multipliers for n in pair})
    for a in names:
        for b in names:
            for c in names:
                if len({a, b, c}) < 3 or not (a < b < c):
                    continue
                if (a, b) in psi and (b, c) in psi and (c, a) in psi:
                    w = _identity_witness(_matmul(_matmul(psi[(a, b)], psi[(b, c)]), psi[(c, a)]), order)
                    report["triple"].append({"charts": [a, b, c], "ok": w is None, "witness": w})
                    report["ok"] &= w is None
    return report


def projective_space_cocycle_data(Zh, k=None):
    """Fields and multipliers for all standard charts of ``P^n``, written in
    the coordinates of chart ``k`` (default: the last one)."""
    from .foliation import chart_variables, homogeneous_to_chart, _homogeneous_degree
    n1 = Zh.dim
    k = n1 - 1 if k is None else k
    d = _homogeneous_degree(Zh)
    Wk, _ = homogeneous_to_chart(Zh, k)
    kv = chart_variables(Zh, k)

    def mult(l):
        if l == k:
            return RatFunc(MPoly.one(kv))
        return RatFunc(MPoly.gen(Zh.variables[l], kv)) ** (1 - d)

    base = [RatFunc(c) for c in Wk.components]
    fields = {l: ChartField([mult(l) * c for c in base], f"chart{l}") for l in range(n1)}
    multipliers = {}
    for j in range(n1):
        for i in range(n1):
            if i != j:
                multipliers[(j, i)] = mult(i) / mult(j)
    return fields, multipliers
