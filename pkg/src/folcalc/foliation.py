"""Foliations in affine charts: generators, Christoffel symbols and their
transformation laws, the structure induced on ``P^n`` by a homogeneous
vector field, and singular-point records."""

from fractions import Fraction
from math import lcm

from .algebra import MPoly, RatFunc, TSeries, as_scalar, directional_derivative, format_poly
from .errors import DegenerateError, Inadmissible, InputError, NotSingular, VariableMismatch
from .expr import parse_expression

AFFINE = "affine"
PROJECTIVE = "projective"


class ChartField:
    """A polynomial vector field ``sum_i components[i] d/dx_i`` in one chart."""

    def __init__(self, components, name="chart", allow_zero=False):
        comps = list(components)
        if not comps:
            raise InputError("a vector field needs at least one component")
        variables = comps[0].variables
        for c in comps:
            if c.variables != variables:
                raise VariableMismatch("field components live over different variables")
        if len(comps) != len(variables):
            raise InputError(f"{len(comps)} components for {len(variables)} variables")
        if not allow_zero and all(c.is_zero() for c in comps):
            raise InputError("the vector field is identically zero")
        self.components = tuple(comps)
        self.variables = tuple(variables)
        self.name = name

    @classmethod
    def parse(cls, exprs, variables, name="chart"):
        return cls([parse_expression(e, variables) for e in exprs], name)

    @property
    def dim(self):
        return len(self.variables)

    def __call__(self, f):
        return self.derive(f)

    def derive(self, f):
        """``Z(f)``; constants are killed."""
        if isinstance(f, (int, Fraction)):
            return MPoly.zero(self.variables)
        return directional_derivative(f, self.components)

    def scaled(self, g):
        return ChartField([g * c for c in self.components], self.name)

    def degree(self):
        return max(c.degree() for c in self.components)

    def evaluate(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def jacobian(self, point):
        """``A[i][j] = dZ^i/dx_j`` at ``point``."""
        return [[c.diff(j).evaluate(point) for j in range(self.dim)] for c in self.components]

    def __eq__(self, other):
        return isinstance(other, ChartField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        parts = []
        for v, c in zip(self.variables, self.components):
            if not c.is_zero():
                parts.append(f"({format_poly(c)})*d/d{v}")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"ChartField({self.name!r}: {self})"


class Christoffel:
    """The symbol ``nabla(Z)`` (affine) or ``Xi(Z)`` (projective) of a generator."""

    def __init__(self, kind, symbol):
        if kind not in (AFFINE, PROJECTIVE):
            raise InputError(f"unknown Christoffel kind {kind!r}")
        if isinstance(symbol, (int, Fraction)):
            raise InputError("give the symbol as a polynomial or series over the chart variables")
        self.kind = kind
        self.symbol = symbol

    @classmethod
    def parse(cls, kind, text, variables):
        return cls(kind, parse_expression(text, variables))

    def evaluate(self, point):
        s = self.symbol
        if isinstance(s, TSeries):
            if any(as_scalar(p) for p in point):
                raise InputError("a series symbol can only be evaluated at the origin")
            return s.constant_term()
        return s.evaluate(point)

    def __eq__(self, other):
        if not isinstance(other, Christoffel) or other.kind != self.kind:
            return False
        return self.symbol == other.symbol

    def __hash__(self):
        return hash((self.kind, self.symbol))

    def __str__(self):
        return f"{self.kind}: {self.symbol}"

    __repr__ = __str__


def _expect(chris, kind):
    if chris.kind != kind:
        raise InputError(f"expected a {kind} Christoffel symbol, got {chris.kind}")


def _align(a, b):
    # RatFunc does not absorb series; keep rational data rational
    if isinstance(a, MPoly) and isinstance(b, RatFunc):
        return RatFunc(a)
    return a


def change_generator_affine(gamma, g, Z):
    """Symbol of ``gZ`` given the symbol ``gamma`` of ``Z``: ``Zg + g*gamma``."""
    _expect(gamma, AFFINE)
    if isinstance(g, (int, Fraction)):
        return Christoffel(AFFINE, gamma.symbol * g)
    sym = _align(gamma.symbol, g)
    return Christoffel(AFFINE, Z.derive(g) + g * sym)


def change_generator_projective(rho, g, Z):
    """Symbol of ``gZ``: ``g^2 rho + g Z(Z(g)) - (Zg)^2 / 2``."""
    _expect(rho, PROJECTIVE)
    if isinstance(g, (int, Fraction)):
        return Christoffel(PROJECTIVE, rho.symbol * (as_scalar(g) ** 2))
    zg = Z.derive(g)
    sym = _align(rho.symbol, g)
    return Christoffel(PROJECTIVE, g * g * sym + g * Z.derive(zg) - zg * zg * Fraction(1, 2))


def affine_to_projective(gamma, Z):
    """The associated projective symbol ``-gamma^2/2 + Z(gamma)``."""
    _expect(gamma, AFFINE)
    s = gamma.symbol
    return Christoffel(PROJECTIVE, s * s * Fraction(-1, 2) + Z.derive(s))


def extension_christoffel(Z, factors):
    """Affine symbol of ``Z`` extending the structure of ``prod f_i^{n_i} Z``.

    ``factors`` lists ``(f, n, h)`` with ``Z(f) = h f``; ``h`` may be
    ``None`` and is then computed.  A supplied ``h`` is checked against the
    exact quotient.
    """
    total = MPoly.zero(Z.variables)
    for entry in factors:
        f, n = entry[0], int(entry[1])
        h = entry[2] if len(entry) > 2 else None
        zf = Z.derive(f)
        try:
            quotient = zf.exact_divide(f)
        except InputError:
            raise InputError(f"{format_poly(f)} does not divide Z({format_poly(f)}) = {format_poly(zf)}") from None
        if h is not None and h != quotient:
            raise InputError(f"supplied cofactor {format_poly(h)} differs from Z(f)/f = {format_poly(quotient)}")
        total = total - quotient * n
    return Christoffel(AFFINE, total)


def turbulent_extension(n, xi0, mode=PROJECTIVE):
    """Symbol of ``z^n Z`` near a fiber ``z = 0`` from the symbol ``xi0`` of ``d/dz``.

    Projective: ``z^(2n-2) (z^2 xi0 + n(n-2)/2)``; affine:
    ``z^(n-1) (z xi0 + n)``.  Returns the expansion and whether it is
    holomorphic at ``z = 0``.
    """
    n = int(n)
    if n < 1:
        raise InputError("n must be a positive integer")
    if mode == PROJECTIVE:
        inner = xi0.shift(2) + Fraction(n * (n - 2), 2)
        out = inner.shift(2 * n - 2)
    elif mode == AFFINE:
        inner = xi0.shift(1) + n
        out = inner.shift(n - 1)
    else:
        raise InputError(f"unknown mode {mode!r}")
    out = out.with_weight(None)
    return out, out.is_holomorphic()


# ---------------------------------------------------------------------------
# homogeneous vector fields on C^{n+1}


def _homogeneous_degree(Zh):
    degs = {c.degree() for c in Zh.components if not c.is_zero()}
    for c in Zh.components:
        if not c.is_homogeneous():
            raise InputError(f"component {format_poly(c)} is not homogeneous")
    if len(degs) != 1:
        raise InputError(f"components have different degrees {sorted(degs)}")
    return degs.pop()


def chart_variables(Zh, k):
    return tuple(v for i, v in enumerate(Zh.variables) if i != k)


def _slice(Zh, k):
    chart_vars = chart_variables(Zh, k)
    values = []
    for i, v in enumerate(Zh.variables):
        values.append(MPoly.one(chart_vars) if i == k else MPoly.gen(v, chart_vars))
    return [c.compose(values, zero=MPoly.zero(chart_vars)) for c in Zh.components], chart_vars


def homogeneous_to_chart(Zh, k):
    """Induced foliation and affine structure on the chart ``x_k = 1``.

    Chart coordinates keep the names of the remaining homogeneous variables.
    ``W_i = Z^i - u_i Z^k`` and ``gamma = -(d-1) Z^k`` on the slice.
    """
    if not 0 <= k < Zh.dim:
        raise InputError(f"chart index {k} out of range")
    d = _homogeneous_degree(Zh)
    sliced, chart_vars = _slice(Zh, k)
    zk = sliced[k]
    comps = []
    for i, v in enumerate(Zh.variables):
        if i != k:
            comps.append(sliced[i] - MPoly.gen(v, chart_vars) * zk)
    if all(c.is_zero() for c in comps):
        raise DegenerateError("degenerate: radial")
    name = f"{Zh.variables[k]}=1"
    return ChartField(comps, name), Christoffel(AFFINE, zk * (1 - d))


def chart_transition(Zh, k, l):
    """Overlap data between charts ``x_k = 1`` and ``x_l = 1``.

    Returns ``(coords, g)``: the chart-``l`` coordinates as rational
    functions of the chart-``k`` coordinates, and the multiplier with
    ``W_l = g W_k``, namely ``u_l^(1-d)``.
    """
    if k == l:
        raise InputError("a transition needs two different charts")
    d = _homogeneous_degree(Zh)
    kvars = chart_variables(Zh, k)
    ul = MPoly.gen(Zh.variables[l], kvars)
    coords = []
    for i, v in enumerate(Zh.variables):
        if i == l:
            continue
        if i == k:
            coords.append(RatFunc(MPoly.one(kvars), ul))
        else:
            coords.append(RatFunc(MPoly.gen(v, kvars), ul))
    g = RatFunc(ul) ** (1 - d)
    return coords, g


def cross_chart_check(Zh, k, l):
    """Check ``W_l = g W_k`` and ``gamma_l = W_k(g) + g gamma_k`` on the overlap.

    Returns a dict of booleans; every comparison is an exact identity of
    rational functions in the chart-``k`` coordinates.
    """
    Wk, gk = homogeneous_to_chart(Zh, k)
    Wl, gl = homogeneous_to_chart(Zh, l)
    coords, g = chart_transition(Zh, k, l)
    field_ok = True
    for j, comp in enumerate(Wl.components):
        lhs = RatFunc(comp).compose(coords)
        rhs = g * coords[j].derive(Wk.components)
        if lhs != rhs:
            field_ok = False
    pulled = RatFunc(gl.symbol).compose(coords)
    moved = change_generator_affine(gk, g, Wk).symbol
    return {"field": field_ok, "christoffel": pulled == moved}


# ---------------------------------------------------------------------------
# singular points


def charpoly_sigmas(matrix):
    """Coefficients ``sigma_1..sigma_n`` of ``det(I + tA)`` (Faddeev-LeVerrier)."""
    n = len(matrix)
    A = [[as_scalar(x) for x in row] for row in matrix]
    if any(len(row) != n for row in A):
        raise InputError("matrix must be square")
    c = [Fraction(0)] * (n + 1)  # det(tI - A) = sum c[i] t^(n-i)
    c[0] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = [[sum((A[i][r] * M[r][j] for r in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (c[k - 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum((A[i][r] * M[r][j] for r in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        c[k] = -sum((AM[i][i] for i in range(n)), Fraction(0)) / k
    return [c[i] * (-1) ** i for i in range(1, n + 1)]


def _divisors(m):
    m = abs(m)
    out = set()
    i = 1
    while i * i <= m:
        if m % i == 0:
            out.update((i, m // i))
        i += 1
    return sorted(out)


def rational_eigenvalues(sigmas):
    """All eigenvalues with multiplicity if they are rational, else ``None``."""
    n = len(sigmas)
    # det(tI - A) = t^n - s1 t^(n-1) + s2 t^(n-2) - ...
    coeffs = [Fraction(1)] + [s * (-1) ** (i + 1) for i, s in enumerate(sigmas)]
    roots = []
    while len(coeffs) > 1:
        if coeffs[-1] == 0:
            roots.append(Fraction(0))
            coeffs = coeffs[:-1]
            continue
        scale = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * scale) for c in coeffs]
        found = None
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        deflated = [coeffs[0]]
        for c in coeffs[1:-1]:
            deflated.append(c + deflated[-1] * found)
        coeffs = deflated
    if len(roots) != n:
        return None
    return sorted(roots)


class SingularPointRecord:
    """Per-point data at a zero of a chart field."""

    def __init__(self, point, jacobian, sigmas, symbol_kind, symbol_value, eigenvalues=None, chart="chart"):
        self.point = tuple(as_scalar(p) for p in point)
        self.jacobian = [[as_scalar(x) for x in row] for row in jacobian]
        self.sigmas = [as_scalar(s) for s in sigmas]
        self.symbol_kind = symbol_kind
        self.symbol_value = None if symbol_value is None else as_scalar(symbol_value)
        self.eigenvalues = eigenvalues
        self.chart = chart

    @classmethod
    def from_eigenvalues(cls, eigenvalues, symbol_kind=None, symbol_value=None, point=None):
        """Record of a diagonal linear singularity, mainly for tests."""
        lam = [as_scalar(x) for x in eigenvalues]
        n = len(lam)
        jac = [[lam[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        point = point if point is not None else (0,) * n
        return cls(point, jac, charpoly_sigmas(jac), symbol_kind, symbol_value, sorted(lam))

    @property
    def dim(self):
        return len(self.point)

    @property
    def det(self):
        return self.sigmas[-1] if self.sigmas else Fraction(1)

    @property
    def nondegenerate(self):
        return self.det != 0

    @property
    def admissible(self):
        return self.nondegenerate and bool(self.symbol_value)

    def scaled(self, c):
        """Record of the generator ``cZ``: eigenvalues and symbol scale by ``c``."""
        c = as_scalar(c)
        jac = [[x * c for x in row] for row in self.jacobian]
        power = 2 if self.symbol_kind == PROJECTIVE else 1
        value = None if self.symbol_value is None else self.symbol_value * c ** power
        eig = None if self.eigenvalues is None else sorted(x * c for x in self.eigenvalues)
        return SingularPointRecord(self.point, jac, charpoly_sigmas(jac), self.symbol_kind, value, eig, self.chart)

    def to_json(self):
        from .report import q
        return {
            "chart": self.chart,
            "point": [q(x) for x in self.point],
            "jacobian": [[q(x) for x in row] for row in self.jacobian],
            "sigma": [q(x) for x in self.sigmas],
            "det": q(self.det),
            "symbol_kind": self.symbol_kind,
            "symbol_value": None if self.symbol_value is None else q(self.symbol_value),
            "nondegenerate": self.nondegenerate,
            "eigenvalues": None if self.eigenvalues is None else [q(x) for x in self.eigenvalues],
        }

    def __repr__(self):
        return (f"SingularPointRecord(point={[str(x) for x in self.point]}, "
                f"sigma={[str(x) for x in self.sigmas]}, symbol={self.symbol_value})")


def singular_record(W, symbol, candidates):
    """Verify caller-supplied zeros of ``W`` and record their invariants.

    ``symbol`` is a :class:`Christoffel` or ``None`` (Baum-Bott only).
    """
    seen = set()
    records = []
    for cand in candidates:
        p = tuple(as_scalar(x) for x in cand)
        if len(p) != W.dim:
            raise InputError(f"candidate {[str(x) for x in p]} has {len(p)} coordinates, chart has {W.dim}")
        if p in seen:
            raise InputError(f"duplicate candidate {[str(x) for x in p]}")
        seen.add(p)
        value = W.evaluate(p)
        if any(value):
            raise NotSingular(f"not singular: {[str(x) for x in p]} (field value {[str(x) for x in value]})")
        jac = W.jacobian(p)
        sigmas = charpoly_sigmas(jac)
        kind = symbol.kind if symbol is not None else None
        sval = symbol.evaluate(p) if symbol is not None else None
        records.append(SingularPointRecord(p, jac, sigmas, kind, sval, rational_eigenvalues(sigmas), W.name))
    return records


def ramification_indices(record, kind=None):
    """Principal ramification data at an admissible record.

    Affine: ``nu_i = lambda_i / gamma(0)``.  Projective:
    ``nu_i^2 = -lambda_i^2 / (2 rho(0))``.  The symmetric data (the
    elementary functions of the ``nu_i``, resp. ``nu_i^2``) is always
    returned; explicit lists only when the eigenvalues are rational.
    """
    kind = kind or record.symbol_kind
    if not record.nondegenerate:
        raise DegenerateError(f"degenerate Jacobian at {[str(x) for x in record.point]}")
    s = record.symbol_value
    if not s:
        raise Inadmissible(f"log-type singularity at {[str(x) for x in record.point]} (vanishing symbol)")
    n = record.dim
    lam = record.eigenvalues
    if kind == AFFINE:
        sym = [sig / s ** (i + 1) for i, sig in enumerate(record.sigmas)]
        nu = None if lam is None else [x / s for x in lam]
        return {"kind": AFFINE, "nu": nu, "sigma_nu": sym, "symbol": s}
    if kind == PROJECTIVE:
        # sigma_i of lambda_j^2 from det(I + tA)det(I - tA) = det(I - t^2 A^2)
        sig = [Fraction(1)] + list(record.sigmas)
        sq = []
        for i in range(1, n + 1):
            total = Fraction(0)
            for a in range(0, 2 * i + 1):
                b = 2 * i - a
                if a <= n and b <= n:
                    total += sig[a] * sig[b] * (-1) ** b
            sq.append(total * (-1) ** i)
        scale = Fraction(-1, 2) / s
        sym = [x * scale ** (i + 1) for i, x in enumerate(sq)]
        nu2 = None if lam is None else [-(x * x) / (2 * s) for x in lam]
        return {"kind": PROJECTIVE, "nu_squared": nu2, "sigma_nu_squared": sym, "symbol": s}
    raise InputError(f"unknown kind {kind!r}")


def homogeneous_records(Zh, points, kind=AFFINE):
    """Singular records of the foliation induced by ``Zh`` on ``P^n``.

    ``points`` are homogeneous coordinates of the singular points; each is
    read in the chart of its last nonzero coordinate.  The symbol is the
    homogeneity-induced affine one or its associated projective one.
    """
    records = []
    seen = set()
    for p in points:
        p = [as_scalar(x) for x in p]
        if len(p) != Zh.dim:
            raise InputError(f"point {[str(x) for x in p]} needs {Zh.dim} homogeneous coordinates")
        nz = [i for i, x in enumerate(p) if x]
        if not nz:
            raise InputError("the zero vector is not a point of projective space")
        k = nz[-1]
        local = tuple(x / p[k] for i, x in enumerate(p) if i != k)
        if (k, local) in seen:
            raise InputError(f"duplicate point {[str(x) for x in p]}")
        seen.add((k, local))
        W, gamma = homogeneous_to_chart(Zh, k)
        symbol = gamma if kind == AFFINE else affine_to_projective(gamma, W)
        if kind not in (AFFINE, PROJECTIVE, None):
            raise InputError(f"unknown kind {kind!r}")
        records.extend(singular_record(W, symbol if kind else None, [local]))
    return records
