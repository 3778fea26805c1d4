"""Finitely presented cohomology rings, total Chern classes and the
characteristic numbers on the right-hand side of the index formulas.

A ring is stored as an explicit monomial basis with a multiplication table
and a linear functional on the top degree (the fundamental class).  Degrees
are real cohomological degrees, so generators have even degree and a
manifold of complex dimension ``n`` has top degree ``2n``.

Orientation conventions: ``int h^n = 1`` on ``P^n`` and ``int H*V = 1`` on
``C x P^1``; every sign in a report follows from these two choices.
"""

import itertools
from fractions import Fraction

from .algebra import MPoly, as_scalar, format_poly
from .errors import InputError
from .expr import parse_expression
from .symfun import SymPoly, eval_on_classes, hat_decompose

CONVENTION = "int h^n = 1 on P^n; int H*V = 1 on C x P^1 (H: horizontal curve, V: vertical curve)"


class RingPresentation:
    def __init__(self, name, generators, basis, table, integral, top_degree,
                 base=None, check=True):
        self.name = name
        self.generators = tuple((g, int(d)) for g, d in generators)
        self.gen_names = tuple(g for g, _ in self.generators)
        self.basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.degrees = tuple(self._mono_degree(b) for b in self.basis)
        self.table = table
        self.integral_values = {i: as_scalar(v) for i, v in integral.items() if as_scalar(v)}
        self.top_degree = top_degree
        self.base = base
        for g, d in self.generators:
            if d <= 0 or d % 2:
                raise InputError(f"generator {g} must have positive even degree")
        if check:
            self.check()

    def _mono_degree(self, exp):
        return sum(k * d for k, (_, d) in zip(exp, self.generators))

    @property
    def dimension(self):
        return self.top_degree // 2

    def __repr__(self):
        return f"RingPresentation({self.name!r}, basis={len(self.basis)})"

    # elements -------------------------------------------------------------
    def element(self, coeffs):
        return RingElement(self, coeffs)

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return RingElement(self, {self.index[(0,) * len(self.generators)]: Fraction(1)})

    def scalar(self, c):
        return self.one() * c

    def gen(self, name):
        exp = tuple(1 if g == name else 0 for g in self.gen_names)
        if name not in self.gen_names:
            raise InputError(f"unknown generator {name!r}")
        if exp in self.index:
            return RingElement(self, {self.index[exp]: Fraction(1)})
        return self.from_poly(MPoly.gen(name, self.gen_names))

    def from_poly(self, poly):
        poly = poly.extend(self.gen_names) if poly.variables != self.gen_names else poly
        gens = [self.gen_element(g) for g in self.gen_names]
        return poly.compose(gens, zero=self.zero()) + self.zero()

    def gen_element(self, name):
        exp = tuple(1 if g == name else 0 for g in self.gen_names)
        if exp in self.index:
            return RingElement(self, {self.index[exp]: Fraction(1)})
        raise InputError(f"generator {name!r} is not a basis element")

    def parse(self, text):
        return self.from_poly(parse_expression(text, self.gen_names))

    def mul_basis(self, i, j):
        return self.table[(i, j) if i <= j else (j, i)]

    # validation -----------------------------------------------------------
    def check(self):
        n = len(self.basis)
        for i in range(n):
            for j in range(i, n):
                prod = self.mul_basis(i, j)
                for k in prod:
                    if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                        raise InputError(f"{self.name}: product of basis elements {i},{j} breaks the grading")
        for i, j, k in itertools.product(range(n), repeat=3):
            left = RingElement(self, self.mul_basis(i, j)) * RingElement(self, {k: Fraction(1)})
            right = RingElement(self, {i: Fraction(1)}) * RingElement(self, self.mul_basis(j, k))
            if left != right:
                raise InputError(f"{self.name}: multiplication is not associative on basis ({i},{j},{k})")
        for i in self.integral_values:
            if self.degrees[i] != self.top_degree:
                raise InputError(f"{self.name}: integral declared below top degree")
        if not self.integral_values:
            raise InputError(f"{self.name}: fundamental class functional is zero")

    # construction -----------------------------------------------------------
    @classmethod
    def from_relations(cls, name, generators, relations, integral, top_degree=None):
        """Build a ring from monomial rewriting rules.

        ``relations`` maps a monomial exponent (over the generators) to the
        polynomial it rewrites to; monomials above the top degree vanish.
        """
        generators = tuple((g, int(d)) for g, d in generators)
        names = tuple(g for g, _ in generators)
        gdeg = [d for _, d in generators]
        integral = {tuple(k): as_scalar(v) for k, v in integral.items()}
        if top_degree is None:
            if not integral:
                raise InputError("need a fundamental class to infer the top degree")
            top_degree = max(sum(k * d for k, d in zip(e, gdeg)) for e in integral)

        def deg(e):
            return sum(k * d for k, d in zip(e, gdeg))

        rules = []
        for lhs, rhs in relations.items():
            lhs = tuple(lhs)
            rhs = rhs if isinstance(rhs, MPoly) else parse_expression(str(rhs), names)
            rhs = rhs.extend(names)
            for e in rhs.terms:
                if deg(e) != deg(lhs):
                    raise InputError(f"relation for {format_poly(MPoly.monomial(lhs, names))} is not homogeneous")
            rules.append((lhs, rhs))

        memo = {}

        def reduce(exp, depth=0):
            if depth > 200:
                raise InputError("relations do not terminate")
            if exp in memo:
                return memo[exp]
            if deg(exp) > top_degree:
                memo[exp] = {}
                return {}
            for lhs, rhs in rules:
                if all(a >= b for a, b in zip(exp, lhs)):
                    rest = tuple(a - b for a, b in zip(exp, lhs))
                    out = {}
                    for e, c in rhs.terms.items():
                        for f, c2 in reduce(tuple(x + y for x, y in zip(e, rest)), depth + 1).items():
                            out[f] = out.get(f, 0) + c * c2
                    out = {f: c for f, c in out.items() if c}
                    memo[exp] = out
                    return out
            memo[exp] = {exp: Fraction(1)}
            return memo[exp]

        basis = []
        max_exp = [top_degree // d for d in gdeg]
        for exp in itertools.product(*[range(m + 1) for m in max_exp]):
            if deg(exp) <= top_degree and reduce(exp) == {exp: Fraction(1)}:
                basis.append(exp)
        basis.sort(key=lambda e: (deg(e), tuple(-x for x in e)))
        index = {b: i for i, b in enumerate(basis)}
        table = {}
        for i, a in enumerate(basis):
            for j in range(i, len(basis)):
                b = basis[j]
                prod = reduce(tuple(x + y for x, y in zip(a, b)))
                table[(i, j)] = {index[e]: c for e, c in prod.items()}
        ints = {}
        for e, v in integral.items():
            if e not in index:
                raise InputError(f"integral declared on non-basis monomial {e}")
            ints[index[e]] = v
        return cls(name, generators, basis, table, ints, top_degree)

    @classmethod
    def from_json(cls, doc, name="custom"):
        """Ring from ``{generators: [{name, degree}], relations: ["mono=expr"], integral: {mono: value}}``."""
        try:
            gens = [(g["name"], int(g["degree"])) for g in doc["generators"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"ring descriptor: bad generators ({exc})") from exc
        names = [g for g, _ in gens]
        relations = {}
        for rel in doc.get("relations", []):
            if "=" not in rel:
                raise InputError(f"ring descriptor: relation {rel!r} lacks '='")
            lhs, rhs = rel.split("=", 1)
            relations[_monomial_exponent(lhs, names)] = parse_expression(rhs, names)
        integral = {_monomial_exponent(k, names): as_scalar(str(v))
                    for k, v in doc.get("integral", {}).items()}
        return cls.from_relations(name, gens, relations, integral, doc.get("top_degree"))


def _monomial_exponent(text, names):
    poly = parse_expression(text, names)
    if len(poly.terms) != 1:
        raise InputError(f"{text!r} is not a monomial")
    (exp, coeff), = poly.terms.items()
    if coeff != 1:
        raise InputError(f"{text!r} must be a monic monomial")
    return exp


class RingElement:
    """Element of a :class:`RingPresentation`, as basis coordinates."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {i: as_scalar(c) for i, c in coeffs.items() if c}

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise InputError("ring elements from different presentations")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement(self.ring, {i: c * other for i, c in self.coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for k, c in self.ring.mul_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return RingElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("nonnegative integer powers only")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def component(self, degree):
        """Homogeneous part of the given real degree."""
        return RingElement(self.ring, {i: c for i, c in self.coeffs.items()
                                       if self.ring.degrees[i] == degree})

    def constant(self):
        return sum((c for i, c in self.coeffs.items() if self.ring.degrees[i] == 0), Fraction(0))

    def integral(self):
        """Pairing with the fundamental class (top-degree part only)."""
        return sum((c * self.ring.integral_values.get(i, 0) for i, c in self.coeffs.items()), Fraction(0))

    def as_poly(self):
        names = self.ring.gen_names
        return MPoly(names, {self.ring.basis[i]: c for i, c in self.coeffs.items()})

    def __str__(self):
        return format_poly(self.as_poly())

    def __repr__(self):
        return f"RingElement({self})"


class VirtualBundle:
    """A (virtual) bundle known through its total Chern class."""

    def __init__(self, total):
        if total.constant() != 1 or total.component(0) != total.ring.one():
            raise InputError("a total Chern class starts with 1")
        self.total = total

    @property
    def ring(self):
        return self.total.ring

    def chern(self, i):
        return self.total.component(2 * i)

    def classes(self, count):
        return [self.chern(i) for i in range(1, count + 1)]

    def __sub__(self, other):
        return VirtualBundle(chern_difference(self.total, other.total))

    def __add__(self, other):
        return VirtualBundle(self.total * other.total)


def total_inverse(c):
    ring = c.ring
    if c.component(0) != ring.one():
        raise InputError("total Chern class must have degree-0 term 1")
    x = c - ring.one()
    result = ring.one()
    power = ring.one()
    for _ in range(ring.dimension + 1):
        power = power * (-x)
        if power.is_zero():
            break
        result = result + power
    return result


def chern_difference(cA, cB):
    """Total Chern class of ``A - B``: ``c(A) / c(B)``."""
    if cA.component(0) != cA.ring.one():
        raise InputError("total Chern class must have degree-0 term 1")
    return cA * total_inverse(cB)


# ---------------------------------------------------------------------------
# built-in models


def projective_space(n):
    return RingPresentation.from_relations(
        f"P^{n}", [("h", 2)], {(n + 1,): MPoly.zero(("h",))}, {(n,): 1}, top_degree=2 * n)


def curve(genus):
    ring = RingPresentation.from_relations(f"curve(g={genus})", [("p", 2)], {}, {(1,): 1}, top_degree=2)
    return ring


def curve_times_p1(genus):
    names = ("H", "V")
    return RingPresentation.from_relations(
        f"C_{genus} x P^1", [("H", 2), ("V", 2)],
        {(2, 0): MPoly.zero(names), (0, 2): MPoly.zero(names)},
        {(1, 1): 1}, top_degree=4)


def builtin_ring(kind, param):
    if kind == "projective_space":
        return projective_space(param)
    if kind == "curve":
        return curve(param)
    if kind == "curve_times_p1":
        return curve_times_p1(param)
    raise InputError(f"unknown model manifold {kind!r}")


def tangent_class(ring, kind, param):
    """Total Chern class of the tangent bundle of a built-in model."""
    if kind == "projective_space":
        return (ring.one() + ring.gen("h")) ** (param + 1)
    if kind == "curve":
        return ring.one() + ring.gen("p") * (2 - 2 * param)
    if kind == "curve_times_p1":
        return (ring.one() + ring.gen("H") * 2) * (ring.one() + ring.gen("V") * (2 - 2 * param))
    raise InputError(f"unknown model manifold {kind!r}")


# ---------------------------------------------------------------------------
# projective bundles of rank-2 bundles


class ProjBundle(RingPresentation):
    """Cohomology of ``P(V)`` for a rank-2 bundle ``V`` with ``zeta = c_1(L)``.

    Basis: ``pi^*b`` and ``zeta * pi^*b`` for base basis elements ``b``;
    ``zeta^2 = -pi^*c1(V) zeta - pi^*c2(V)``.
    """

    def __init__(self, base, c1V, c2V, zeta="zeta"):
        if c1V.ring is not base or c2V.ring is not base:
            raise InputError("Chern classes must live in the base ring")
        if c1V != c1V.component(2) or c2V != c2V.component(4):
            raise InputError("c1(V), c2(V) must be homogeneous of degrees 2 and 4")
        self.c1V = c1V
        self.c2V = c2V
        nb = len(base.basis)
        basis = [b + (0,) for b in base.basis] + [b + (1,) for b in base.basis]
        generators = list(base.generators) + [(zeta, 2)]

        def lift(elem, shift):
            return {i + shift * nb: c for i, c in elem.coeffs.items()}

        table = {}
        for i in range(2 * nb):
            for j in range(i, 2 * nb):
                bi, si = i % nb, i // nb
                bj, sj = j % nb, j // nb
                p = RingElement(base, base.mul_basis(bi, bj))
                s = si + sj
                if s == 0:
                    table[(i, j)] = lift(p, 0)
                elif s == 1:
                    table[(i, j)] = lift(p, 1)
                else:
                    out = lift(-(c2V * p), 0)
                    out.update(lift(-(c1V * p), 1))
                    table[(i, j)] = {k: c for k, c in out.items() if c}
        integral = {i + nb: v for i, v in base.integral_values.items()}
        super().__init__(f"P(V) over {base.name}", generators, basis, table, integral,
                         base.top_degree + 2, base=base)
        self.zeta_name = zeta

    def zeta(self):
        return self.gen_element(self.zeta_name)

    def pullback(self, beta):
        if beta.ring is not self.base:
            raise InputError("pullback expects an element of the base ring")
        return RingElement(self, dict(beta.coeffs))

    def transfer(self, e):
        """Integration along the fibers: ``pi^!(a + zeta*b) = b``."""
        if e.ring is not self:
            raise InputError("transfer expects an element of this bundle ring")
        nb = len(self.base.basis)
        return RingElement(self.base, {i - nb: c for i, c in e.coeffs.items() if i >= nb})


def proj_bundle(base, c1V, c2V):
    return ProjBundle(base, c1V, c2V)


def transfer(e):
    if not isinstance(e.ring, ProjBundle):
        raise InputError("transfer needs an element of a projective-bundle ring")
    return e.ring.transfer(e)


# ---------------------------------------------------------------------------
# right-hand sides of the index formulas


def rhs_affine(ring, c1TF):
    """``int c_1(T_F)^n``."""
    if c1TF != c1TF.component(2):
        raise InputError("c1(T_F) must be homogeneous of degree 2")
    return (c1TF ** ring.dimension).integral()


def _as_sympoly(phi, arity):
    if isinstance(phi, SymPoly):
        return phi
    if isinstance(phi, str):
        return SymPoly.from_expression(phi, arity)
    return SymPoly(phi)


def normal_class(ring, c1TF, cTM):
    """Total Chern class of ``TM - T_F``."""
    return chern_difference(cTM, ring.one() + c1TF)


def rhs_projective(ring, c1TF, cTM, phi):
    """``sum_j int c_1(T_F)^{2j} * phihat_{n-2j}(c(TM - T_F))``."""
    n = ring.dimension
    phi = _as_sympoly(phi, n + 1)
    if phi.arity != n + 1 or (not phi.is_zero() and phi.degree != n + 1):
        raise InputError(f"phi must be symmetric homogeneous of degree {n + 1} in {n + 1} variables")
    if phi.is_zero():
        return Fraction(0)
    hats = hat_decompose(phi)
    classes = VirtualBundle(normal_class(ring, c1TF, cTM)).classes(n)
    total = ring.zero()
    for j in range(n // 2 + 1):
        part = eval_on_classes(hats[n - 2 * j], classes, ring.zero())
        total = total + (c1TF ** (2 * j)) * part
    return total.integral()


def rhs_baum_bott(ring, c1TF, cTM, phi):
    """``int phi(c(TM - T_F))`` for ``phi`` of degree ``n`` in ``n`` variables."""
    n = ring.dimension
    phi = _as_sympoly(phi, n)
    if phi.arity != n or (not phi.is_zero() and phi.degree != n):
        raise InputError(f"phi must be symmetric homogeneous of degree {n} in {n} variables")
    classes = VirtualBundle(normal_class(ring, c1TF, cTM)).classes(n)
    return eval_on_classes(phi, classes, ring.zero()).integral()


def rhs_projective_via_bundle(ring, c1TF, cTM, phi):
    """The projective right-hand side recomputed on ``P(J^1 T_F)``.

    Uses ``c(T P - T_G) = (1 + kappa) * pi^* c(TM - T_F)`` with
    ``kappa = 2 zeta + pi^* c1(T_F)``, evaluates ``phi`` directly (no split
    along the last variable) and halves the integral.  Independent of
    :func:`rhs_projective` apart from the ring kernel.
    """
    n = ring.dimension
    phi = _as_sympoly(phi, n + 1)
    bundle = ProjBundle(ring, c1TF, ring.zero())
    kappa = bundle.zeta() * 2 + bundle.pullback(c1TF)
    c = (bundle.one() + kappa) * bundle.pullback(normal_class(ring, c1TF, cTM))
    classes = [c.component(2 * i) for i in range(1, n + 2)]
    return eval_on_classes(phi, classes, bundle.zero()).integral() / 2


# ---------------------------------------------------------------------------
# surfaces


def product_surface_classes(genus, n_v, n_h):
    """First Chern classes attached to a foliation on ``C_g x P^1`` with
    vertical degree ``n_v`` and horizontal degree ``n_h``."""
    ring = curve_times_p1(genus)
    H, V = ring.gen("H"), ring.gen("V")
    c1KF = H * n_v + V * n_h
    c1KS = V * (2 * genus - 2) - H * 2
    target = c1KF * 2 - c1KS
    coords = (target.as_poly().coefficient((1, 0)), target.as_poly().coefficient((0, 1)))
    return {
        "ring": ring,
        "c1_KF": c1KF,
        "c1_KS": c1KS,
        "c1_TF": -c1KF,
        "c1_KF2_KSdual": target,
        "components": coords,
        "cTM": tangent_class(ring, "curve_times_p1", genus),
    }


def signature_report(c1sq, c2, c1sq_TF=None):
    """Signature test for a regular foliation on a compact surface.

    For a regular foliation Baum-Bott forces ``c1^2(T_F) = c1^2 - 2 c2``;
    a foliated projective structure forces ``c1^2(T_F) = 0`` (empty
    singular set), hence signature ``(c1^2 - 2 c2) / 3 = 0``.
    """
    c1sq, c2 = as_scalar(c1sq), as_scalar(c2)
    expected = c1sq - 2 * c2
    declared = expected if c1sq_TF is None else as_scalar(c1sq_TF)
    tau = expected / 3
    return {
        "c1^2(M)": c1sq,
        "c2(M)": c2,
        "c1^2(T_F)": declared,
        "signature": tau,
        "baum_bott_consistent": declared == expected,
        "projective_structure_possible": declared == 0 and tau == 0,
        "flag": None if declared == 0 and tau == 0 else
                "incompatible with any foliated projective structure (nonzero signature)",
    }
