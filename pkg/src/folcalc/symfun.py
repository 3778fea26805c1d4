"""Symmetric polynomials: elementary-symmetric form, the split along the last
variable, odd parts, and evaluation from characteristic polynomials."""

import itertools
from fractions import Fraction
from functools import cached_property, lru_cache

from .algebra import MPoly
from .errors import InputError, NotSymmetric


def sym_variables(k):
    return tuple(f"x{i}" for i in range(1, k + 1))


def elem_variables(k):
    return tuple(f"s{i}" for i in range(1, k + 1))


def elementary(i, variables):
    """The i-th elementary symmetric polynomial in ``variables``."""
    variables = tuple(variables)
    k = len(variables)
    terms = {}
    for combo in itertools.combinations(range(k), i):
        exp = [0] * k
        for j in combo:
            exp[j] = 1
        terms[tuple(exp)] = 1
    return MPoly(variables, terms)


def is_symmetric(poly):
    k = poly.nvars
    for i in range(k - 1):
        swapped = {}
        for e, c in poly.terms.items():
            e = list(e)
            e[i], e[i + 1] = e[i + 1], e[i]
            swapped[tuple(e)] = c
        if swapped != poly.terms:
            return False
    return True


class SymPoly:
    """A symmetric polynomial in ``arity`` variables.

    Symmetry is checked on construction.  The elementary-symmetric form and
    the split along the last variable are computed lazily and cached.
    """

    def __init__(self, poly, check=True):
        if check and not is_symmetric(poly):
            raise NotSymmetric(f"{poly} is not symmetric in {poly.variables}")
        self.poly = poly

    @classmethod
    def from_expression(cls, text, arity):
        from .expr import parse_expression
        return cls(parse_expression(text, sym_variables(arity)))

    @classmethod
    def power_sum(cls, power, arity):
        xs = MPoly.gens(sym_variables(arity))
        return cls(sum((x ** power for x in xs), MPoly.zero(sym_variables(arity))), check=False)

    @classmethod
    def sigma(cls, i, arity):
        return cls(elementary(i, sym_variables(arity)), check=False)

    @property
    def arity(self):
        return self.poly.nvars

    @property
    def degree(self):
        """Homogeneous degree, ``None`` when not homogeneous; 0 for zero."""
        if self.poly.is_zero():
            return 0
        degs = {sum(e) for e in self.poly.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_zero(self):
        return self.poly.is_zero()

    @cached_property
    def elementary_form(self):
        return to_elementary(self)

    def __eq__(self, other):
        return isinstance(other, SymPoly) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"SymPoly({self.poly})"


def _partitions(total, max_parts=None, max_part=None):
    """Partitions of ``total`` as non-increasing tuples."""
    if max_part is None:
        max_part = total

    def rec(rest, largest, parts_left):
        if rest == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for p in range(min(rest, largest), 0, -1):
            for tail in rec(rest - p, p, parts_left - 1):
                yield (p,) + tail

    return list(rec(total, max_part, total if max_parts is None else max_parts))


@lru_cache(maxsize=None)
def _change_of_basis(k, d):
    """Monomial-basis expansion of elementary products in degree ``d``.

    Returns ``(lambdas, mus, inverse)`` where ``inverse`` maps monomial
    coordinates to elementary coordinates.
    """
    variables = sym_variables(k)
    lambdas = [lam + (0,) * (k - len(lam)) for lam in _partitions(d, max_parts=k)]
    mus = _partitions(d, max_part=k)
    es = [elementary(i, variables) for i in range(k + 1)]
    rows = []
    for mu in mus:
        prod = MPoly.one(variables)
        for part in mu:
            prod = prod * es[part]
        rows.append([prod.coefficient(lam) for lam in lambdas])
    # rows[mu][lam]: coefficient of m_lam in e_mu; solve a * rows = phi.
    size = len(mus)
    if size != len(lambdas):
        raise AssertionError("elementary and monomial bases differ in size")
    # invert the transpose by Gauss-Jordan
    mat = [[rows[j][i] for j in range(size)] + [Fraction(int(i == r)) for r in range(size)]
           for i in range(size)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if mat[r][col])
        mat[col], mat[pivot] = mat[pivot], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    inverse = [row[size:] for row in mat]
    return lambdas, mus, inverse


def to_elementary(phi):
    """Express a symmetric polynomial through ``s1..sk`` (the elementary ones)."""
    if isinstance(phi, MPoly):
        phi = SymPoly(phi)
    k = phi.arity
    svars = elem_variables(k)
    result = MPoly.zero(svars)
    for d, part in phi.poly.homogeneous_components().items():
        if d == 0:
            result = result + part.constant_term()
            continue
        lambdas, mus, inverse = _change_of_basis(k, d)
        coords = [part.coefficient(lam) for lam in lambdas]
        for i, mu in enumerate(mus):
            a = sum((inverse[i][j] * coords[j] for j in range(len(coords))), Fraction(0))
            if a:
                exp = [0] * k
                for p in mu:
                    exp[p - 1] += 1
                result = result + MPoly(svars, {tuple(exp): a})
    return result


def from_elementary(poly_in_s, arity):
    """Substitute the elementary symmetric polynomials back for ``s1..sk``."""
    variables = sym_variables(arity)
    es = [elementary(i, variables) for i in range(1, arity + 1)]
    return poly_in_s.compose(es, zero=MPoly.zero(variables))


class HatDecomposition:
    """``phi = sum_i x_{n+1}^(n+1-i) * parts[i](x_1..x_n)``."""

    def __init__(self, n, parts):
        self.n = n
        self.parts = parts

    def __getitem__(self, i):
        return self.parts[i]

    def __len__(self):
        return len(self.parts)

    def reconstruct(self):
        variables = sym_variables(self.n + 1)
        last = MPoly.gen(variables[-1], variables)
        total = MPoly.zero(variables)
        for i, part in enumerate(self.parts):
            total = total + part.poly.extend(variables) * last ** (self.n + 1 - i)
        return total


def hat_decompose(phi):
    """Split a symmetric form of degree ``n+1`` in ``n+1`` variables along the last one."""
    if isinstance(phi, MPoly):
        phi = SymPoly(phi)
    n = phi.arity - 1
    if n < 1:
        raise InputError("need at least two variables")
    if not phi.is_zero() and phi.degree != n + 1:
        raise InputError(f"expected a homogeneous form of degree {n + 1} in {n + 1} variables")
    small = sym_variables(n)
    buckets = [dict() for _ in range(n + 2)]
    for e, c in phi.poly.terms.items():
        buckets[n + 1 - e[-1]][e[:-1]] = c
    parts = [SymPoly(MPoly(small, b), check=False) for b in buckets]
    return HatDecomposition(n, parts)


def odd_part(phi):
    """Odd part of ``phi`` in its last variable, via the hat decomposition."""
    hats = hat_decompose(phi)
    n = hats.n
    variables = sym_variables(n + 1)
    last = MPoly.gen(variables[-1], variables)
    total = MPoly.zero(variables)
    for j in range(n // 2 + 1):
        total = total + last ** (2 * j + 1) * hats[n - 2 * j].poly.extend(variables)
    return total


def eval_from_charpoly(psi, sigmas):
    """Value of ``psi`` at the eigenvalues of a matrix whose ``det(I + tA)``
    has coefficients ``sigmas = (s_1, ..., s_n)``; no roots are taken."""
    if isinstance(psi, MPoly):
        psi = SymPoly(psi)
    sigmas = list(sigmas)
    if len(sigmas) != psi.arity:
        raise InputError(f"arity {psi.arity} does not match {len(sigmas)} charpoly coefficients")
    return psi.elementary_form.evaluate(sigmas)


def eval_on_classes(psi, classes, zero):
    """``psi~(c_1, ..., c_k)`` for ring elements ``classes``."""
    if len(classes) != psi.arity:
        raise InputError("arity mismatch between symmetric polynomial and Chern classes")
    return psi.elementary_form.compose(list(classes), zero=zero)
