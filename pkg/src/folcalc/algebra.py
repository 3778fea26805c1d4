"""Exact arithmetic kernel.

Scalars are :class:`fractions.Fraction`.  On top of them this module provides
sparse multivariate polynomials (:class:`MPoly`), power series truncated by
total degree (:class:`TSeries`), univariate Laurent expansions with a finite
principal part (:class:`Laurent`) and quotients of polynomials
(:class:`RatFunc`).  Every value is immutable once built.

Truncated series carry their order explicitly: a ``TSeries`` of order ``N``
is known exactly in every monomial of total degree ``<= N`` and nothing is
claimed beyond.  Products and derivatives compute the order they actually
know instead of inheriting the inputs' order.
"""

import math
from fractions import Fraction

from .errors import InputError, VariableMismatch

DEFAULT_ORDER = 12


def as_scalar(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(value):
    return str(as_scalar(value))


def _grlex_key(exp):
    return (sum(exp), exp)


def _is_scalar(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class MPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    ``Fraction`` coefficients.  Two polynomials are equal when they share
    the variable tuple and the term map.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        n = len(variables)
        clean = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise InputError(f"exponent {exp} does not match {n} variables")
            if any(e < 0 for e in exp):
                raise InputError(f"negative exponent {exp}")
            clean[exp] = clean.get(exp, 0) + as_scalar(coeff)
        self.variables = variables
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, value, variables):
        variables = tuple(variables)
        value = as_scalar(value)
        return cls._raw(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def one(cls, variables):
        return cls.const(1, variables)

    @classmethod
    def gen(cls, name, variables):
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def gens(cls, variables):
        return [cls.gen(v, variables) for v in variables]

    @classmethod
    def monomial(cls, exp, variables, coeff=1):
        return cls(variables, {tuple(exp): coeff})

    # inspection -------------------------------------------------------
    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def valuation(self):
        """Lowest total degree present; ``math.inf`` for zero."""
        return min((sum(e) for e in self.terms), default=math.inf)

    def sorted_terms(self):
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def homogeneous_components(self):
        parts = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MPoly._raw(self.variables, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    # coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return MPoly.const(other, self.variables)
        return None

    def extend(self, variables):
        """Re-express over ``variables``, which must contain every variable used."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    if v not in index:
                        raise VariableMismatch(f"variable {v!r} missing from {variables}")
                    new[index[v]] = k
            terms[tuple(new)] = c
        return MPoly._raw(variables, terms)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (TSeries, RatFunc)):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (TSeries, RatFunc)):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            other = as_scalar(other)
            if not other:
                return MPoly.zero(self.variables)
            return MPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        if isinstance(other, (TSeries, RatFunc)):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            other = as_scalar(other)
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("polynomial powers take nonnegative integer exponents")
        result = MPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.variables == other.variables and self.terms == other.terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus ---------------------------------------------------------
    def diff(self, var):
        i = var if isinstance(var, int) else self.variables.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                new = list(e)
                new[i] -= 1
                terms[tuple(new)] = c * e[i]
        return MPoly._raw(self.variables, terms)

    def derive(self, field):
        """Directional derivative ``sum_i field[i] * d(self)/dx_i``."""
        return directional_derivative(self, field)

    def truncate(self, order):
        return MPoly._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) <= order})

    # evaluation -------------------------------------------------------
    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        point = [as_scalar(p) for p in point]
        if len(point) != self.nvars:
            raise InputError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for p, k in zip(point, e):
                if k:
                    term *= p ** k
            total += term
        return total

    def compose(self, values, zero=None):
        """Substitute ``values[i]`` for the i-th variable.

        Values may be scalars or any ring-like objects supporting ``+``,
        ``*`` and scalar multiplication (polynomials, series, ring elements).
        """
        values = list(values)
        if len(values) != self.nvars:
            raise InputError(f"expected {self.nvars} values, got {len(values)}")
        powers = [{0: None} for _ in values]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                best = max(j for j in cache if j < k)
                acc = values[i] if best == 0 else cache[best]
                for _ in range(k - max(best, 1)):
                    acc = acc * values[i]
                cache[k] = acc
            return cache[k]

        total = zero
        for e, c in self.sorted_terms():
            term = None
            for i, k in enumerate(e):
                if k:
                    f = power(i, k)
                    term = f if term is None else term * f
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def substitute(self, mapping, variables=None):
        """Substitute polynomials for some variables by name.

        Unmapped variables are kept; the result lives over ``variables``
        (default: the current variables).
        """
        variables = tuple(variables) if variables is not None else self.variables
        values = []
        for v in self.variables:
            if v in mapping:
                val = mapping[v]
                if isinstance(val, MPoly):
                    val = val.extend(variables)
                elif _is_scalar(val) or isinstance(val, str):
                    val = MPoly.const(val, variables)
                values.append(val)
            else:
                values.append(MPoly.gen(v, variables))
        return self.compose(values, zero=MPoly.zero(variables))

    def shift(self, point):
        """The polynomial ``p(x + point)``."""
        values = [MPoly.gen(v, self.variables) + as_scalar(c)
                  for v, c in zip(self.variables, point)]
        return self.compose(values, zero=MPoly.zero(self.variables))

    # division ---------------------------------------------------------
    def divides(self, other):
        try:
            other.exact_divide(self)
        except InputError:
            return False
        return True

    def exact_divide(self, divisor):
        """Quotient of an exact division; raises ``InputError`` otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading_term()
        quotient = {}
        rem = self
        while rem.terms:
            e, c = rem.leading_term()
            if any(a < b for a, b in zip(e, lead_e)):
                raise InputError("polynomial division is not exact")
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = c / lead_c
            quotient[qe] = qc
            rem = rem - MPoly._raw(self.variables, {qe: qc}) * divisor
        return MPoly._raw(self.variables, quotient)

    # printing ---------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self.variables!r}, {format_poly(self)!r})"


def format_monomial(exp, variables):
    parts = []
    for v, k in zip(variables, exp):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(poly):
    """Canonical text form, parseable by :func:`folcalc.expr.parse_expression`."""
    if not poly.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(poly.sorted_terms()):
        mono = format_monomial(e, poly.variables)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def directional_derivative(f, field):
    """``sum_i field[i] * df/dx_i`` for polynomial, series or rational ``f``."""
    if isinstance(f, (TSeries, RatFunc)):
        return f.derive(field)
    field = list(field)
    if len(field) != f.nvars:
        raise VariableMismatch("vector field and function have different dimensions")
    total = MPoly.zero(f.variables)
    for i, comp in enumerate(field):
        d = f.diff(i)
        if d:
            total = comp * d + total
    return total


# ---------------------------------------------------------------------------
# truncated series


def _order_of(x):
    return x.order if isinstance(x, TSeries) else math.inf


def _val(x):
    if isinstance(x, TSeries):
        return min(x.poly.valuation(), x.order + 1)
    return x.valuation()


class TSeries:
    """Power series known exactly through total degree ``order``."""

    __slots__ = ("poly", "order")

    def __init__(self, poly, order):
        if not isinstance(poly, MPoly):
            raise TypeError("TSeries wraps an MPoly")
        order = int(order)
        if order < -1:
            raise InputError("series order must be >= -1")
        self.poly = poly.truncate(order)
        self.order = order

    @classmethod
    def from_terms(cls, variables, terms, order):
        return cls(MPoly(variables, terms), order)

    @classmethod
    def const(cls, value, variables, order=DEFAULT_ORDER):
        return cls(MPoly.const(value, variables), order)

    @classmethod
    def gen(cls, name, variables, order=DEFAULT_ORDER):
        return cls(MPoly.gen(name, variables), order)

    @property
    def variables(self):
        return self.poly.variables

    @property
    def nvars(self):
        return self.poly.nvars

    def constant_term(self):
        return self.poly.constant_term()

    def coefficient(self, exp):
        return self.poly.coefficient(exp)

    def valuation(self):
        return _val(self)

    def with_order(self, order):
        if order > self.order:
            raise InputError(f"cannot raise series order from {self.order} to {order}")
        return TSeries(self.poly, order)

    def _coerce(self, other):
        if isinstance(other, TSeries):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return MPoly.const(other, self.variables)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, _order_of(other))
        return TSeries(self.poly + (other.poly if isinstance(other, TSeries) else other), order)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(-self.poly, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return TSeries(self.poly * other, self.order)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if isinstance(other, TSeries):
            order = min(self.order + _val(other), other.order + _val(self))
            if order == math.inf:
                order = self.order
            a, b = self.poly, other.poly
        else:
            v = other.valuation()
            order = self.order + v if v != math.inf else self.order
            a, b = self.poly, other
        order = int(order)
        return TSeries(_mul_truncated(a, b, order), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return TSeries(self.poly / other, self.order)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not isinstance(other, TSeries):
            other = TSeries(other, self.order)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("series powers take nonnegative integer exponents")
        result = TSeries(MPoly.one(self.variables), self.order)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, TSeries):
            return self.order == other.order and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.order))

    def agrees_with(self, other, order=None):
        """Equality of coefficients through ``order`` (default: the common order)."""
        if isinstance(other, TSeries):
            common = min(self.order, other.order)
            other_poly = other.poly
        else:
            other = self._coerce(other)
            common = self.order
            other_poly = other
        if order is None:
            order = common
        if order > common:
            return False
        return self.poly.truncate(order) == other_poly.truncate(order)

    def is_zero_to_order(self, order=None):
        order = self.order if order is None else order
        return order <= self.order and self.poly.truncate(order).is_zero()

    def is_zero(self):
        return self.poly.is_zero()

    def diff(self, var):
        return TSeries(self.poly.diff(var), self.order - 1)

    def derive(self, field):
        """Directional derivative along ``field``.

        Differentiating loses one degree of knowledge, which the field's
        valuation can give back: along ``z d/dz`` the order is kept, along
        ``d/dz`` it drops by one.
        """
        field = list(field)
        if len(field) != self.nvars:
            raise VariableMismatch("vector field and series have different dimensions")
        total = None
        for i, comp in enumerate(field):
            if isinstance(comp, MPoly) and comp.is_zero():
                continue
            term = self.diff(i) * comp
            total = term if total is None else total + term
        if total is None:
            return TSeries(MPoly.zero(self.variables), self.order)
        return total

    def evaluate_at_origin(self):
        return self.constant_term()

    def compose(self, inner):
        """``self(inner)`` for a one-variable ``self`` and ``inner(0) == 0``."""
        if self.nvars != 1:
            raise InputError("composition needs a one-variable outer series")
        if not isinstance(inner, TSeries):
            raise TypeError("inner argument must be a TSeries")
        if inner.constant_term() != 0:
            raise InputError("inner series must have zero constant term")
        v = _val(inner)
        order = min(inner.order, int(min(v * (self.order + 1) - 1, 10 ** 9)))
        inner = TSeries(inner.poly, order)
        result = TSeries(MPoly.zero(inner.variables), order)
        for k in range(self.poly.degree(), -1, -1):
            c = self.poly.coefficient((k,))
            result = result * inner + c
        return TSeries(result.poly, order)

    def reciprocal(self):
        c0 = self.constant_term()
        if not c0:
            raise InputError("reciprocal of a series with zero constant term")
        h = TSeries(self.poly - c0, self.order) * (1 / c0)
        result = TSeries(MPoly.one(self.variables), self.order)
        power = result
        for _ in range(self.order):
            power = power * (-h)
            if power.poly.is_zero():
                break
            result = result + power
        return result * (1 / c0)

    def __str__(self):
        return f"{format_poly(self.poly)} + O({self.order + 1})"

    def __repr__(self):
        return f"TSeries({format_poly(self.poly)!r}, order={self.order})"


def _mul_truncated(a, b, order):
    terms = {}
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        if d1 > order:
            continue
        for e2, c2 in b.terms.items():
            if d1 + sum(e2) > order:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return MPoly._raw(a.variables, {e: c for e, c in terms.items() if c})


def series_reciprocal(f):
    return f.reciprocal()


def series_compose(f, g):
    return f.compose(g)


def series_directional_derive(f, field):
    return f.derive(field)


# ---------------------------------------------------------------------------
# Laurent expansions


class Laurent:
    """Univariate Laurent expansion known through exponent ``order``.

    ``weight`` marks what the coefficient stands for: 1 for a one-form
    ``a(z) dz``, 2 for a quadratic differential ``b(z) dz^2``, ``None`` for a
    plain function.
    """

    __slots__ = ("var", "coeffs", "order", "weight")

    def __init__(self, coeffs, order, var="z", weight=None):
        order = order if order == math.inf else int(order)
        clean = {}
        for k, c in dict(coeffs).items():
            k = int(k)
            c = as_scalar(c)
            if c and k <= order:
                clean[k] = c
        if weight not in (None, 1, 2):
            raise InputError("Laurent weight must be 1, 2 or None")
        self.var = var
        self.coeffs = clean
        self.order = order
        self.weight = weight

    @classmethod
    def from_series(cls, series, shift=0, weight=None):
        """``z^shift * series`` for a one-variable series."""
        if series.nvars != 1:
            raise InputError("Laurent expansions are univariate")
        coeffs = {e[0] + shift: c for e, c in series.poly.terms.items()}
        return cls(coeffs, series.order + shift, series.variables[0], weight)

    def with_weight(self, weight):
        return Laurent(self.coeffs, self.order, self.var, weight)

    def coefficient(self, k):
        return self.coeffs.get(k, Fraction(0))

    def valuation(self):
        return min(self.coeffs, default=self.order + 1)

    def pole_order(self):
        return max(0, -self.valuation())

    def is_holomorphic(self):
        return all(k >= 0 for k in self.coeffs)

    def principal_part(self):
        return Laurent({k: c for k, c in self.coeffs.items() if k < 0}, self.order, self.var, self.weight)

    def to_series(self):
        if not self.is_holomorphic():
            raise InputError("expansion has a pole")
        return TSeries(MPoly((self.var,), {(k,): c for k, c in self.coeffs.items()}), self.order)

    def residue(self):
        if self.weight != 1:
            raise InputError("residue is defined for weight-1 expansions")
        return self.coefficient(-1)

    def quadratic_residue(self):
        if self.weight != 2:
            raise InputError("quadratic residue is defined for weight-2 expansions")
        return self.coefficient(-2)

    def _check(self, other):
        if isinstance(other, Laurent):
            if other.var != self.var:
                raise VariableMismatch("Laurent variables differ")
            return other
        if _is_scalar(other):
            return Laurent({0: other}, math.inf, self.var)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + c
        order = min(self.order, other.order)
        return Laurent(coeffs, order, self.var, self.weight)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self.coeffs.items()}, self.order, self.var, self.weight)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            other = as_scalar(other)
            return Laurent({k: c * other for k, c in self.coeffs.items()}, self.order, self.var, self.weight)
        other = self._check(other)
        if other is None:
            return NotImplemented
        order = min(self.order + other.valuation(), other.order + self.valuation())
        coeffs = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                if k1 + k2 <= order:
                    coeffs[k1 + k2] = coeffs.get(k1 + k2, 0) + c1 * c2
        return Laurent(coeffs, order, self.var, self.weight or other.weight)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``z^k``."""
        return Laurent({e + k: c for e, c in self.coeffs.items()}, self.order + k, self.var, self.weight)

    def reciprocal(self):
        v = self.valuation()
        if v > self.order:
            raise ZeroDivisionError("reciprocal of a Laurent expansion known to be zero")
        lead = self.coeffs[v]
        unit_order = self.order - v
        unit = {k - v: c / lead for k, c in self.coeffs.items()}
        inv = {0: Fraction(1)}
        for m in range(1, unit_order + 1):
            s = Fraction(0)
            for j in range(1, m + 1):
                if j in unit and (m - j) in inv:
                    s += unit[j] * inv[m - j]
            if s:
                inv[m] = -s
        return Laurent({k - v: c / lead for k, c in inv.items()}, unit_order - v, self.var)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / as_scalar(other))
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def derivative(self):
        return Laurent({k - 1: c * k for k, c in self.coeffs.items() if k}, self.order - 1, self.var)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return (self.var, self.coeffs, self.order, self.weight) == (
                other.var, other.coeffs, other.order, other.weight)
        return NotImplemented

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items()), self.order, self.weight))

    def agrees_with(self, other, order=None):
        common = min(self.order, other.order)
        order = common if order is None else order
        if order > common:
            return False
        keys = {k for k in self.coeffs if k <= order} | {k for k in other.coeffs if k <= order}
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __str__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = ""
            for k in sorted(self.coeffs):
                c = self.coeffs[k]
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                mag = abs(c)
                piece = (f"{mag}*{mono}" if mag != 1 else mono) if mono else str(mag)
                if not body:
                    body = ("-" if c < 0 else "") + piece
                else:
                    body += (" - " if c < 0 else " + ") + piece
        suffix = {None: "", 1: " dz", 2: " dz^2"}[self.weight]
        return f"({body} + O({self.var}^{self.order + 1})){suffix}"

    __repr__ = __str__


def residue(alpha):
    return alpha.residue()


def quadratic_residue(beta):
    return beta.quadratic_residue()


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient ``num / den`` of polynomials over the same variables.

    No gcd is taken; equality is decided by cross-multiplication, which is
    all the gluing checks need.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = MPoly.one(num.variables)
        if num.variables != den.variables:
            raise VariableMismatch("numerator and denominator variables differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            num, den = num / den.constant_term(), MPoly.one(num.variables)
        self.num = num
        self.den = den

    @property
    def variables(self):
        return self.num.variables

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.variables != self.variables:
                raise VariableMismatch("variable sets differ")
            return other
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise VariableMismatch("variable sets differ")
            return RatFunc(other)
        if _is_scalar(other):
            return RatFunc(MPoly.const(other, self.variables))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise InputError("integer exponents only")
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable (no canonical form)")

    def is_zero(self):
        return self.num.is_zero()

    def derive(self, field):
        field = [f.num if isinstance(f, RatFunc) and f.den.is_constant() else f for f in field]
        if all(isinstance(f, MPoly) for f in field):
            dn = directional_derivative(self.num, field)
            dd = directional_derivative(self.den, field)
            return RatFunc(dn * self.den - self.num * dd, self.den * self.den)
        total = RatFunc(MPoly.zero(self.variables))
        for i, comp in enumerate(field):
            dn, dd = self.num.diff(i), self.den.diff(i)
            total = total + comp * RatFunc(dn * self.den - self.num * dd, self.den * self.den)
        return total

    def compose(self, values):
        """Substitute rational functions (over a common variable set) for the variables."""
        values = [_as_ratfunc(v) for v in values]
        if not values:
            raise InputError("nothing to substitute")
        zero = RatFunc(MPoly.zero(values[0].variables))
        return _as_ratfunc(self.num.compose(values, zero=zero) + zero) / _as_ratfunc(self.den.compose(values, zero=zero) + zero)

    def to_poly(self):
        return self.num.exact_divide(self.den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("rational function has a pole at the point")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    __repr__ = __str__


def _as_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MPoly):
        return RatFunc(value)
    raise TypeError(f"cannot treat {value!r} as a rational function")


def poly_arith(a, b, op):
    """``a op b`` for ``op`` in ``+``, ``-``, ``*`` (``−`` and ``×`` accepted too)."""
    if not isinstance(a, MPoly) or not isinstance(b, MPoly):
        raise TypeError("poly_arith takes two polynomials")
    if a.variables != b.variables:
        raise VariableMismatch(f"variable sets differ: {a.variables} vs {b.variables}")
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    raise InputError(f"unknown operator {op!r}")
