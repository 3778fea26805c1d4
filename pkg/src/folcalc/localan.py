"""One-variable operators (affine distortion, Schwarzian), Fuchsian angles,
and formal solvers for the equations ``Zf = F(f, z)`` with ``Z`` linear
diagonal."""

import itertools
import math
from fractions import Fraction

from .algebra import DEFAULT_ORDER, Laurent, MPoly, TSeries, as_scalar
from .errors import Inadmissible, InputError, ResonanceError


# ---------------------------------------------------------------------------
# operators


def _derivatives(f, count):
    out = [f]
    for _ in range(count):
        g = out[-1]
        out.append(g.derivative() if isinstance(g, Laurent) else g.diff(0))
    return out


def _check_univariate(f):
    if isinstance(f, TSeries):
        if f.nvars != 1:
            raise InputError("expected a one-variable series")
        if f.poly.coefficient((1,)) == 0:
            raise InputError("f'(0) = 0: critical point at the origin")
    elif not isinstance(f, Laurent):
        raise InputError("expected a TSeries or a Laurent expansion")


def affine_distortion(f):
    """Coefficient of ``L(f) = (f''/f') dz``."""
    _check_univariate(f)
    _, d1, d2 = _derivatives(f, 2)
    return d2 / d1


def schwarzian(f):
    """``{f, z} = f'''/f' - (3/2)(f''/f')^2``; Laurent input gives Laurent output."""
    _check_univariate(f)
    _, d1, d2, d3 = _derivatives(f, 3)
    ratio = d2 / d1
    return d3 / d1 - ratio * ratio * Fraction(3, 2)


# ---------------------------------------------------------------------------
# angles

LOGARITHMIC = "logarithmic"
POWER = "power"
AMBIGUOUS = "power-or-power-plus-log"


def rational_sqrt(x):
    """Nonnegative rational square root of ``x`` or ``None``."""
    x = as_scalar(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


class FuchsianClass:
    """Angle data of a Fuchsian singular point of a one-dimensional structure."""

    def __init__(self, kind, theta=None, theta_squared=None, taxonomy=None, developing=None):
        self.kind = kind
        self.theta = theta
        self.theta_squared = theta_squared
        self.taxonomy = taxonomy
        self.developing = developing

    @property
    def ramification_index(self):
        if self.theta is None or self.theta == 0:
            return None
        return 1 / self.theta

    def to_json(self):
        return {
            "kind": self.kind,
            "theta": None if self.theta is None else str(self.theta),
            "theta_squared": None if self.theta_squared is None else str(self.theta_squared),
            "taxonomy": self.taxonomy,
            "developing_map": self.developing,
            "ramification_index": None if self.ramification_index is None else str(self.ramification_index),
        }

    def __repr__(self):
        return f"FuchsianClass({self.to_json()})"


def _fuchsian(form, weight):
    if form.weight not in (None, weight):
        raise InputError(f"expected a weight-{weight} expansion")
    if form.pole_order() > weight:
        raise Inadmissible(f"non-Fuchsian: pole of order {form.pole_order()}")


def affine_angle(alpha):
    """Normalized angle ``theta = Res(alpha) + 1`` and the developing-map type."""
    _fuchsian(alpha, 1)
    theta = alpha.coefficient(-1) + 1
    if theta == 0:
        tax, dev = LOGARITHMIC, "log(z)"
    elif theta.denominator == 1 and theta < 0:
        tax, dev = AMBIGUOUS, f"z^{theta} or z^{theta} + log(z)"
    else:
        tax, dev = POWER, f"z^{theta}"
    return theta, FuchsianClass("affine", theta=theta, theta_squared=theta * theta, taxonomy=tax, developing=dev)


def projective_angle(beta):
    """``theta^2 = 1 - 2 Q(beta)``; ``theta`` up to sign when it is rational."""
    _fuchsian(beta, 2)
    t2 = 1 - 2 * beta.coefficient(-2)
    theta = rational_sqrt(t2)
    if t2 == 0:
        tax, dev = LOGARITHMIC, "log(z)"
    elif theta is not None and theta.denominator == 1:
        tax, dev = AMBIGUOUS, f"z^{theta} or z^{-theta} + log(z)"
    else:
        tax = POWER
        dev = f"z^{theta}" if theta is not None else "z^theta with theta^2 = " + str(t2)
    return t2, FuchsianClass("projective", theta=theta, theta_squared=t2, taxonomy=tax, developing=dev)


# ---------------------------------------------------------------------------
# formal solvers


class FormalSolution:
    """A residual-checked formal solution plus the resonances met on the way.

    ``free`` lists multi-indices whose denominator vanished while the
    right-hand side vanished too; those coefficients were set to zero.
    """

    def __init__(self, series, free=(), residual_order=None):
        self.series = series
        self.free = list(free)
        self.residual_order = residual_order


def _as_series(F, order):
    if isinstance(F, MPoly):
        return TSeries(F, order)
    return F


def _pair(lam, K):
    return sum((a * k for a, k in zip(lam, K)), Fraction(0))


def _solve(lam, F, order, strict=False):
    lam = [as_scalar(x) for x in lam]
    n = len(lam)
    F = _as_series(F, order)
    if F.nvars != n + 1:
        raise InputError(f"F must depend on the unknown and {n} chart variables")
    if F.constant_term() != 0:
        raise InputError("F(0, 0) must vanish")
    order = min(order, F.order)
    F = F.with_order(order)
    zvars = F.variables[1:]
    e_f = (1,) + (0,) * n
    mu = F.coefficient(e_f)
    zs = [TSeries.gen(v, zvars, order) for v in zvars]
    poly_f = F.poly
    coeffs = {}
    free = []
    for m in range(1, order + 1):
        f_low = TSeries(MPoly(zvars, coeffs), order)
        rhs = poly_f.compose([f_low] + zs, zero=TSeries(MPoly.zero(zvars), order)) - f_low * mu
        for K in _multi_indices(n, m):
            target = rhs.coefficient(K)
            denom = _pair(lam, K) - mu
            if denom == 0:
                if target != 0 or strict:
                    raise ResonanceError(f"resonant at K={K}: <K,lambda> = mu = {mu}", K)
                free.append(K)
                continue
            if target:
                coeffs[K] = target / denom
    f = TSeries(MPoly(zvars, coeffs), order)
    diag = [MPoly.gen(v, zvars) * l for v, l in zip(zvars, lam)]
    residual = f.derive(diag) - poly_f.compose([f] + zs, zero=TSeries(MPoly.zero(zvars), order))
    if not residual.is_zero_to_order(order):
        raise AssertionError(f"defect: nonzero residual {residual}")
    return FormalSolution(f, free, order)


def _multi_indices(n, total):
    for cut in itertools.combinations(range(total + n - 1), n - 1):
        parts, prev = [], -1
        for c in cut:
            parts.append(c - prev - 1)
            prev = c
        parts.append(total + n - 2 - prev)
        yield tuple(parts)


def briot_bouquet_solve(lam, F, order=DEFAULT_ORDER, strict=False):
    """Formal solution ``f(0) = 0`` of ``Zf = F(f, z)`` with ``Z = sum lam_i z_i d/dz_i``.

    ``F`` lives over ``(f, z_1, ..., z_n)`` with the unknown first.  Every
    denominator ``<K, lam> - mu`` used by the recursion is checked, including
    ``|K| = 1``.  A vanishing denominator raises :class:`ResonanceError`
    unless the matching right-hand side vanishes too (and ``strict`` is
    off), in which case that coefficient is taken to be zero.
    """
    return _solve(lam, F, order, strict).series


def _unknown_vars(variables, name="h"):
    while name in variables:
        name += "h"
    return (name,) + tuple(variables)


def _lift(series, variables):
    return TSeries(series.poly.extend(variables), series.order)


def normalize_affine(lam, gamma, order=DEFAULT_ORDER, details=False):
    """``f`` with ``f(0) = 1`` such that ``fZ`` has constant symbol ``gamma(0)``.

    Solves ``Zf = gamma(0) - f gamma`` through ``h = f - 1``.
    """
    gamma = _as_series(gamma, order)
    g0 = gamma.constant_term()
    if g0 == 0:
        raise Inadmissible("gamma(0) = 0: the normal form needs a non-vanishing symbol")
    order = min(order, gamma.order)
    gamma = gamma.with_order(order)
    allv = _unknown_vars(gamma.variables)
    h = TSeries.gen(allv[0], allv, order)
    G = _lift(gamma, allv)
    F = (G * -1 + g0) - G * h
    sol = _solve(lam, F, order)
    f = sol.series + 1
    _check_normalized(lam, gamma, f, g0)
    return (f, sol) if details else f


def _check_normalized(lam, gamma, f, g0):
    zvars = gamma.variables
    diag = [MPoly.gen(v, zvars) * as_scalar(l) for v, l in zip(zvars, lam)]
    post = f.derive(diag) + f * gamma
    if not post.agrees_with(TSeries.const(g0, zvars, post.order)):
        raise AssertionError("defect: normalized symbol is not constant")


def normalize_projective(lam, rho, branch, order=DEFAULT_ORDER, details=False):
    """Affine symbol ``gamma`` with ``Z gamma = gamma^2/2 + rho`` and ``gamma(0) = branch``.

    ``branch`` must be a rational root of ``gamma0^2 = -2 rho(0)``.
    """
    rho = _as_series(rho, order)
    r0 = rho.constant_term()
    if r0 == 0:
        raise Inadmissible("rho(0) = 0: the normal form needs a non-vanishing symbol")
    if branch is None:
        raise InputError("a branch gamma0 with gamma0^2 = -2 rho(0) must be given")
    g0 = as_scalar(branch)
    if g0 * g0 != -2 * r0:
        if rational_sqrt(-2 * r0) is None:
            raise Inadmissible(f"irrational branch: -2 rho(0) = {-2 * r0} is not a rational square")
        raise InputError(f"branch {g0} does not square to -2 rho(0) = {-2 * r0}")
    order = min(order, rho.order)
    rho = rho.with_order(order)
    allv = _unknown_vars(rho.variables)
    h = TSeries.gen(allv[0], allv, order)
    R = _lift(rho, allv)
    F = (R - r0) + h * g0 + h * h * Fraction(1, 2)
    sol = _solve(lam, F, order)
    gamma = sol.series + g0
    zvars = rho.variables
    diag = [MPoly.gen(v, zvars) * as_scalar(l) for v, l in zip(zvars, lam)]
    back = gamma * gamma * Fraction(-1, 2) + gamma.derive(diag)
    if not back.agrees_with(rho, min(back.order, rho.order)):
        raise AssertionError("defect: associated projective symbol differs from rho")
    return (gamma, sol) if details else gamma


def riccati_projective_to_affine(S, theta, order=DEFAULT_ORDER, details=False):
    """Solve ``z u' = z^2 S + u + u^2/2`` with ``u(0) = theta - 1``.

    ``S`` is a weight-2 expansion with a pole of order at most two and
    ``Q(S) = (1 - theta^2)/2``.  The affine symbol is ``u/z``.  The
    recursion denominators are ``k - theta``; a positive integer ``theta``
    is resonant and raises unless the resonant equation is trivially
    compatible.
    """
    theta = as_scalar(theta)
    if S.weight not in (None, 2):
        raise InputError("S must be a quadratic differential (weight 2)")
    if S.pole_order() > 2:
        raise Inadmissible(f"non-Fuchsian: pole of order {S.pole_order()}")
    q = S.coefficient(-2)
    if q != (1 - theta * theta) / 2:
        raise InputError(f"Q(S) = {q} but (1 - theta^2)/2 = {(1 - theta * theta) / 2}")
    order = min(order, S.order + 2)
    zv = (S.var,)
    T = TSeries(MPoly(zv, {(k + 2,): c for k, c in S.coeffs.items() if k + 2 <= order}), order)
    allv = _unknown_vars(zv, "v")
    v = TSeries.gen(allv[0], allv, order)
    F = (_lift(T, allv) - q) + v * theta + v * v * Fraction(1, 2)
    try:
        sol = _solve([1], F, order)
    except ResonanceError as exc:
        raise ResonanceError(f"resonant: theta = {theta} is a positive integer ({exc})", exc.multi_index) from None
    u = sol.series + (theta - 1)
    z = TSeries.gen(S.var, zv, order)
    residual = u.diff(0) * z - T - u - u * u * Fraction(1, 2)
    if not residual.is_zero_to_order(residual.order):
        raise AssertionError("defect: Riccati residual does not vanish")
    return (u, sol) if details else u


def affine_symbol_from_riccati(u):
    """The affine symbol ``u/z`` as a weight-1 expansion."""
    return Laurent.from_series(u, shift=-1, weight=1)


# ---------------------------------------------------------------------------
# small divisors


class BrjunoDiagnostic:
    VERDICT = "inconclusive by construction"

    def __init__(self, lam, mu, table, witnesses, partial_sums, resonant_from):
        self.lam = lam
        self.mu = mu
        self.table = table
        self.witnesses = witnesses
        self.partial_sums = partial_sums
        self.resonant_from = resonant_from

    @property
    def negated_sums(self):
        return [-s for s in self.partial_sums]

    def to_json(self):
        return {
            "lambda": [str(x) for x in self.lam],
            "mu": str(self.mu),
            "omega_prime": {str(m): str(v) for m, v in self.table.items()},
            "attained_at": {str(m): list(k) for m, k in self.witnesses.items()},
            "partial_sums_float": self.partial_sums,
            "negated_partial_sums_float": self.negated_sums,
            "resonant_from": self.resonant_from,
            "verdict": self.VERDICT,
        }


def brjuno_diagnostic(lam, mu, m_max):
    """Exact table of ``omega'(m) = min_{2 <= |K| <= m} |<K, lam> - mu|`` and
    floating partial sums of ``2^-nu log omega'(2^(nu+1))``."""
    lam = [as_scalar(x) for x in lam]
    mu = as_scalar(mu)
    m_max = int(m_max)
    if m_max < 4:
        raise InputError("m_max must be at least 4")
    table, witnesses = {}, {}
    best, best_k = None, None
    resonant_from = None
    for m in range(2, m_max + 1):
        for K in _multi_indices(len(lam), m):
            val = abs(_pair(lam, K) - mu)
            if best is None or val < best:
                best, best_k = val, K
        table[m] = best
        witnesses[m] = best_k
        if best == 0 and resonant_from is None:
            resonant_from = m
    sums = []
    total = 0.0
    nu = 0
    while 2 ** (nu + 1) <= m_max:
        w = table[2 ** (nu + 1)]
        if w == 0:
            total = -math.inf
        else:
            total += 2.0 ** (-nu) * math.log(float(w))
        sums.append(total)
        nu += 1
    return BrjunoDiagnostic(lam, mu, table, witnesses, sums, resonant_from)
