"""Per-singularity contributions and global checks of the affine and
projective index theorems, Baum-Bott sums and the non-degenerate Lehmann
residue.  All comparisons are exact."""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from .chern import CONVENTION, rhs_affine, rhs_baum_bott, rhs_projective
from .errors import DegenerateError, Inadmissible, InputError
from .foliation import AFFINE, PROJECTIVE
from .symfun import SymPoly, eval_from_charpoly, hat_decompose

MATCH = "match"
MISMATCH = "mismatch"
NOT_APPLICABLE = "not-applicable"

VANISHING_SYMBOL_NOTE = ("points with vanishing symbol would contribute a Baum-Bott index of the "
                         "top split component of phi; that extension is not implemented and such "
                         "points make the report not applicable")


def _pt(rec):
    return [str(x) for x in rec.point]


def _require_nondegenerate(rec):
    if not rec.nondegenerate:
        raise DegenerateError(f"degenerate Jacobian at {_pt(rec)}")


def _require_symbol(rec, kind):
    _require_nondegenerate(rec)
    if rec.symbol_kind != kind:
        raise InputError(f"record at {_pt(rec)} carries a {rec.symbol_kind} symbol, expected {kind}")
    if not rec.symbol_value:
        raise Inadmissible(f"vanishing {kind} symbol at {_pt(rec)}")


def _sym(phi, arity):
    if isinstance(phi, SymPoly):
        return phi
    if isinstance(phi, str):
        return SymPoly.from_expression(phi, arity)
    return SymPoly(phi)


def affine_contribution(rec):
    """``(-gamma(p))^n / det A_p``."""
    _require_symbol(rec, AFFINE)
    return (-rec.symbol_value) ** rec.dim / rec.det


def projective_contribution(rec, phi):
    """``sum_j (-2 rho(p))^j phihat_{n-2j}(lambda) / det A_p``, root free."""
    _require_symbol(rec, PROJECTIVE)
    n = rec.dim
    phi = _sym(phi, n + 1)
    if phi.arity != n + 1:
        raise InputError(f"phi must have {n + 1} variables")
    if phi.is_zero():
        return Fraction(0)
    hats = hat_decompose(phi)
    s2 = -2 * rec.symbol_value
    total = Fraction(0)
    for j in range(n // 2 + 1):
        part = hats[n - 2 * j]
        if not part.is_zero():
            total += s2 ** j * eval_from_charpoly(part, rec.sigmas)
    return total / rec.det


def baum_bott_contribution(rec, phi):
    """``phi(A_p) / det A_p`` through the characteristic polynomial."""
    _require_nondegenerate(rec)
    n = rec.dim
    phi = _sym(phi, n)
    if phi.arity != n or (not phi.is_zero() and phi.degree != n):
        raise InputError(f"phi must be homogeneous of degree {n} in {n} variables")
    return eval_from_charpoly(phi, rec.sigmas) / rec.det


def lehmann_residue(b0, rec):
    """``b0^n / (lambda_1 ... lambda_n)``."""
    _require_nondegenerate(rec)
    return Fraction(b0) ** rec.dim / rec.det


class IndexReport:
    def __init__(self, theorem, contributions, lhs, rhs, verdict, offending=None, notes=()):
        self.theorem = theorem
        self.contributions = contributions
        self.lhs = lhs
        self.rhs = rhs
        self.verdict = verdict
        self.offending = offending
        self.notes = list(notes)
        self.convention = CONVENTION

    @property
    def exit_code(self):
        return {MATCH: 0, MISMATCH: 1, NOT_APPLICABLE: 3}[self.verdict]

    def to_json(self):
        return {
            "theorem": self.theorem,
            "contributions": self.contributions,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "verdict": self.verdict,
            "offending": self.offending,
            "notes": self.notes,
            "convention": self.convention,
        }

    def __repr__(self):
        return f"IndexReport({self.theorem}: {self.lhs} vs {self.rhs}, {self.verdict})"


def _evaluate(func, rec):
    try:
        return func(rec), None
    except (Inadmissible, InputError) as exc:
        if isinstance(exc, InputError) and not isinstance(exc, DegenerateError):
            raise
        return None, str(exc)


def _collect(theorem, func, records, rhs, jobs=1, notes=()):
    records = sorted(records, key=lambda r: (r.chart, r.point))
    if jobs and jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(partial(_evaluate, func), records))
    else:
        results = [_evaluate(func, r) for r in records]
    contributions = []
    offending = None
    lhs = Fraction(0)
    for rec, (value, reason) in zip(records, results):
        contributions.append({
            "chart": rec.chart,
            "point": _pt(rec),
            "contribution": None if value is None else str(value),
            "admissible": value is not None,
            "reason": reason,
        })
        if value is None:
            offending = offending or {"chart": rec.chart, "point": _pt(rec), "reason": reason}
        else:
            lhs += value
    if offending is not None:
        return IndexReport(theorem, contributions, lhs, rhs, NOT_APPLICABLE, offending, notes)
    return IndexReport(theorem, contributions, lhs, rhs, MATCH if lhs == rhs else MISMATCH, None, notes)


def verify_affine_index(ring, c1TF, records, jobs=1):
    """``sum (-gamma)^n / det A`` against ``int c_1(T_F)^n``."""
    return _collect("affine index", affine_contribution, records, rhs_affine(ring, c1TF), jobs,
                    [VANISHING_SYMBOL_NOTE])


def verify_projective_index(ring, c1TF, cTM, records, phi, jobs=1):
    n = ring.dimension
    phi = _sym(phi, n + 1)
    rhs = rhs_projective(ring, c1TF, cTM, phi)
    return _collect("projective index", partial(projective_contribution, phi=phi), records, rhs, jobs,
                    [VANISHING_SYMBOL_NOTE])


def verify_baum_bott(ring, c1TF, cTM, records, phi, jobs=1):
    n = ring.dimension
    phi = _sym(phi, n)
    rhs = rhs_baum_bott(ring, c1TF, cTM, phi)
    return _collect("Baum-Bott", partial(baum_bott_contribution, phi=phi), records, rhs, jobs)
