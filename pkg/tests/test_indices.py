from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonzero_rationals
from folcalc.chern import curve, projective_space, tangent_class
from folcalc.errors import InputError
from folcalc.foliation import AFFINE, PROJECTIVE, ChartField, SingularPointRecord, homogeneous_records
from folcalc.indices import (MATCH, MISMATCH, NOT_APPLICABLE, affine_contribution, baum_bott_contribution,
                             lehmann_residue, projective_contribution, verify_affine_index, verify_baum_bott,
                             verify_projective_index)
from folcalc.symfun import SymPoly, odd_part

rec = SingularPointRecord.from_eigenvalues
P2_FIELD = ChartField.parse(["x^2", "y^2", "z^2"], ("x", "y", "z"))
P2_POINTS = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 0, 0), (0, 1, 0), (1, 1, 0)]


def test_affine_contribution_examples():
    assert affine_contribution(rec([1], AFFINE, 1)) == -1
    assert affine_contribution(rec([1, 2], AFFINE, 3)) == Fraction(9, 2)


def test_projective_contribution_examples():
    assert projective_contribution(rec([1, 2], PROJECTIVE, Fraction(-1, 2)), SymPoly.power_sum(3, 3)) == Fraction(1, 2)
    assert projective_contribution(rec([3], PROJECTIVE, 5), SymPoly.power_sum(2, 2)) == 0
    assert projective_contribution(rec([1, 2], PROJECTIVE, 1), SymPoly.power_sum(3, 3).poly * 0) == 0


def test_baum_bott_contribution_examples():
    r = rec([1, 2])
    assert baum_bott_contribution(r, SymPoly.sigma(2, 2)) == 1
    assert baum_bott_contribution(r, SymPoly.power_sum(2, 2)) == Fraction(5, 2)
    with pytest.raises(InputError):
        baum_bott_contribution(r, SymPoly.sigma(1, 2))


def test_lehmann_examples():
    assert lehmann_residue(0, rec([1, 5])) == 0
    assert lehmann_residue(2, rec([4])) == Fraction(1, 2)


def test_wrong_symbol_kind():
    with pytest.raises(InputError):
        affine_contribution(rec([1], PROJECTIVE, 1))


eigs = st.lists(nonzero_rationals, min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(eigs, nonzero_rationals, nonzero_rationals)
def test_scale_covariance(lam, g0, c):
    n = len(lam)
    a = rec(lam, AFFINE, g0)
    assert affine_contribution(a.scaled(c)) == affine_contribution(a)
    p = rec(lam, PROJECTIVE, g0)
    phi = SymPoly.power_sum(n + 1, n + 1)
    assert projective_contribution(p.scaled(c), phi) == projective_contribution(p, phi)
    assert baum_bott_contribution(p.scaled(c), SymPoly.sigma(n, n)) == 1


def _phi(n, coeffs):
    k = n + 1
    total = SymPoly.power_sum(k, k).poly * coeffs[0] + SymPoly.sigma(k, k).poly * coeffs[1]
    total = total + SymPoly.sigma(1, k).poly ** k * coeffs[2]
    return SymPoly(total)


@settings(max_examples=60, deadline=None)
@given(eigs, nonzero_rationals, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_sign_invariance(lam, s, coeffs):
    n = len(lam)
    phi = _phi(n, coeffs)
    r = rec(lam, PROJECTIVE, -s * s / 2)
    det = r.det
    odd = odd_part(phi)
    for branch in (s, -s):
        assert odd.evaluate(list(lam) + [branch]) / (branch * det) == projective_contribution(r, phi)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 4]).flatmap(lambda n: st.lists(nonzero_rationals, min_size=n, max_size=n)),
       nonzero_rationals)
def test_affine_projective_agree_even(lam, g0):
    n = len(lam)
    a = affine_contribution(rec(lam, AFFINE, g0))
    p = projective_contribution(rec(lam, PROJECTIVE, -g0 * g0 / 2), SymPoly.power_sum(n + 1, n + 1))
    assert a == p


@given(st.lists(eigs, min_size=0, max_size=6))
def test_baum_bott_counts_points(points):
    for lam in points:
        assert baum_bott_contribution(rec(lam), SymPoly.sigma(len(lam), len(lam))) == 1


def test_regular_elliptic():
    E = curve(1)
    report = verify_affine_index(E, E.zero(), [])
    assert report.verdict == MATCH and report.lhs == report.rhs == 0


def _p2(kind=AFFINE):
    return projective_space(2), homogeneous_records(P2_FIELD, P2_POINTS, kind)


def test_p2_affine():
    P2, recs = _p2()
    report = verify_affine_index(P2, P2.gen("h") * -1, recs)
    assert report.verdict == MATCH and report.lhs == 1 and report.exit_code == 0


def test_p2_affine_negative_control():
    P2, recs = _p2()
    wrong = [SingularPointRecord(r.point, r.jacobian, r.sigmas, r.symbol_kind, r.symbol_value * 2,
                                 r.eigenvalues, r.chart) for r in recs]
    report = verify_affine_index(P2, P2.gen("h") * -1, wrong)
    assert report.verdict == MISMATCH and report.lhs == 4 and report.exit_code == 1


def test_p2_projective():
    P2, recs = _p2(PROJECTIVE)
    report = verify_projective_index(P2, P2.gen("h") * -1, tangent_class(P2, "projective_space", 2), recs,
                                     SymPoly.power_sum(3, 3))
    assert report.verdict == MATCH and report.lhs == 1



def test_p3_projective_odd():
    from folcalc.jobs import load_example, run
    report, code = run(load_example("p3_quadratic_projective"))
    assert code == 0
    assert report["result"]["lhs"] == report["result"]["rhs"] == "10"


def test_empty_singular_set_flags_mismatch():
    P2 = projective_space(2)
    report = verify_projective_index(P2, P2.gen("h") * -1, tangent_class(P2, "projective_space", 2), [],
                                     SymPoly.power_sum(3, 3))
    assert report.verdict == MISMATCH and report.lhs == 0 and report.rhs == 1


@pytest.mark.parametrize("d, field", [
    (1, ["x", "2*y", "3*z"]),
    (2, ["x^2", "y^2", "z^2"]),
])
def test_baum_bott_p2(d, field):
    Zh = ChartField.parse(field, ("x", "y", "z"))
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] if d == 1 else P2_POINTS
    P2 = projective_space(2)
    recs = homogeneous_records(Zh, pts, None)
    report = verify_baum_bott(P2, P2.gen("h") * (1 - d), tangent_class(P2, "projective_space", 2), recs,
                              SymPoly.sigma(2, 2))
    assert report.verdict == MATCH and report.lhs == report.rhs == d * d + d + 1
    short = verify_baum_bott(P2, P2.gen("h") * (1 - d), tangent_class(P2, "projective_space", 2), recs[1:],
                             SymPoly.sigma(2, 2))
    assert short.verdict == MISMATCH


def test_poincare_hopf_p1():
    Zh = ChartField.parse(["x", "3*y"], ("x", "y"))
    P1 = projective_space(1)
    recs = homogeneous_records(Zh, [(1, 0), (0, 1)], None)
    report = verify_baum_bott(P1, P1.zero(), tangent_class(P1, "projective_space", 1), recs, SymPoly.sigma(1, 1))
    assert report.verdict == MATCH and report.lhs == 2


def test_vanishing_symbol_not_applicable():
    P1 = projective_space(1)
    report = verify_affine_index(P1, P1.zero(), [rec([1], AFFINE, 0)])
    assert report.verdict == NOT_APPLICABLE and report.exit_code == 3
    assert report.offending["reason"].startswith("vanishing")


def test_parallel_matches_serial():
    P2, recs = _p2()
    a = verify_affine_index(P2, P2.gen("h") * -1, recs, jobs=1).to_json()
    b = verify_affine_index(P2, P2.gen("h") * -1, recs, jobs=2).to_json()
    assert a == b
