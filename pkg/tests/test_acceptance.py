"""The ten acceptance criteria; each prints one PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest.
"""

import random
import time
from fractions import Fraction

import pytest

from folcalc.algebra import Laurent, MPoly, TSeries, series_compose, series_reciprocal
from folcalc.chern import projective_space, proj_bundle, product_surface_classes, signature_report, tangent_class
from folcalc.foliation import (AFFINE, PROJECTIVE, ChartField, Christoffel,
                               change_generator_affine, homogeneous_records)
from folcalc.geodesic import build_geodesic_affine, build_geodesic_projective, check_affine_relations, \
    check_sl2_relations
from folcalc.indices import MATCH, verify_affine_index, verify_baum_bott, verify_projective_index
from folcalc.localan import (affine_distortion, briot_bouquet_solve, normalize_affine, normalize_projective,
                             riccati_projective_to_affine, schwarzian)
from folcalc.symfun import SymPoly

N = 12
SEED = 20261018
P2_VARS = ("x", "y", "z")
P2_FIELD = ["x^2", "y^2", "z^2"]
P2_POINTS = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 0, 0), (0, 1, 0), (1, 1, 0)]


def rat(rng, lo=-5, hi=5, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_poly(rng, variables, max_degree, terms=4):
    out = {}
    for _ in range(terms):
        exp = tuple(rng.randint(0, max_degree) for _ in variables)
        if sum(exp) <= max_degree:
            out[exp] = rat(rng)
    return MPoly(variables, out)


def rand_series(rng, order, const, linear, terms=5):
    coeffs = {(k,): rat(rng) for k in rng.sample(range(2, order + 1), terms)}
    coeffs[(0,)] = const
    coeffs[(1,)] = linear
    return TSeries(MPoly(("z",), coeffs), order)


def p2_setup(kind):
    Zh = ChartField.parse(P2_FIELD, P2_VARS)
    P2 = projective_space(2)
    return P2, P2.gen("h") * (1 - 2), homogeneous_records(Zh, P2_POINTS, kind)


def criterion_1():
    P2, c1, recs = p2_setup(AFFINE)
    assert len(recs) == 7 and all(r.nondegenerate for r in recs)
    rep = verify_affine_index(P2, c1, recs)
    return rep.verdict == MATCH and rep.lhs == rep.rhs == 1, f"LHS {rep.lhs}, RHS {rep.rhs}"


def criterion_2():
    P2, c1, recs = p2_setup(PROJECTIVE)
    rep = verify_projective_index(P2, c1, tangent_class(P2, "projective_space", 2), recs, SymPoly.power_sum(3, 3))
    return rep.verdict == MATCH and rep.lhs == rep.rhs == 1, f"LHS {rep.lhs}, RHS {rep.rhs}"


def criterion_3():
    P2 = projective_space(2)
    cases = {1: (["x", "2*y", "3*z"], [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 2: (P2_FIELD, P2_POINTS)}
    seen = []
    ok = True
    for d, (field, pts) in cases.items():
        recs = homogeneous_records(ChartField.parse(field, P2_VARS), pts, None)
        rep = verify_baum_bott(P2, P2.gen("h") * (1 - d), tangent_class(P2, "projective_space", 2), recs,
                               SymPoly.sigma(2, 2))
        ok = ok and rep.verdict == MATCH and rep.lhs == rep.rhs == d * d + d + 1
        seen.append(f"d={d}: {rep.lhs}={rep.rhs}")
    return ok, ", ".join(seen)


def criterion_4():
    ok = True
    for g, nv, nh in [(2, 1, 3), (0, 0, 0), (3, 2, 6)]:
        comps = product_surface_classes(g, nv, nh)["components"]
        ok = ok and comps == (2 * nv + 2, 2 * nh - (2 * g - 2))
    return ok, "three product surfaces"


def criterion_5():
    ok = True
    for n in range(1, 5):
        base = projective_space(n)
        for c in (-2, -1, 1, 3):
            c1 = base.gen("h") * c
            B = proj_bundle(base, c1, base.zero())
            z = B.zeta()
            ok = ok and all(z ** k == B.pullback(-c1) ** (k - 1) * z for k in range(1, n + 2))
            kappa = z * 2 + B.pullback(c1)
            ok = ok and kappa * kappa == B.pullback(c1 * c1)
    return ok, "P^1..P^4, four first Chern classes each"


def criterion_6():
    rng = random.Random(SEED)
    V = ("x", "y")
    count = 0
    while count < 50:
        comps = [rand_poly(rng, V, 3), rand_poly(rng, V, 3)]
        if all(c.is_zero() for c in comps):
            continue
        Z = ChartField(comps)
        X, H = build_geodesic_affine(Z, Christoffel(AFFINE, rand_poly(rng, V, 3)))
        if not all(check_affine_relations(X, H).values()):
            return False, f"affine case {count}"
        if not all(check_sl2_relations(*build_geodesic_projective(Z, Christoffel(PROJECTIVE, rand_poly(rng, V, 3)))).values()):
            return False, f"projective case {count}"
        count += 1
    return True, "50 affine and 50 projective builds"


def criterion_7():
    rng = random.Random(SEED + 7)
    order = N + 3
    for i in range(100):
        f = rand_series(rng, order, 0, rat(rng, 1, 5))
        g = rand_series(rng, order, 0, rat(rng, -5, -1))
        fg, dg = series_compose(f, g), g.diff(0)
        if not affine_distortion(fg).agrees_with(series_compose(affine_distortion(f), g) * dg + affine_distortion(g), N):
            return False, f"distortion pair {i}"
        if not schwarzian(fg).agrees_with(series_compose(schwarzian(f), g) * dg * dg + schwarzian(g), N):
            return False, f"Schwarzian pair {i}"
    for _ in range(20):
        a, b, c, d = (rat(rng) for _ in range(4))
        if a * d - b * c == 0 or d == 0:
            continue
        m = TSeries(MPoly(("z",), {(1,): a, (0,): b}), order) * series_reciprocal(
            TSeries(MPoly(("z",), {(1,): c, (0,): d}), order))
        if not schwarzian(m).is_zero_to_order(N):
            return False, "Moebius"
    return True, "100 composable pairs, Moebius kernel"


def criterion_8():
    rng = random.Random(SEED + 8)
    FZ = ("f", "z")
    for _ in range(10):
        mu = rat(rng, -5, -1)
        nonlinear = {e: c for e, c in rand_poly(rng, FZ, 3).terms.items() if sum(e) >= 2}
        F = MPoly(FZ, nonlinear) + MPoly.gen("f", FZ) * mu \
            + MPoly.gen("z", FZ) * rat(rng)
        briot_bouquet_solve([rat(rng, 1, 5)], TSeries(F, N), N)
        normalize_affine([rat(rng, 1, 5)], rand_series(rng, N, rat(rng, 1, 5), rat(rng)), N)
        g0 = rat(rng, 1, 5)
        normalize_projective([rat(rng, 1, 5)], rand_series(rng, N, -g0 * g0 / 2, rat(rng)), -g0, N)
        theta = Fraction(rng.choice([-7, -5, -1, 1, 5, 7]), rng.choice([2, 3]))
        S = Laurent({-2: (1 - theta * theta) / 2, -1: rat(rng), 0: rat(rng), 3: rat(rng)}, N, weight=2)
        riccati_projective_to_affine(S, theta, N)
    for theta in (Fraction(1, 3), Fraction(-2), Fraction(5, 2), Fraction(0)):
        u = riccati_projective_to_affine(Laurent({-2: (1 - theta * theta) / 2}, N, weight=2), theta, N)
        if u.poly != MPoly.const(theta - 1, ("z",)):
            return False, f"constant identity for theta = {theta}"
    return True, "residual-checked on 40 random solves; u = theta - 1 for pure poles"


def criterion_9():
    rng = random.Random(SEED + 9)
    Z1 = ("z",)
    for _ in range(10):
        lam = rat(rng, 1, 5)
        gamma = rand_series(rng, N, rat(rng, 1, 5), rat(rng))
        f = normalize_affine([lam], gamma, N)
        Z = ChartField([MPoly.gen("z", Z1) * lam])
        out = change_generator_affine(Christoffel(AFFINE, gamma), f, Z).symbol
        if not out.agrees_with(TSeries.const(gamma.constant_term(), Z1, N), N):
            return False, f"lambda = {lam}"
    return True, "10 random symbols"


def criterion_10():
    ok = True
    for c1sq, c2 in [(9, 3), (8, 4), (5, 7)]:
        rep = signature_report(c1sq, c2)
        nonzero = c1sq - 2 * c2 != 0
        ok = ok and (rep["flag"] is not None) == nonzero and rep["projective_structure_possible"] != nonzero
    return ok, "flag raised exactly when c1^2(T_F) != 0"


CRITERIA = [
    (1, "affine index theorem on P^2", criterion_1),
    (2, "projective index theorem, even case", criterion_2),
    (3, "Baum-Bott count on P^2", criterion_3),
    (4, "product surfaces", criterion_4),
    (5, "Grothendieck suite", criterion_5),
    (6, "sl(2,C) suite", criterion_6),
    (7, "operator cocycles", criterion_7),
    (8, "solver residuals", criterion_8),
    (9, "normalization postcondition", criterion_9),
    (10, "signature harness", criterion_10),
]


def evaluate(func):
    start = time.perf_counter()
    try:
        ok, detail = func()
    except Exception as exc:  # a raised defect is a failed criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, detail, time.perf_counter() - start


@pytest.mark.parametrize("number, title, func", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_acceptance(number, title, func, capsys):
    ok, detail, elapsed = evaluate(func)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {elapsed:.2f}s)")
    assert ok, detail
    assert elapsed < 10


if __name__ == "__main__":
    for number, title, func in CRITERIA:
        ok, detail, elapsed = evaluate(func)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {elapsed:.2f}s)")
