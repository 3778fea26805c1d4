from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folcalc.chern import (RingPresentation, VirtualBundle, builtin_ring, chern_difference, curve, curve_times_p1,
                           normal_class, proj_bundle, product_surface_classes, projective_space, rhs_affine,
                           rhs_baum_bott, rhs_projective, rhs_projective_via_bundle, signature_report,
                           tangent_class, transfer)
from folcalc.errors import InputError
from folcalc.symfun import SymPoly


def test_chern_difference_examples():
    P2 = projective_space(2)
    c = tangent_class(P2, "projective_space", 2)
    assert chern_difference(c, P2.one()) == P2.parse("1 + 3*h + 3*h^2")
    assert chern_difference(c, c) == P2.one()


@pytest.mark.parametrize("d, expected", [(1, 3), (2, 7), (3, 13)])
def test_singular_point_count(d, expected):
    # oracle: series division (1+h)^3 / (1+(1-d)h), frozen
    P2 = projective_space(2)
    diff = chern_difference(tangent_class(P2, "projective_space", 2), P2.one() + P2.gen("h") * (1 - d))
    assert diff.component(4) == P2.parse(f"{expected}*h^2")
    assert expected == d * d + d + 1


@pytest.mark.parametrize("ring", [projective_space(1), projective_space(3), curve(2), curve_times_p1(3)])
def test_builtin_rings_pass_axiom_check(ring):
    ring.check()


@pytest.mark.parametrize("ring", [projective_space(2), curve_times_p1(1)])
def test_graded_commutativity_and_degree(ring):
    names = [g for g, _ in ring.generators]
    for a in names:
        for b in names:
            x, y = ring.gen(a), ring.gen(b)
            assert x * y == y * x
            assert (x * y).component(4) == x * y


def test_custom_ring_from_json():
    doc = {"generators": [{"name": "a", "degree": 2}], "relations": ["a^3=0"], "integral": {"a^2": 1}}
    ring = RingPresentation.from_json(doc)
    assert ring.dimension == 2
    assert (ring.parse("1+a") ** 2).integral() == 1


def test_bad_custom_ring_rejected():
    with pytest.raises(InputError):
        RingPresentation.from_json({"generators": [{"name": "a", "degree": 2}], "relations": ["a^3"],
                                    "integral": {"a^2": 1}})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("c", [1, -2, 3])
def test_grothendieck_powers(n, c):
    base = projective_space(n)
    c1 = base.gen("h") * c
    B = proj_bundle(base, c1, base.zero())
    B.check()
    z = B.zeta()
    for k in range(1, n + 2):
        assert z ** k == B.pullback(-c1) ** (k - 1) * z
    kappa = z * 2 + B.pullback(c1)
    assert kappa * kappa == B.pullback(c1 * c1)


def test_transfer_examples():
    base = projective_space(2)
    c1 = base.gen("h") * 3
    B = proj_bundle(base, c1, base.zero())
    beta = base.gen("h")
    assert transfer(B.zeta() * B.pullback(beta)) == beta
    assert transfer(B.pullback(beta * beta)).is_zero()
    assert transfer(B.zeta() ** 2 * B.pullback(beta)) == -(c1 * beta)
    # integration along the fibres then over the base is the bundle integral
    top = B.zeta() * B.pullback(beta * beta)
    assert top.integral() == (beta * beta).integral() == 1


def test_jet_bundle_has_trivial_c2():
    base = projective_space(2)
    c1 = base.gen("h") * -1
    B = proj_bundle(base, c1, base.zero())
    # zeta^2 + c1 zeta = 0: the Grothendieck relation with c2 = 0
    assert (B.zeta() ** 2 + B.pullback(c1) * B.zeta()).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_rhs_affine_projective_space(n, d):
    P = projective_space(n)
    assert rhs_affine(P, P.gen("h") * (1 - d)) == (1 - d) ** n


def test_rhs_affine_other_models():
    E = curve(1)
    assert rhs_affine(E, E.zero()) == 0
    for nv, nh in [(1, 3), (2, 5), (0, 4)]:
        R = curve_times_p1(2)
        c1TF = -(R.gen("H") * nv) - R.gen("V") * nh
        assert rhs_affine(R, c1TF) == 2 * nv * nh


@pytest.mark.parametrize("n", [2, 4])
@pytest.mark.parametrize("d", [0, 2, 3])
def test_rhs_projective_even(n, d):
    P = projective_space(n)
    c1 = P.gen("h") * (1 - d)
    cTM = tangent_class(P, "projective_space", n)
    assert rhs_projective(P, c1, cTM, SymPoly.power_sum(n + 1, n + 1)) == rhs_affine(P, c1)


def _odd_phi(n):
    k = n + 1
    xs = [f"x{i}" for i in range(1, k + 1)]
    return SymPoly.from_expression(" + ".join(f"{a}^{n}*{b}" for a in xs for b in xs if a != b), k)


@pytest.mark.parametrize("n", [1, 3])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_rhs_projective_odd(n, d):
    P = projective_space(n)
    c1 = P.gen("h") * (1 - d)
    cTM = tangent_class(P, "projective_space", n)
    N = VirtualBundle(normal_class(P, c1, cTM))
    # odd n: phihat_1 = sigma_1 pairs with c1^(n-1), phihat_n = p_n is a Baum-Bott integral
    bb = rhs_baum_bott(P, c1, cTM, SymPoly.power_sum(n, n))
    expected = (c1 ** (n - 1) * N.chern(1)).integral() + bb
    assert rhs_projective(P, c1, cTM, _odd_phi(n)) == expected


def test_rhs_projective_p3_frozen():
    # oracle: sum over the 15 singular points with explicit eigenvalues, frozen
    P = projective_space(3)
    assert rhs_projective(P, P.gen("h") * -1, tangent_class(P, "projective_space", 3), _odd_phi(3)) == 10


def test_rhs_projective_zero_phi():
    P = projective_space(2)
    assert rhs_projective(P, P.gen("h"), tangent_class(P, "projective_space", 2), SymPoly.power_sum(3, 3).poly * 0) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(-3, 4), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_projective_rhs_agrees_with_bundle_route(n, d, coeffs):
    P = projective_space(n)
    c1 = P.gen("h") * (1 - d)
    cTM = tangent_class(P, "projective_space", n)
    k = n + 1
    phi = SymPoly.power_sum(k, k).poly * coeffs[0]
    phi = phi + SymPoly.sigma(k, k).poly * coeffs[1]
    phi = phi + SymPoly.sigma(1, k).poly ** k * coeffs[2]
    if k >= 2:
        phi = phi + SymPoly.sigma(2, k).poly * SymPoly.sigma(1, k).poly ** (k - 2) * coeffs[3]
    phi = SymPoly(phi)
    assert rhs_projective(P, c1, cTM, phi) == rhs_projective_via_bundle(P, c1, cTM, phi)


def test_baum_bott_degree_guard():
    P = projective_space(2)
    with pytest.raises(InputError):
        rhs_baum_bott(P, P.gen("h"), tangent_class(P, "projective_space", 2), SymPoly.sigma(1, 2))


@pytest.mark.parametrize("g, nv, nh", [(2, 1, 3), (0, 0, 0), (3, 2, 6), (5, 0, 1)])
def test_product_surface(g, nv, nh):
    data = product_surface_classes(g, nv, nh)
    assert data["components"] == (2 * nv + 2, 2 * nh - (2 * g - 2))
    R = data["ring"]
    assert data["c1_KF"] == R.gen("H") * nv + R.gen("V") * nh
    # c1(K_S) is minus c1(TM)
    assert data["c1_KS"] == -data["cTM"].component(2)


def test_builtin_ring_unknown():
    with pytest.raises(InputError):
        builtin_ring("torus", 2)


def test_signature_report():
    rep = signature_report(9, 3)
    assert rep["signature"] == 1
    assert rep["projective_structure_possible"] is False
    assert rep["flag"]
    ok = signature_report(0, 0)
    assert ok["signature"] == 0 and ok["flag"] is None
    bad = signature_report(8, 4, c1sq_TF=1)
    assert bad["baum_bott_consistent"] is False and bad["flag"]


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_signature_flag_tracks_declared_class(c1sq, c2):
    rep = signature_report(c1sq, c2)
    assert rep["signature"] == Fraction(c1sq - 2 * c2, 3)
    assert (rep["flag"] is None) == (c1sq == 2 * c2)
