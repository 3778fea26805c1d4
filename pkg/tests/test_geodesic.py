from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys, small_rationals
from folcalc.algebra import MPoly, TSeries, series_reciprocal
from folcalc.errors import InputError
from folcalc.expr import parse_expression as P
from folcalc.foliation import AFFINE, PROJECTIVE, ChartField, Christoffel
from folcalc.geodesic import (LiftedField, build_geodesic_affine, build_geodesic_projective,
                              check_affine_relations, check_base_components, check_sl2_relations,
                              cocycle_check, fiber_equilibria, fields_equal, gluing_check_affine,
                              gluing_check_projective, lie_bracket, projective_space_cocycle_data,
                              projectivized_riccati, riccati_charts_agree)

XY = ("x", "y")
cubic = polys(XY, max_degree=3)
fields = st.tuples(cubic, cubic).filter(lambda c: not (c[0].is_zero() and c[1].is_zero()))


def test_bracket_examples():
    X = ChartField.parse(["1", "0"], XY)
    Y = ChartField.parse(["y", "x"], XY)
    assert fields_equal(lie_bracket(X, Y), ChartField.parse(["0", "1"], XY))
    E = ChartField.parse(["x", "y"], XY)
    assert fields_equal(lie_bracket(E, E), ChartField([MPoly.zero(XY)] * 2, allow_zero=True))


@settings(max_examples=30, deadline=None)
@given(fields, fields, fields)
def test_jacobi(a, b, c):
    X, Y, W = ChartField(a), ChartField(b), ChartField(c)
    total = [p + q + r for p, q, r in zip(lie_bracket(X, lie_bracket(Y, W)).components,
                                          lie_bracket(Y, lie_bracket(W, X)).components,
                                          lie_bracket(W, lie_bracket(X, Y)).components)]
    assert all(t.is_zero() for t in total)


def test_affine_vanishing_symbol():
    Z = ChartField.parse(["x", "2*y"], XY)
    X, H = build_geodesic_affine(Z, Christoffel(AFFINE, MPoly.zero(XY)))
    assert X.components[-1].is_zero()
    assert all(check_affine_relations(X, H).values())


def test_projective_vanishing_symbol():
    Z = ChartField.parse(["x", "2*y"], XY)
    assert all(check_sl2_relations(*build_geodesic_projective(Z, Christoffel(PROJECTIVE, MPoly.zero(XY)))).values())


@settings(max_examples=50, deadline=None)
@given(fields, cubic)
def test_affine_bracket_relation(comps, gamma):
    Z = ChartField(comps)
    X, H = build_geodesic_affine(Z, Christoffel(AFFINE, gamma))
    assert check_affine_relations(X, H) == {"[H,X]=X": True}
    assert check_base_components(X, Z)
    assert X.fiber_degree() <= 2


@settings(max_examples=50, deadline=None)
@given(fields, cubic)
def test_sl2_relations(comps, rho):
    Z = ChartField(comps)
    X, H, Y = build_geodesic_projective(Z, Christoffel(PROJECTIVE, rho))
    assert all(check_sl2_relations(X, H, Y).values())
    assert X.fiber_degree() <= 2


def test_fresh_fiber_names():
    Z = ChartField.parse(["zeta", "1"], ("zeta", "y"))
    X, _ = build_geodesic_affine(Z, Christoffel(AFFINE, MPoly.one(("zeta", "y"))))
    assert X.fiber_vars == ("zeta_",)


def test_lifted_field_variable_order():
    with pytest.raises(Exception):
        LiftedField([MPoly.zero(("a", "b"))] * 2, ("b",), ("a",))


@settings(max_examples=25, deadline=None)
@given(fields, cubic, st.sampled_from(["1 + x*y", "2 + x", "x", "1 - y^2"]))
def test_gluing(comps, sym, gtext):
    Z = ChartField(comps)
    g = P(gtext, XY)
    assert gluing_check_affine(Z, Christoffel(AFFINE, sym), g)[0]
    assert gluing_check_projective(Z, Christoffel(PROJECTIVE, sym), g)[0]


def test_gluing_two_charts():
    ZA = ChartField.parse(["x + x^2*y", "2*y + 2*x*y^2"], XY)
    ZB = ChartField.parse(["x", "2*y"], XY)
    g = P("1 + x*y", XY)
    assert [a == b for a, b in zip(ZA.components, ZB.scaled(g).components)] == [True, True]
    ok, witness = gluing_check_affine(ZB, Christoffel(AFFINE, P("3", XY)), g)
    assert ok and witness is None


def test_riccati_charts():
    Z = ChartField.parse(["x", "-y"], XY)
    for rho in ("0", "-1/2", "x*y + 3"):
        Fu, Fv = projectivized_riccati(Z, Christoffel(PROJECTIVE, P(rho, XY)))
        assert riccati_charts_agree(Fu, Fv)[0]


def test_fiber_equilibria_examples():
    Z = ChartField.parse(["x", "2*y"], XY)
    Fu, _ = projectivized_riccati(Z, Christoffel(PROJECTIVE, P("-1/2", XY)))
    eq = fiber_equilibria(Fu, (0, 0))
    assert eq["sum"] == 0 and eq["product"] == -1 and not eq["degenerate"]
    Fu, _ = projectivized_riccati(Z, Christoffel(PROJECTIVE, P("x", XY)))
    assert fiber_equilibria(Fu, (0, 0))["degenerate"]
    with pytest.raises(InputError):
        fiber_equilibria(Fu, (1, 0))


@settings(max_examples=40, deadline=None)
@given(small_rationals.filter(bool), cubic)
def test_fiber_pair_invariant(r0, tail):
    Z = ChartField.parse(["x", "3*y"], XY)
    rho = MPoly.const(r0, XY) + tail * MPoly.gen("x", XY)
    Fu, _ = projectivized_riccati(Z, Christoffel(PROJECTIVE, rho))
    eq = fiber_equilibria(Fu, (0, 0))
    assert (eq["sum"], eq["product"]) == (0, 2 * r0)


def test_cocycle_projective_space():
    Zh = ChartField.parse(["x^2", "y^2", "z^2"], ("x", "y", "z"))
    fields, mult = projective_space_cocycle_data(Zh)
    rep = cocycle_check(fields, mult)
    assert rep["ok"]
    assert len(rep["triple"]) == 1 and len(rep["inverse"]) == 3


def test_cocycle_p3():
    Zh = ChartField.parse(["x*y", "y*z", "z*w", "w*x"], ("x", "y", "z", "w"))
    rep = cocycle_check(*projective_space_cocycle_data(Zh))
    assert rep["ok"] and len(rep["triple"]) == 4 and len(rep["inverse"]) == 6


def test_cocycle_negative_control():
    Zh = ChartField.parse(["x^2", "y^2", "z^2"], ("x", "y", "z"))
    fields, mult = projective_space_cocycle_data(Zh)
    key = sorted(mult)[0]
    mult[key] = mult[key] * 2
    rep = cocycle_check(fields, mult)
    assert not rep["ok"]
    assert any(not t["ok"] and t["witness"] for t in rep["inverse"] + rep["triple"])


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 0)]), small_rationals, max_size=3))
def test_cocycle_series_inverse(tail):
    Z = ChartField.parse(["x", "2*y"], XY)
    g = TSeries(MPoly(XY, {**tail, (0, 0): Fraction(1)}), 12)
    ginv = series_reciprocal(g)
    fields = {"a": ChartField([TSeries(c, 12) for c in Z.components]),
              "b": ChartField([g * c for c in Z.components])}
    rep = cocycle_check(fields, {("a", "b"): g, ("b", "a"): ginv}, order=10)
    assert rep["ok"] and rep["inverse"]
