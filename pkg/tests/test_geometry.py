from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from higgspec.errors import DimensionMismatch, SpecialDivisorUndecidable
from higgspec.geometry import (
    CanonicalPower,
    CoverMap,
    GenericDegree,
    NSClass,
    ProductOfCurves,
    SurfaceModel,
    bx_decomposition,
    degree,
    discriminant,
    h0_curve,
    pushforward_c1,
    pushforward_c2,
)


@pytest.fixture
def g22():
    return ProductOfCurves(2, 2)


@pytest.fixture
def etale_cover(g22):
    # C1~ x C2 -> C1 x C2 with C1~ -> C1 an unramified double cover
    return CoverMap(
        P=((1, 0), (0, 2)),
        cover_Q=((0, 1), (1, 0)),
        pullback=((2, 0), (0, 1)),
        L_class=NSClass((0, 0)),
        base=g22.model,
    )


# -- degrees --------------------------------------------------------------------


def test_degree_examples(g22):
    m = g22.model
    assert degree(m.K, g22.F1 + g22.F2, m) == 4
    assert degree(g22.F1, g22.F1, m) == 0
    assert degree(NSClass.zero(2), g22.F2, m) == 0


def test_degree_dimension_mismatch(g22):
    with pytest.raises(DimensionMismatch):
        degree(NSClass((1, 2, 3)), g22.F1, g22.model)


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_degree_bilinear_symmetric(data):
    m = ProductOfCurves(2, 3).model
    draw = lambda: NSClass((data.draw(st.integers(-5, 5)), data.draw(st.integers(-5, 5))))
    x, y, z = draw(), draw(), draw()
    c = data.draw(st.integers(-3, 3))
    assert degree(x, y, m) == degree(y, x, m)
    assert degree(x + z, y, m) == degree(x, y, m) + degree(z, y, m)
    assert degree(x * c, y, m) == c * degree(x, y, m)


def test_polarization_must_be_positive():
    with pytest.raises(ValueError):
        SurfaceModel(
            generators=("a",),
            Q=((-1,),),
            K=NSClass((0,)),
            omega=NSClass((1,)),
        )


# -- products and the component table ----------------------------------------------


EXPECTED_BX = {
    (0, 0): [],
    (1, 0): [("O", "both", 1)],
    (2, 0): [("L1", "L", 3)],
    (3, 0): [("L1", "L", 6)],
    (1, 1): [("O", "V", 2)],
    (2, 1): [("O", "V", 3), ("L1", "L", 3)],
    (3, 1): [("O", "V", 4), ("L1", "L", 6)],
    (2, 2): [("O", "V", 4), ("L1", "L", 3), ("L2", "L", 3)],
    (3, 2): [("O", "V", 5), ("L1", "L", 6), ("L2", "L", 3)],
    (3, 3): [("O", "V", 6), ("L1", "L", 6), ("L2", "L", 6)],
}


@pytest.mark.parametrize("g1,g2", [(a, b) for a in range(4) for b in range(4)])
def test_bx_dimension_table(g1, g2):
    table = bx_decomposition(ProductOfCurves(g1, g2))
    got = [(c.label, c.kind, c.dim) for c in table.components]
    assert got == EXPECTED_BX[(max(g1, g2), min(g1, g2))]


def test_bx_intersections_genus_2_3():
    table = bx_decomposition(ProductOfCurves(2, 3))
    assert [c.dim for c in table.components] == [5, 6, 3]
    assert dict(table.intersections) == {("O", "L1"): 3, ("O", "L2"): 2, ("L1", "L2"): 0}


def test_bx_component_invariants():
    for g1 in range(4):
        for g2 in range(4):
            for c in bx_decomposition(ProductOfCurves(g1, g2)).components:
                if c.kind in ("V", "both"):
                    assert c.h0_Lsq == 1
                if c.kind in ("L", "both"):
                    assert c.h0_omega_twist == 1
                if c.kind == "both":
                    assert c.dim == 1


# -- h^0 -----------------------------------------------------------------------------


def test_h0_examples():
    assert h0_curve(2, CanonicalPower(2)) == 3
    assert h0_curve(3, CanonicalPower(1)) == 3
    assert h0_curve(2, GenericDegree(5)) == 4
    assert h0_curve(5, CanonicalPower(0)) == 1
    assert h0_curve(1, CanonicalPower(7)) == 1
    assert h0_curve(0, CanonicalPower(3)) == 0
    assert h0_curve(0, GenericDegree(4)) == 5
    assert h0_curve(3, GenericDegree(-2)) == 0
    assert h0_curve(2, GenericDegree(0)) == 0


def test_h0_special_needs_declaration():
    with pytest.raises(SpecialDivisorUndecidable):
        h0_curve(3, GenericDegree(4))
    assert h0_curve(3, GenericDegree(4, declared_h0=2)) == 2


# -- covers and Chern classes -----------------------------------------------------------


def test_projection_formula_validated(g22):
    with pytest.raises(ValueError):
        CoverMap(
            P=((1, 0), (0, 2)),
            cover_Q=((0, 1), (1, 0)),
            pullback=((1, 0), (0, 1)),  # inconsistent with P
            L_class=NSClass((0, 0)),
            base=g22.model,
        )


def test_pushforward_examples(etale_cover):
    assert pushforward_c1(NSClass((0, 1)), etale_cover) == NSClass((0, 2))
    # trivial module: c1 = -L, c2 = 0
    assert pushforward_c1(NSClass.zero(2), etale_cover) == NSClass((0, 0))
    assert pushforward_c2(NSClass.zero(2), etale_cover) == 0


def test_pushforward_with_nonzero_L(g22):
    cm = CoverMap(
        P=((1, 0), (0, 2)),
        cover_Q=((0, 1), (1, 0)),
        pullback=((2, 0), (0, 1)),
        L_class=NSClass((2, 0)),
        base=g22.model,
    )
    assert pushforward_c1(NSClass.zero(2), cm) == NSClass((-2, 0))
    assert pushforward_c2(NSClass.zero(2), cm) == 0
    # (P m)^2 - m.m - (P m).L over 2 with m = F2~
    m = NSClass((0, 1))
    assert pushforward_c2(m, cm) == Fraction(0 - 0 - 4, 2)


def test_identity_cover_c2_vanishes(g22):
    cm = CoverMap(
        P=((1, 0), (0, 1)),
        cover_Q=g22.model.Q,
        pullback=((1, 0), (0, 1)),
        L_class=NSClass((0, 0)),
        base=g22.model,
    )
    for coords in [(1, 2), (-3, 5), (0, 0)]:
        assert pushforward_c2(NSClass(coords), cm) == 0


# -- discriminant -------------------------------------------------------------------------


def test_discriminant_examples(g22):
    m = g22.model
    assert discriminant(NSClass((0, 0)), 0, m) == 0
    assert discriminant(g22.F1 + g22.F2, 1, m) == 2


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_discriminant_twist_invariance(data):
    n = data.draw(st.integers(2, 3))
    Q = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Q[i][j] = Q[j][i] = data.draw(st.integers(-3, 3))
    Q[0][0] = abs(Q[0][0]) + 1
    model = SurfaceModel(
        generators=tuple(f"e{i}" for i in range(n)),
        Q=tuple(tuple(r) for r in Q),
        K=NSClass((0,) * n),
        omega=NSClass(tuple(1 if i == 0 else 0 for i in range(n))),
    )
    c1 = NSClass(tuple(data.draw(st.integers(-5, 5)) for _ in range(n)))
    ell = NSClass(tuple(data.draw(st.integers(-5, 5)) for _ in range(n)))
    c2 = Fraction(data.draw(st.integers(-9, 9)), data.draw(st.sampled_from([1, 2])))
    twisted = discriminant(
        c1 + 2 * ell, c2 + degree(c1, ell, model) + degree(ell, ell, model), model
    )
    assert twisted == discriminant(c1, c2, model)


def test_half_classes():
    c = NSClass((1, 3))
    assert not c.divisible_by_two()
    assert (c * 2).divisible_by_two()
    assert c.half() == NSClass((Fraction(1, 2), Fraction(3, 2)))
    assert not c.half().is_integral()
