from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from higgspec.errors import (
    CayleyHamiltonViolation,
    FactorizationMismatch,
    NotRankOne,
    ZeroInput,
)
from higgspec.matrix import mat_eq, mat_mul
from higgspec.poly import Poly, is_squarefree
from higgspec.spectral import (
    CoverModule,
    HiggsField,
    Member,
    Nilpotent,
    NotMember,
    OneForm,
    RankOneFactorization,
    SpectralDatum,
    SymDiff,
    annihilator_distribution,
    build_cover,
    canonical_module,
    factor_rank_one,
    higgs_integrable,
    hitchin_map,
    is_normal,
    module_from_higgs,
    pushforward,
    rank_at,
    rank_le_one,
    spectral_base_check,
    tower_enumerate,
    twisted_factor,
)

P = Poly.from_text


def sym(nvars, rows):
    return SymDiff(tuple(tuple(P(t, nvars) for t in row) for row in rows))


def consts(nvars, rows):
    return tuple(tuple(Poly.constant(nvars, c) for c in row) for row in rows)


@pytest.fixture
def alpha_xy():
    return OneForm((P("1 * x1", 2), P("1 * x2", 2)))


def canonical_field(f):
    """B_i = [[0, -a_i tau], [a_i, 0]] directly, bypassing the cover machinery."""
    n = f.dim
    z = Poly.zero(n)
    return HiggsField(
        tuple(((z, -f.alpha[i] * f.tau), (f.alpha[i], z)) for i in range(n))
    )


# -- rank tests -----------------------------------------------------------------


def test_rank_le_one_examples(alpha_xy):
    assert rank_le_one(sym(2, [["1 * x1^2", "1 * x1 * x2"], ["1 * x1 * x2", "1 * x2^2"]]))
    assert not rank_le_one(sym(2, [["1", "0"], ["0", "1"]]))
    s = sym(2, [["1 * x1", "1 * x2"], ["1 * x2", "1 * x1"]])
    assert not rank_le_one(s)
    with pytest.raises(NotRankOne) as err:
        factor_rank_one(s)
    assert err.value.minor == P("1 * x1^2 + -1 * x2^2", 2)


def test_rank_at():
    s = sym(2, [["1 * x1^2", "1 * x1 * x2"], ["1 * x1 * x2", "1 * x2^2"]])
    assert rank_at(s, (0, 0)) == 0
    assert rank_at(s, (1, 2)) == 1
    ident = sym(2, [["1", "0"], ["0", "1"]])
    assert rank_at(ident, (Fraction(7, 3), -2)) == 2


# -- factorization ----------------------------------------------------------------


def test_factor_examples(alpha_xy):
    f = factor_rank_one(sym(2, [["1 * x1^2", "1 * x1 * x2"], ["1 * x1 * x2", "1 * x2^2"]]))
    assert f.alpha == alpha_xy and f.tau == Poly.one(2)

    f2 = factor_rank_one(sym(2, [["1 * x1^3", "1 * x1^2 * x2"], ["1 * x1^2 * x2", "1 * x1 * x2^2"]]))
    assert f2.alpha == alpha_xy and f2.tau == P("1 * x1", 2)
    # oracle: expand tau * alpha alpha^T
    assert f2.symdiff() == sym(2, [["1 * x1^3", "1 * x1^2 * x2"], ["1 * x1^2 * x2", "1 * x1 * x2^2"]])

    f3 = factor_rank_one(sym(2, [["1", "2"], ["2", "4"]]))
    assert f3.alpha == OneForm((Poly.one(2), Poly.constant(2, 2)))
    assert f3.tau == Poly.one(2)


def test_factor_zero_rejected():
    with pytest.raises(ZeroInput):
        factor_rank_one(SymDiff.zero(2))


def test_factor_normalization_unique(alpha_xy):
    base = RankOneFactorization(alpha_xy, P("2 * x1 + -3", 2))
    expected = factor_rank_one(base.symdiff())
    for c in (1, -1, 2, -2, 3, -3):
        scaled = RankOneFactorization(alpha_xy.scale(Fraction(c)), base.tau * Fraction(1, c * c))
        assert scaled.symdiff() == base.symdiff()
        again = factor_rank_one(scaled.symdiff())
        assert again.alpha == expected.alpha and again.tau == expected.tau


def test_factor_pulls_common_content():
    # S = (1/2) alpha alpha^T keeps alpha primitive; tau absorbs the scalar
    f = factor_rank_one(
        sym(2, [["1/2 * x1^2", "1/2 * x1 * x2"], ["1/2 * x1 * x2", "1/2 * x2^2"]])
    )
    assert f.tau == Poly.constant(2, Fraction(1, 2))


# -- spectral base ------------------------------------------------------------------


def test_base_check_member(alpha_xy):
    d = SpectralDatum(OneForm.zero(2), sym(2, [["1 * x1^2", "1 * x1 * x2"], ["1 * x1 * x2", "1 * x2^2"]]))
    v = spectral_base_check(d)
    assert isinstance(v, Member)
    assert v.factorization.alpha == alpha_xy and v.factorization.tau == Poly.one(2)


def test_base_check_nilpotent():
    s1 = OneForm((P("2 * x1", 2), P("2 * x2", 2)))
    s2 = sym(2, [["1 * x1^2", "1 * x1 * x2"], ["1 * x1 * x2", "1 * x2^2"]])
    assert isinstance(spectral_base_check(SpectralDatum(s1, s2)), Nilpotent)


def test_base_check_not_member():
    d = SpectralDatum(OneForm.zero(2), sym(2, [["1", "0"], ["0", "1"]]))
    v = spectral_base_check(d)
    assert isinstance(v, NotMember)
    # witness is a minor of 4 s2 - s1 s1^T = 4 Id
    assert v.minor == Poly.constant(2, 16)


# -- Higgs fields ---------------------------------------------------------------------


def test_integrable_examples():
    z = Poly.zero(2)
    one = Poly.one(2)
    prop_nil = HiggsField((((z, z), (one, z)), ((z, z), (Poly.constant(2, 5), z))))
    assert higgs_integrable(prop_nil)
    bad = HiggsField(
        (((one, z), (z, -one)), ((z, one), (z, z)))
    )
    assert not higgs_integrable(bad)
    single = HiggsField((((Poly.variable(1, 0), Poly.zero(1)), (Poly.zero(1), Poly.one(1))),))
    assert higgs_integrable(single)


def test_hitchin_map_diag_constants():
    z = Poly.zero(2)
    b1 = consts(2, [[1, 0], [0, -1]])
    b2 = consts(2, [[2, 0], [0, -2]])
    d = hitchin_map(HiggsField((b1, b2)))
    assert d.s1.is_zero()
    assert d.s2 == sym(2, [["-1", "-2"], ["-2", "-4"]])


def test_hitchin_map_canonical_field(alpha_xy):
    f = RankOneFactorization(alpha_xy, P("1 * x1 + 3", 2))
    d = hitchin_map(canonical_field(f))
    assert d.s1.is_zero() and d.s2 == f.symdiff()


def test_hitchin_map_zero_field():
    z = Poly.zero(2)
    d = hitchin_map(HiggsField((((z, z), (z, z)), ((z, z), (z, z)))))
    assert d.s1.is_zero() and d.s2.is_zero()


def test_hitchin_map_needs_rank_two():
    from higgspec.errors import RankUnsupported

    one = Poly.one(1)
    with pytest.raises(RankUnsupported):
        hitchin_map(HiggsField((((one,),),)))


# -- twisted factorization ---------------------------------------------------------------


def test_twisted_factor_canonical(alpha_xy):
    f = RankOneFactorization(alpha_xy, P("1 * x1", 2))
    phi0 = twisted_factor(canonical_field(f), f)
    assert mat_eq(phi0, ((Poly.zero(2), -f.tau), (Poly.one(2), Poly.zero(2))))


def test_twisted_factor_diagonal_sign():
    # B_i = a_i diag(w, -w): phi0 = diag(w, -w), tau = -w^2
    w = Fraction(3)
    alpha = OneForm((P("1 * x1", 2), P("1 * x2", 2)))
    diag = consts(2, [[w, 0], [0, -w]])
    mats = tuple(
        tuple(tuple(p * alpha[i] for p in row) for row in diag) for i in range(2)
    )
    phi = HiggsField(mats)
    f = RankOneFactorization(alpha, Poly.constant(2, -w * w))
    phi0 = twisted_factor(phi, f)
    assert mat_eq(phi0, diag)


def test_twisted_factor_mismatch(alpha_xy):
    f = RankOneFactorization(OneForm((Poly.zero(2), Poly.one(2))), Poly.one(2))
    field = canonical_field(RankOneFactorization(alpha_xy, Poly.one(2)))
    with pytest.raises(FactorizationMismatch):
        twisted_factor(field, f)


# -- covers, towers, modules ----------------------------------------------------------


def test_build_cover_examples(alpha_xy):
    c = build_cover(RankOneFactorization(alpha_xy, P("1 * x1^2 * x2", 2)))
    assert sorted(c.branch.multiplicities()) == [1, 2]
    assert c.tuple_a == (0, 0)
    assert c.effective_tau == P("1 * x1^2 * x2", 2)
    assert not is_normal(c)

    etale = build_cover(RankOneFactorization(alpha_xy, Poly.constant(2, -4)))
    assert etale.branch.factors == ()
    assert etale.splits_over_base() is True  # -tau = 4 is a rational square
    nonsplit = build_cover(RankOneFactorization(alpha_xy, Poly.constant(2, 2)))
    assert nonsplit.splits_over_base() is False
    assert is_normal(etale)

    simple = build_cover(RankOneFactorization(alpha_xy, P("1 * x1", 2)))
    assert simple.branch.factors == ((P("1 * x1", 2), 1),)
    assert simple.splits_over_base() is None


def test_tower_counts(alpha_xy):
    tau = P("1 * x1", 3) ** 2 * P("1 * x2", 3) ** 3 * P("1 * x3", 3)
    alpha = OneForm((Poly.one(3), Poly.zero(3), Poly.zero(3)))
    t = tower_enumerate(build_cover(RankOneFactorization(alpha, tau)))
    assert len(t.covers) == 4
    top = t.covers[t.normalization_index]
    assert is_squarefree(top.effective_tau)
    assert sum(1 for c in t.covers if is_normal(c)) == 1

    sf = tower_enumerate(build_cover(RankOneFactorization(alpha_xy, P("1 * x1 * x2", 2))))
    assert len(sf.covers) == 1 and is_normal(sf.covers[0])

    chain = tower_enumerate(
        build_cover(RankOneFactorization(alpha_xy, P("1 * x1", 2) ** 4))
    )
    assert len(chain.covers) == 3
    assert len(chain.edges) == 2


def test_declared_components(alpha_xy):
    from higgspec.errors import InconsistentBranchData

    x, y = P("1 * x1", 2), P("1 * x2", 2)
    f = RankOneFactorization(alpha_xy, x**2 * y**2)
    c = build_cover(f, components=[(x, 2), (y, 2)])
    assert len(c.branch.factors) == 2
    with pytest.raises(InconsistentBranchData):
        build_cover(f, components=[(x, 2)])  # misses y^2
    with pytest.raises(InconsistentBranchData):
        build_cover(f, components=[(x * y, 2), (x, 0)])


def test_canonical_module_and_pushforward():
    alpha = OneForm((Poly.one(2), Poly.zero(2)))
    f = RankOneFactorization(alpha, P("1 * x1", 2))
    m = canonical_module(build_cover(f))
    assert mat_eq(m.eta_action, ((Poly.zero(2), -P("1 * x1", 2)), (Poly.one(2), Poly.zero(2))))
    phi = pushforward(m, f)
    assert mat_eq(phi.matrices[0], m.eta_action)
    assert all(p.is_zero() for row in phi.matrices[1] for p in row)


def test_cover_module_rejects_bad_action(alpha_xy):
    f = RankOneFactorization(alpha_xy, P("1 * x1", 2))
    cover = build_cover(f)
    with pytest.raises(CayleyHamiltonViolation):
        CoverModule(cover, consts(2, [[1, 0], [0, 1]]))


def test_roundtrip_with_conjugation(alpha_xy):
    f = RankOneFactorization(alpha_xy, P("1 * x1 + 5", 2))
    cover = build_cover(f)
    g = consts(2, [[1, 2], [1, 3]])
    ginv = consts(2, [[3, -2], [-1, 1]])
    phi0 = mat_mul(mat_mul(g, canonical_module(cover).eta_action), ginv)
    m = CoverModule(cover, phi0)
    back = module_from_higgs(pushforward(m, f), f)
    assert mat_eq(back.eta_action, phi0)


def test_module_from_higgs_requires_traceless(alpha_xy):
    f = RankOneFactorization(alpha_xy, Poly.one(2))
    one = Poly.one(2)
    z = Poly.zero(2)
    phi = HiggsField((((one, z), (z, one)), ((z, z), (z, z))))
    with pytest.raises(FactorizationMismatch):
        module_from_higgs(phi, f)


# -- annihilator --------------------------------------------------------------------


def test_annihilator_examples():
    a = OneForm((Poly.one(2), Poly.zero(2)))
    gens = annihilator_distribution(a)
    assert gens == [(Poly.zero(2), -Poly.one(2))]

    axy = OneForm((P("1 * x1", 2), P("1 * x2", 2)))
    assert annihilator_distribution(axy) == [(P("1 * x2", 2), P("-1 * x1", 2))]

    a3 = OneForm((P("1 * x1", 3), P("1 * x2", 3), P("1 * x3", 3)))
    gens3 = annihilator_distribution(a3)
    assert len(gens3) == 3
    for v in gens3:
        dot = Poly.zero(3)
        for ai, vi in zip(a3, v):
            dot = dot + ai * vi
        assert dot.is_zero()


def test_annihilator_rejects_zero():
    with pytest.raises(ZeroInput):
        annihilator_distribution(OneForm.zero(2))


# -- the rank-one theorem as a property ------------------------------------------------


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_integrable_fields_land_in_spectral_base(data):
    n = data.draw(st.integers(1, 2))
    fam = data.draw(st.sampled_from(["diag", "nilpotent"]))
    coeff = st.integers(-3, 3)

    def rand_poly():
        terms = {}
        for _ in range(data.draw(st.integers(1, 2))):
            e = tuple(data.draw(st.integers(0, 2)) for _ in range(n))
            terms[e] = terms.get(e, 0) + data.draw(coeff)
        return Poly(n, terms)

    if fam == "diag":
        a, b, c, d = (data.draw(coeff) for _ in range(4))
        det = a * d - b * c
        if det == 0:
            return
        g = consts(n, [[a, b], [c, d]])
        ginv = tuple(
            tuple(Poly.constant(n, Fraction(v, det)) for v in row)
            for row in [[d, -b], [-c, a]]
        )
        mats = []
        for _ in range(n):
            diag = ((rand_poly(), Poly.zero(n)), (Poly.zero(n), rand_poly()))
            mats.append(mat_mul(mat_mul(g, diag), ginv))
    else:
        a, b = data.draw(coeff), data.draw(st.integers(1, 3))
        nil = consts(n, [[a * b, -a * a], [b * b, -a * b]])
        mats = []
        for _ in range(n):
            scalar = rand_poly()
            mats.append(tuple(tuple(p * scalar for p in row) for row in nil))
    phi = HiggsField(tuple(mats))
    assert higgs_integrable(phi)
    assert isinstance(spectral_base_check(hitchin_map(phi)), (Nilpotent, Member))
