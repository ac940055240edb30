"""Stability verdicts, the Hitchin section, real enumeration and rigidity.

Stability is decided only for the split shapes whose case analyses are
complete at this level of description; arbitrary bundles are out of scope.
The Hitchin section has a chart backend (emits an honest Higgs field and
re-applies the spectral morphism to it) and a lattice backend (emits divisor
classes and numerical verdicts).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct
from typing import Optional

from .errors import (
    DegreeOrderViolation,
    InconsistentBranchData,
    NilpotentDatum,
    NotApplicable,
    RankCap,
    ZeroHiggsUnsupported,
)
from .geometry import NSClass, SurfaceModel, degree
from .matrix import identity_matrix, mat_scale
from .poly import Poly
from .spectral import (
    HiggsField,
    OneForm,
    RankOneFactorization,
    SpectralDatum,
    factor_rank_one,
    hitchin_map,
)


class Stability(enum.Enum):
    STABLE = "stable"
    POLYSTABLE = "polystable"
    NOT_STABLE = "not_stable"


# -- fixed points of the scaling action -----------------------------------------


def hodge_stability(d1: Fraction, d2: Fraction, alpha_nonzero: bool) -> Stability:
    """Stability of a Hodge bundle L1 + L2 with strictly triangular field."""
    if not alpha_nonzero:
        raise ZeroHiggsUnsupported("the fixed-point criterion assumes a nonzero field")
    return Stability.STABLE if Fraction(d1) > Fraction(d2) else Stability.NOT_STABLE


# -- real Higgs bundles -----------------------------------------------------------


@dataclass(frozen=True)
class SplitHiggsDescription:
    """A real rank-two shape L1 + L2 with field [[w, beta], [alpha, w]]."""

    L1: NSClass
    L2: NSClass
    model: SurfaceModel
    alpha_nonzero: bool
    beta_nonzero: bool
    alpha_beta_proportional: bool
    L1_iso_L2: bool
    omega_diag_nonzero: bool = False

    def __post_init__(self):
        if self.L1_iso_L2:
            d1 = degree(self.L1, self.model.omega, self.model)
            d2 = degree(self.L2, self.model.omega, self.model)
            if d1 != d2:
                raise ValueError("isomorphic summands must have equal degrees")
        if (not self.alpha_nonzero or not self.beta_nonzero) and not self.alpha_beta_proportional:
            raise ValueError("a vanishing entry is proportional to anything")


def real_stability(desc: SplitHiggsDescription, polarization: Optional[NSClass] = None) -> Stability:
    """Case analysis for real split shapes, ordered with deg L1 >= deg L2."""
    pol = polarization if polarization is not None else desc.model.omega
    d1 = degree(desc.L1, pol, desc.model)
    d2 = degree(desc.L2, pol, desc.model)
    if d1 < d2:
        raise DegreeOrderViolation("order the summands so that deg L1 >= deg L2")
    if d1 > d2:
        return Stability.STABLE if desc.alpha_nonzero else Stability.NOT_STABLE
    if not desc.L1_iso_L2:
        return (
            Stability.STABLE
            if (desc.alpha_nonzero and desc.beta_nonzero)
            else Stability.NOT_STABLE
        )
    return Stability.POLYSTABLE if desc.alpha_beta_proportional else Stability.STABLE


# -- the Hitchin section -----------------------------------------------------------


@dataclass(frozen=True)
class LatticeSectionDatum:
    """Lattice-level input: the twisting class L, the branch class D = 2L, s1 flag."""

    L: NSClass
    D: NSClass
    s1_nonzero: bool
    model: SurfaceModel

    def __post_init__(self):
        if self.D != self.L * 2:
            raise InconsistentBranchData("the branch class must equal 2 L")


@dataclass(frozen=True)
class HitchinSectionOutput:
    stability: Stability
    real: bool
    field: Optional[HiggsField] = None
    factorization: Optional[RankOneFactorization] = None
    branch: Optional[str] = None  # "generic" | "unit_branch" | "nilpotent_diagonal"
    E_classes: Optional[tuple] = None
    psl2r_condition: Optional[bool] = None
    sl2r_condition: Optional[bool] = None
    identity_checked: bool = False


def _section_field(s1: OneForm, f: RankOneFactorization) -> HiggsField:
    """B_i = [[s1_i / 2, -alpha_i tau], [alpha_i, s1_i / 2]]."""
    n = s1.dim
    half = Fraction(1, 2)
    mats = []
    for i in range(n):
        w = s1[i] * half
        mats.append(((w, -f.alpha[i] * f.tau), (f.alpha[i], w)))
    return HiggsField(tuple(mats))


def hitchin_section(d) -> HitchinSectionOutput:
    """Right inverse of the spectral morphism, on either backend.

    Chart backend (SpectralDatum): factor Q = s2 - s1 s1^T / 4 as tau alpha^2,
    emit the section field and assert the roundtrip identity exactly.  A
    datum with Q = 0 but s1 != 0 yields the diagonal field; the origin is
    rejected.  Lattice backend (LatticeSectionDatum): emit bundle classes and
    the stability / real-form verdicts.
    """
    if isinstance(d, SpectralDatum):
        return _hitchin_section_chart(d)
    if isinstance(d, LatticeSectionDatum):
        return _hitchin_section_lattice(d)
    raise TypeError("expected a SpectralDatum or a LatticeSectionDatum")


def _hitchin_section_chart(d: SpectralDatum) -> HitchinSectionOutput:
    q = d.quarter_defect()
    if q.is_zero():
        if d.s1.is_zero():
            raise NilpotentDatum("the section is undefined at (0, 0)")
        n = d.dim
        half = Fraction(1, 2)
        mats = tuple(
            mat_scale(identity_matrix(2, n), d.s1[i] * half) for i in range(n)
        )
        field = HiggsField(mats)
        if hitchin_map(field) != d:
            raise AssertionError("section identity failed on the diagonal branch")
        return HitchinSectionOutput(
            stability=Stability.POLYSTABLE,
            real=True,
            field=field,
            branch="nilpotent_diagonal",
            identity_checked=True,
        )
    f = factor_rank_one(q)
    field = _section_field(d.s1, f)
    if hitchin_map(field) != d:
        raise AssertionError("section identity sh(chi(s)) = s failed")
    unit_branch = f.tau.is_constant()
    return HitchinSectionOutput(
        stability=Stability.POLYSTABLE if unit_branch else Stability.STABLE,
        real=True,
        field=field,
        factorization=f,
        branch="unit_branch" if unit_branch else "generic",
        identity_checked=True,
    )


def _hitchin_section_lattice(d: LatticeSectionDatum) -> HitchinSectionOutput:
    model = d.model
    zero = NSClass.zero(model.rank)
    psl2r = degree(d.D, d.D, model) == 0
    sl2r = psl2r and d.L.divisible_by_two()
    return HitchinSectionOutput(
        stability=Stability.STABLE if not d.D.is_zero() else Stability.POLYSTABLE,
        real=True,
        E_classes=(zero, -d.L),
        psl2r_condition=psl2r,
        sl2r_condition=sl2r,
    )


def cstar_scale(d: SpectralDatum, t) -> SpectralDatum:
    """Base weights of the scaling action: (s1, s2) -> (t s1, t^2 s2)."""
    t = Fraction(t)
    return SpectralDatum(d.s1.scale(t), d.s2.scale(t * t))


# -- SL2(R) enumeration -------------------------------------------------------------


@dataclass(frozen=True)
class SL2RDatum:
    """A branch splitting D = D1 + D2 with square-rootable twisting class."""

    D1: NSClass
    D2: NSClass
    N_class: NSClass
    torsion_multiplicity: int
    tuple_a: tuple


def sl2r_enumerate(components, L: NSClass, model: SurfaceModel):
    """All splittings of the branch divisor passing the two numerical tests.

    components is [(NSClass, multiplicity), ...] with sum m_i c_i = 2 L.
    A tuple (a_i), 0 <= a_i <= m_i, is kept iff (D1 - D2)^2 = 0 and D1 - L is
    divisible by two in the lattice; torsion only multiplies the count.
    """
    components = [(c, int(m)) for c, m in components]
    total = NSClass.zero(model.rank)
    for c, m in components:
        if m < 0:
            raise InconsistentBranchData("multiplicities must be nonnegative")
        total = total + c * m
    if total != L * 2:
        raise InconsistentBranchData("component sum must equal 2 L")
    out = []
    for a in _iproduct(*[range(m + 1) for _, m in components]):
        D1 = NSClass.zero(model.rank)
        for (c, _), ai in zip(components, a):
            D1 = D1 + c * ai
        D2 = total - D1
        diff = D1 - D2
        if degree(diff, diff, model) != 0:
            continue
        half_datum = D1 - L
        if not half_datum.divisible_by_two():
            continue
        out.append(
            SL2RDatum(
                D1=D1,
                D2=D2,
                N_class=half_datum.half(),
                torsion_multiplicity=model.torsion2_count,
                tuple_a=tuple(a),
            )
        )
    return out


# -- Toledo / Milnor-Wood -------------------------------------------------------------


@dataclass(frozen=True)
class MilnorWoodReport:
    toledo: Fraction
    bound: Fraction
    holds: bool


def milnor_wood_check(
    W: NSClass, gamma: NSClass, model: SurfaceModel, K_pseff: bool
) -> MilnorWoodReport:
    """|deg_gamma W| <= deg_gamma(K)/2 for a declared non-uniruled model."""
    if not K_pseff:
        raise NotApplicable("the degree bound needs K pseudoeffective (non-uniruled)")
    toledo = degree(W, gamma, model)
    bound = degree(model.K, gamma, model) / 2
    return MilnorWoodReport(toledo, bound, abs(toledo) <= bound)


# -- rigidity ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TopologicalData:
    picard_number_one: bool
    b1: int
    double_cover_b1s: tuple = ()

    def __post_init__(self):
        if self.b1 < 0 or any(b < 0 for b in self.double_cover_b1s):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "double_cover_b1s", tuple(self.double_cover_b1s))


@dataclass(frozen=True)
class RigidityVerdict:
    status: str  # "rigid" | "not_rigid" | "undecided"
    reason: Optional[str] = None


def rigidity_verdict(t: TopologicalData) -> RigidityVerdict:
    """Rigidity of the rank-two character variety from declared topology.

    b1 != 0 obstructs rigidity unconditionally.  With b1 = 0 the full
    if-and-only-if needs Picard number one: rigid exactly when every declared
    unramified double cover also has b1 = 0; without that hypothesis the
    verdict is undecided.
    """
    if t.b1 != 0:
        return RigidityVerdict("not_rigid", f"b1 = {t.b1} != 0")
    if not t.picard_number_one:
        return RigidityVerdict("undecided", "criterion needs Picard number one when b1 = 0")
    bad = [i for i, b in enumerate(t.double_cover_b1s) if b != 0]
    if bad:
        return RigidityVerdict(
            "not_rigid", f"double cover {bad[0]} has b1 = {t.double_cover_b1s[bad[0]]}"
        )
    return RigidityVerdict("rigid", None)


# -- higher-rank companion fields ----------------------------------------------------


MAX_COMPANION_RANK = 5


def higher_rank_build(n: int, coeffs):
    """Companion-shaped field: first row (0, c2, ..., cn), ones on the subdiagonal."""
    if not 2 <= n <= MAX_COMPANION_RANK:
        raise RankCap(f"rank {n} outside 2..{MAX_COMPANION_RANK}")
    coeffs = tuple(coeffs)
    if len(coeffs) != n - 1:
        raise ValueError(f"expected {n - 1} coefficients c2..c{n}")
    nvars = coeffs[0].nvars
    if any(c.nvars != nvars for c in coeffs):
        raise ValueError("coefficients must share nvars")
    z = Poly.zero(nvars)
    one = Poly.one(nvars)
    rows = [tuple([z] + list(coeffs))]
    for i in range(1, n):
        rows.append(tuple(one if j == i - 1 else z for j in range(n)))
    return tuple(rows)


def companion_charpoly_expected(n: int, coeffs, nvars: int) -> Poly:
    """lambda^n - sum_i c_i lambda^(n-i), in nvars+1 variables (lambda last).

    The sign convention is frozen from the cofactor-expansion oracle at
    n = 2, 3 and recorded in data/charpoly_convention.json.
    """
    lam = Poly.variable(nvars + 1, nvars)
    acc = lam**n
    for i, c in enumerate(coeffs, start=2):
        acc = acc - c.lift() * lam ** (n - i)
    return acc


def higher_rank_charcheck(rows) -> bool:
    """Cofactor charpoly of a companion-shaped field reproduces its first row."""
    from .matrix import charpoly_cofactor

    n = len(rows)
    coeffs = rows[0][1:]
    nvars = rows[0][0].nvars
    return charpoly_cofactor(rows) == companion_charpoly_expected(n, coeffs, nvars)
