"""Rank-one symmetric differentials, spectral covers and the correspondence.

Everything is computed in a polynomial chart: a degree-two symmetric
differential is a symmetric matrix of polynomials, a Higgs field is a tuple
of coefficient matrices, and the double cover attached to a factorization
s = tau * alpha alpha^T is tracked through its branch decomposition.  The
global rank test (all 2x2 minors identically zero) agrees with the pointwise
rank condition because the coefficient field is infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _iproduct
from typing import Optional

from .errors import (
    CayleyHamiltonViolation,
    InconsistentBranchData,
    DegreeCapExceeded,
    FactorizationInconsistent,
    FactorizationMismatch,
    NotRankOne,
    RankUnsupported,
    ZeroInput,
    ZeroPolynomial,
)
from .matrix import (
    as_matrix,
    commutator,
    identity_matrix,
    mat_eq,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_trace,
    zero_matrix,
)
from .poly import (
    Poly,
    SquarefreeDecomposition,
    exact_div,
    is_squarefree,
    poly_gcd,
    poly_gcd_many,
    squarefree_decompose,
)

MAX_CHART_DIM = 4


def _check_chart_dim(n):
    if not 1 <= n <= MAX_CHART_DIM:
        raise DegreeCapExceeded(f"chart dimension {n} outside 1..{MAX_CHART_DIM}")


# -- chart types --------------------------------------------------------------


class OneForm:
    """A 1-form in chart coordinates: one Poly coefficient per dz_i."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        n = len(entries)
        _check_chart_dim(n)
        for p in entries:
            if not isinstance(p, Poly) or p.nvars != n:
                raise ValueError("OneForm entries must be Poly in n variables")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("OneForm is immutable")

    @property
    def dim(self):
        return len(self.entries)

    def is_zero(self):
        return all(p.is_zero() for p in self.entries)

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self):
        return "OneForm(" + ", ".join(p.to_text() for p in self.entries) + ")"

    def scale(self, c):
        return OneForm(tuple(p * c for p in self.entries))

    @classmethod
    def zero(cls, n):
        return cls(tuple(Poly.zero(n) for _ in range(n)))

    def to_tree(self):
        return [p.to_tree() for p in self.entries]

    @classmethod
    def from_tree(cls, tree):
        return cls(tuple(Poly.from_tree(t) for t in tree))


class SymDiff:
    """A degree-two symmetric differential as q(z) = z^T S z."""

    __slots__ = ("S",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        _check_chart_dim(n)
        for row in rows:
            if len(row) != n:
                raise ValueError("SymDiff matrix must be square")
            for p in row:
                if not isinstance(p, Poly) or p.nvars != n:
                    raise ValueError("SymDiff entries must be Poly in n variables")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"SymDiff not symmetric at ({i},{j})")
        object.__setattr__(self, "S", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SymDiff is immutable")

    @property
    def dim(self):
        return len(self.S)

    def is_zero(self):
        return all(p.is_zero() for row in self.S for p in row)

    def __eq__(self, other):
        return isinstance(other, SymDiff) and self.S == other.S

    def __hash__(self):
        return hash(self.S)

    def __getitem__(self, i):
        return self.S[i]

    def __repr__(self):
        return "SymDiff(" + "; ".join(", ".join(p.to_text() for p in r) for r in self.S) + ")"

    def add(self, other):
        return SymDiff(tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.S, other.S)))

    def sub(self, other):
        return SymDiff(tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.S, other.S)))

    def scale(self, c):
        return SymDiff(tuple(tuple(p * c for p in row) for row in self.S))

    @classmethod
    def zero(cls, n):
        z = Poly.zero(n)
        return cls(tuple((z,) * n for _ in range(n)))

    @classmethod
    def outer(cls, a: OneForm, b: OneForm):
        """Symmetrised outer product: entries (a_i b_j + a_j b_i) / 2."""
        n = a.dim
        half = Fraction(1, 2)
        rows = tuple(
            tuple((a[i] * b[j] + a[j] * b[i]) * half for j in range(n)) for i in range(n)
        )
        return cls(rows)

    def to_tree(self):
        return [[p.to_tree() for p in row] for row in self.S]

    @classmethod
    def from_tree(cls, tree):
        return cls(tuple(tuple(Poly.from_tree(t) for t in row) for row in tree))


@dataclass(frozen=True)
class SpectralDatum:
    """A point (s1, s2) of the Hitchin base in chart coordinates."""

    s1: OneForm
    s2: SymDiff

    def __post_init__(self):
        if self.s1.dim != self.s2.dim:
            raise ValueError("s1 and s2 must share the chart dimension")

    @property
    def dim(self):
        return self.s1.dim

    def quarter_defect(self) -> SymDiff:
        """s2 - (1/4) s1 s1^T, the symmetric differential tested for rank one."""
        return self.s2.sub(SymDiff.outer(self.s1, self.s1).scale(Fraction(1, 4)))

    def to_tree(self):
        return {"s1": self.s1.to_tree(), "s2": self.s2.to_tree()}

    @classmethod
    def from_tree(cls, tree):
        return cls(OneForm.from_tree(tree["s1"]), SymDiff.from_tree(tree["s2"]))


@dataclass(frozen=True)
class RankOneFactorization:
    """s = tau * alpha alpha^T with alpha primitive.

    alpha has polynomial gcd one across its entries (no divisorial zeros),
    rational content one, and a positive leading coefficient in its first
    nonzero entry; tau absorbs all scalars.
    """

    alpha: OneForm
    tau: Poly
    ell_degree_data: Optional[dict] = None

    def __post_init__(self):
        if self.alpha.is_zero():
            raise ZeroInput("alpha must be nonzero")
        if self.tau.nvars != self.alpha.dim:
            raise ValueError("tau must live in the chart ring of alpha")

    @property
    def dim(self):
        return self.alpha.dim

    def symdiff(self) -> SymDiff:
        n = self.dim
        rows = tuple(
            tuple(self.tau * self.alpha[i] * self.alpha[j] for j in range(n))
            for i in range(n)
        )
        return SymDiff(rows)

    def to_tree(self):
        return {"alpha": self.alpha.to_tree(), "tau": self.tau.to_tree()}

    @classmethod
    def from_tree(cls, tree):
        return cls(OneForm.from_tree(tree["alpha"]), Poly.from_tree(tree["tau"]))


@dataclass(frozen=True)
class HiggsField:
    """phi = sum_i B_i dz_i with r x r polynomial coefficient matrices."""

    matrices: tuple

    def __post_init__(self):
        mats = tuple(as_matrix(m) for m in self.matrices)
        n = len(mats)
        _check_chart_dim(n)
        r = len(mats[0])
        nvars = mats[0][0][0].nvars
        if nvars != n:
            raise ValueError("number of matrices must equal the chart dimension")
        for m in mats:
            if len(m) != r or m[0][0].nvars != nvars:
                raise ValueError("all coefficient matrices must share size and nvars")
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self):
        return len(self.matrices)

    @property
    def rank(self):
        return len(self.matrices[0])

    def is_zero(self):
        return all(p.is_zero() for m in self.matrices for row in m for p in row)

    def to_tree(self):
        return {
            "rank": self.rank,
            "matrices": [[[p.to_tree() for p in row] for row in m] for m in self.matrices],
        }

    @classmethod
    def from_tree(cls, tree):
        return cls(
            tuple(
                tuple(tuple(Poly.from_tree(p) for p in row) for row in m)
                for m in tree["matrices"]
            )
        )


# -- rank tests ----------------------------------------------------------------


def _minor2(S, i, j, k, l):
    return S[i][k] * S[j][l] - S[i][l] * S[j][k]


def first_nonzero_minor(S: SymDiff):
    """First (grlex-ordered indices) nonvanishing 2x2 minor, or None."""
    n = S.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    m = _minor2(S.S, i, j, k, l)
                    if not m.is_zero():
                        return (i, j, k, l), m
    return None


def rank_le_one(S: SymDiff) -> bool:
    """True iff every 2x2 minor vanishes identically."""
    return first_nonzero_minor(S) is None


def rank_at(S: SymDiff, point) -> int:
    """Rank of the numeric matrix S(p) by exact Gaussian elimination."""
    n = S.dim
    rows = [[S[i][j].evaluate(point) for j in range(n)] for i in range(n)]
    rank = 0
    col = 0
    row = 0
    while row < n and col < n:
        pivot = next((r for r in range(row, n) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        pv = rows[row][col]
        for r in range(row + 1, n):
            if rows[r][col]:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        rank += 1
        row += 1
        col += 1
    return rank


# -- the rank-one factorization -------------------------------------------------


def _normalize_covector(entries):
    """Divide out the entry gcd and rational content; fix the sign.

    Returns the primitive covector: polynomial gcd of entries is one, the
    coefficient content across all entries is one, and the first nonzero
    entry has a positive leading coefficient.
    """
    nonzero = [p for p in entries if not p.is_zero()]
    if not nonzero:
        raise ZeroInput("cannot normalize the zero covector")
    g = poly_gcd_many(nonzero)
    entries = tuple(exact_div(p, g) for p in entries)
    lead = next(p for p in entries if not p.is_zero())
    if lead.leading_coefficient() < 0:
        entries = tuple(-p for p in entries)
    return entries


def factor_rank_one(S: SymDiff) -> RankOneFactorization:
    """Factor a nonzero rank-at-most-one symmetric differential as tau * alpha alpha^T."""
    if S.is_zero():
        raise ZeroInput("cannot factor the zero differential")
    witness = first_nonzero_minor(S)
    if witness is not None:
        raise NotRankOne(*witness)
    n = S.dim
    i0 = next(i for i in range(n) if not S[i][i].is_zero())
    alpha = _normalize_covector(tuple(S[i0][j] for j in range(n)))
    try:
        tau = exact_div(S[i0][i0], alpha[i0] * alpha[i0])
    except Exception as exc:
        raise FactorizationInconsistent(f"tau division failed: {exc}") from exc
    f = RankOneFactorization(OneForm(alpha), tau)
    if f.symdiff() != S:
        raise FactorizationInconsistent("S != tau * alpha alpha^T after construction")
    return f


# -- spectral base membership ----------------------------------------------------


class SpectralBaseVerdict:
    """Base class of the three-way spectral-base membership verdict."""

    kind = None


@dataclass(frozen=True)
class Nilpotent(SpectralBaseVerdict):
    kind = "nilpotent"


@dataclass(frozen=True)
class Member(SpectralBaseVerdict):
    kind = "member"
    factorization: RankOneFactorization = None


@dataclass(frozen=True)
class NotMember(SpectralBaseVerdict):
    kind = "not_member"
    indices: tuple = None
    minor: Poly = None


def spectral_base_check(d: SpectralDatum) -> SpectralBaseVerdict:
    """Membership of (s1, s2) in the spectral base.

    Computes Q = s2 - (1/4) s1 s1^T.  Q identically zero is the nilpotent
    locus; otherwise membership holds iff Q has rank at most one, and the
    failure witness is a nonvanishing minor of 4 s2 - s1 s1^T.
    """
    q = d.quarter_defect()
    if q.is_zero():
        return Nilpotent()
    witness = first_nonzero_minor(q)
    if witness is None:
        return Member(factor_rank_one(q))
    scaled = d.s2.scale(4).sub(SymDiff.outer(d.s1, d.s1))
    (i, j, k, l), _ = witness
    return NotMember((i, j, k, l), _minor2(scaled.S, i, j, k, l))


# -- Higgs fields ----------------------------------------------------------------


def higgs_integrable(phi: HiggsField) -> bool:
    """phi wedge phi = 0, i.e. [B_i, B_j] = 0 for all pairs."""
    mats = phi.matrices
    n = len(mats)
    z = zero_matrix(phi.rank, mats[0][0][0].nvars)
    for i in range(n):
        for j in range(i + 1, n):
            if not mat_eq(commutator(mats[i], mats[j]), z):
                return False
    return True


def hitchin_map(phi: HiggsField) -> SpectralDatum:
    """(tr phi, det phi) of a rank-two field, det expanded as a quadratic form.

    With phi = sum B_i dz_i the determinant is the quadratic form with matrix
    S[i][j] = (tr B_i tr B_j - tr(B_i B_j)) / 2, whose diagonal is det B_i.
    """
    if phi.rank != 2:
        raise RankUnsupported(f"hitchin_map needs rank 2, got {phi.rank}")
    mats = phi.matrices
    n = len(mats)
    nvars = mats[0][0][0].nvars
    traces = [mat_trace(m) for m in mats]
    s1 = OneForm(tuple(traces))
    half = Fraction(1, 2)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append((traces[i] * traces[j] - mat_trace(mat_mul(mats[i], mats[j]))) * half)
        rows.append(tuple(row))
    return SpectralDatum(s1, SymDiff(tuple(rows)))


def twisted_factor(phi: HiggsField, f: RankOneFactorization):
    """Divide the twist out of a rank-two field: B_i = alpha_i Phi0 + (tr B_i / 2) Id.

    Phi0 is found by exact division on one nonzero alpha_i and verified
    against every i; Phi0^2 = -tau * Id is asserted before returning.
    """
    if phi.rank != 2:
        raise RankUnsupported(f"twisted_factor needs rank 2, got {phi.rank}")
    if phi.dim != f.dim:
        raise FactorizationMismatch("chart dimensions disagree")
    n = phi.dim
    nvars = n
    traceless = []
    half = Fraction(1, 2)
    for m in phi.matrices:
        t = mat_trace(m) * half
        traceless.append(mat_sub(m, mat_scale(identity_matrix(2, nvars), t)))
    i0 = next((i for i in range(n) if not f.alpha[i].is_zero()), None)
    try:
        phi0 = tuple(
            tuple(exact_div(p, f.alpha[i0]) for p in row) for row in traceless[i0]
        )
    except Exception as exc:
        raise FactorizationMismatch(f"division by alpha_{i0 + 1} failed: {exc}") from exc
    for i in range(n):
        expected = mat_scale(phi0, f.alpha[i])
        if not mat_eq(expected, traceless[i]):
            raise FactorizationMismatch(f"component {i + 1} is not alpha_i * Phi0")
    ch = mat_mul(phi0, phi0)
    if not mat_eq(ch, mat_scale(identity_matrix(2, nvars), -f.tau)):
        raise FactorizationMismatch("Phi0^2 != -tau * Id")
    return phi0


# -- spectral covers and the tower ------------------------------------------------


@dataclass(frozen=True)
class SpectralCover:
    """The double cover eta^2 + effective_tau = 0 inside tot(L_a).

    branch records tau = content * prod f_i^{m_i}; tuple_a selects the
    intermediate Cohen-Macaulayfication, with effective exponent m_i - 2 a_i
    on each branch component.
    """

    factorization: RankOneFactorization
    branch: SquarefreeDecomposition
    tuple_a: tuple
    effective_tau: Poly

    def __post_init__(self):
        ms = self.branch.multiplicities()
        if len(self.tuple_a) != len(ms):
            raise ValueError("tuple_a length must match the branch component count")
        for a, m in zip(self.tuple_a, ms):
            if not 0 <= a <= m // 2:
                raise ValueError(f"tuple entry {a} outside 0..floor({m}/2)")

    @property
    def is_top(self):
        """True when this is the base cover (a = 0, effective tau = tau)."""
        return all(a == 0 for a in self.tuple_a)

    def effective_multiplicities(self):
        return tuple(m - 2 * a for (_, m), a in zip(self.branch.factors, self.tuple_a))

    def splits_over_base(self):
        """For an etale cover (constant tau): is -tau a rational square?

        Field-dependent bookkeeping only; over an algebraically closed field
        a branchless double cover always splits.
        """
        if self.branch.factors:
            return None
        t = -self.effective_tau.constant_value()
        if t < 0:
            return False
        num, den = t.numerator, t.denominator
        return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den

    def to_tree(self):
        return {
            "factorization": self.factorization.to_tree(),
            "content": {
                "num": self.branch.content.numerator,
                "den": self.branch.content.denominator,
            },
            "components": [
                {"factor": f.to_tree(), "multiplicity": m} for f, m in self.branch.factors
            ],
            "tuple_a": list(self.tuple_a),
            "effective_tau": self.effective_tau.to_tree(),
        }


def _effective_tau(branch: SquarefreeDecomposition, tuple_a, nvars) -> Poly:
    out = Poly.constant(nvars, branch.content)
    for (f, m), a in zip(branch.factors, tuple_a):
        out = out * f ** (m - 2 * a)
    return out


def build_cover(f: RankOneFactorization, components=None) -> SpectralCover:
    """The base Cohen-Macaulayfication: a = 0, branch = squarefree data of tau.

    ``components`` optionally declares a finer coprime factorization
    [(factor, multiplicity), ...]; it must reproduce tau exactly up to a
    rational content.
    """
    if f.tau.is_zero():
        raise ZeroPolynomial("tau must be nonzero to define a double cover")
    if components is None:
        branch = squarefree_decompose(f.tau)
    else:
        branch = _declared_branch(f.tau, components)
    a = (0,) * len(branch.factors)
    return SpectralCover(f, branch, a, _effective_tau(branch, a, f.tau.nvars))


def _declared_branch(tau: Poly, components) -> SquarefreeDecomposition:
    norm = []
    for fct, m in components:
        if m < 1:
            raise InconsistentBranchData("multiplicities must be positive")
        _, prim = fct.primitive()
        if prim.is_constant():
            raise InconsistentBranchData("declared components must be nonconstant")
        if not is_squarefree(prim):
            raise InconsistentBranchData(f"declared component {prim.to_text()} is not squarefree")
        norm.append((prim, int(m)))
    for i in range(len(norm)):
        for j in range(i + 1, len(norm)):
            if not poly_gcd(norm[i][0], norm[j][0]).is_constant():
                raise InconsistentBranchData("declared components are not pairwise coprime")
    prod = Poly.one(tau.nvars)
    for fct, m in norm:
        prod = prod * fct**m
    try:
        content = exact_div(tau, prod)
    except Exception as exc:
        raise InconsistentBranchData(f"declared components do not divide tau: {exc}") from exc
    if not content.is_constant():
        raise InconsistentBranchData("declared components miss a nonconstant factor of tau")
    return SquarefreeDecomposition(content.constant_value(), norm)


@dataclass(frozen=True)
class TowerResult:
    """All intermediate covers, covering-relation edges, and the normalization."""

    covers: tuple
    edges: tuple
    normalization_index: int


def tower_enumerate(c: SpectralCover) -> TowerResult:
    """Every tuple 0 <= a_i <= floor(m_i / 2), with covering-relation edges.

    The count is prod(floor(m_i/2) + 1); the maximal tuple is flagged as the
    normalization (its effective tau is squarefree).
    """
    ms = c.branch.multiplicities()
    nvars = c.factorization.tau.nvars
    ranges = [range(m // 2 + 1) for m in ms]
    tuples = list(_iproduct(*ranges)) if ms else [()]
    index = {t: i for i, t in enumerate(tuples)}
    covers = tuple(
        SpectralCover(c.factorization, c.branch, t, _effective_tau(c.branch, t, nvars))
        for t in tuples
    )
    edges = []
    for t in tuples:
        for i in range(len(ms)):
            if t[i] + 1 <= ms[i] // 2:
                up = t[:i] + (t[i] + 1,) + t[i + 1 :]
                edges.append((index[t], index[up]))
    maximal = tuple(m // 2 for m in ms)
    return TowerResult(covers, tuple(edges), index[maximal])


def is_normal(c: SpectralCover) -> bool:
    """Serre-criterion surrogate: the cover is normal iff effective tau is squarefree."""
    if c.effective_tau.is_constant():
        return True
    return is_squarefree(c.effective_tau)


# -- modules on covers and the correspondence --------------------------------------


@dataclass(frozen=True)
class CoverModule:
    """A free rank-one module on a cover, presented by the eta-action matrix."""

    cover: SpectralCover
    eta_action: tuple

    def __post_init__(self):
        mat = as_matrix(self.eta_action)
        if len(mat) != 2:
            raise ValueError("eta action must be 2x2")
        nvars = self.cover.factorization.tau.nvars
        if mat[0][0].nvars != nvars:
            raise ValueError("eta action must live in the chart ring")
        sq = mat_mul(mat, mat)
        want = mat_scale(identity_matrix(2, nvars), -self.cover.effective_tau)
        if not mat_eq(sq, want):
            raise CayleyHamiltonViolation("Phi^2 != -effective_tau * Id")
        object.__setattr__(self, "eta_action", mat)


def canonical_module(c: SpectralCover) -> CoverModule:
    """The structure sheaf: eta acts on the basis {1, eta} by [[0, -tau], [1, 0]]."""
    nvars = c.factorization.tau.nvars
    z = Poly.zero(nvars)
    phi = ((z, -c.effective_tau), (Poly.one(nvars), z))
    return CoverModule(c, phi)


def pushforward(m: CoverModule, f: RankOneFactorization) -> HiggsField:
    """Push a cover module down: B_i = alpha_i * Phi."""
    phi = m.eta_action
    return HiggsField(tuple(mat_scale(phi, f.alpha[i]) for i in range(f.dim)))


def module_from_higgs(phi: HiggsField, f: RankOneFactorization) -> CoverModule:
    """Inverse direction of the correspondence for trace-free fields.

    Requires tr(phi) = 0 and det(phi) = tau * alpha alpha^T for the supplied
    factorization; eta acts by the twisted factor of phi.
    """
    nvars = phi.dim
    for m in phi.matrices:
        if not mat_trace(m).is_zero():
            raise FactorizationMismatch("module_from_higgs requires a trace-free field")
    phi0 = twisted_factor(phi, f)
    sq = mat_mul(phi0, phi0)
    if not mat_eq(sq, mat_scale(identity_matrix(2, nvars), -f.tau)):
        raise CayleyHamiltonViolation("eta action does not satisfy eta^2 = -tau")
    return CoverModule(build_cover(f), phi0)


# -- annihilator of a rank-one differential -----------------------------------------


def annihilator_distribution(alpha: OneForm):
    """Koszul generators of the annihilator: v_ij = alpha_j e_i - alpha_i e_j (i < j)."""
    if alpha.is_zero():
        raise ZeroInput("annihilator of the zero form")
    n = alpha.dim
    nvars = n
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [Poly.zero(nvars)] * n
            v[i] = alpha[j]
            v[j] = -alpha[i]
            gens.append(tuple(v))
    return gens

