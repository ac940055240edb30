"""Divisor-class arithmetic on a declared Neron-Severi lattice.

A surface is presented by named generators, a symmetric integer intersection
matrix, a canonical class and a polarization.  Coordinates are rational so
half-classes (square roots of declared line bundles) are representable;
honest divisibility by two is checked where a square root is required.
Torsion is never modelled structurally: only the declared count of order-two
elements enters, as a multiplicity on enumeration results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SpecialDivisorUndecidable


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not supported")
    return Fraction(x)


@dataclass(frozen=True)
class NSClass:
    """A divisor class: a coordinate vector over the lattice generators."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in coords))

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @property
    def dim(self):
        return len(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def divisible_by_two(self):
        return all(c.denominator == 1 and c.numerator % 2 == 0 for c in self.coords)

    def __add__(self, other):
        self._check(other)
        return NSClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return NSClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c):
        return NSClass(tuple(a * _frac(c) for a in self.coords))

    __rmul__ = __mul__

    def __neg__(self):
        return NSClass(tuple(-a for a in self.coords))

    def half(self):
        return NSClass(tuple(a / 2 for a in self.coords))

    def _check(self, other):
        if not isinstance(other, NSClass) or other.dim != self.dim:
            raise DimensionMismatch(f"class dimensions disagree: {self} vs {other}")

    def to_tree(self):
        return [{"num": c.numerator, "den": c.denominator} for c in self.coords]

    @classmethod
    def from_tree(cls, tree):
        return cls(tuple(Fraction(t["num"], t["den"]) for t in tree))


@dataclass(frozen=True)
class SurfaceModel:
    """A projective surface presented by its declared intersection lattice."""

    generators: tuple
    Q: tuple
    K: NSClass
    omega: NSClass
    b1: int = 0
    torsion2_count: int = 1

    def __post_init__(self):
        n = len(self.generators)
        Q = tuple(tuple(int(x) for x in row) for row in self.Q)
        if len(Q) != n or any(len(r) != n for r in Q):
            raise DimensionMismatch("intersection matrix must match generator count")
        for i in range(n):
            for j in range(n):
                if Q[i][j] != Q[j][i]:
                    raise ValueError("intersection matrix must be symmetric")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.K.dim != n or self.omega.dim != n:
            raise DimensionMismatch("K and omega must live in the declared lattice")
        if self.b1 < 0 or self.torsion2_count < 0:
            raise ValueError("b1 and torsion2_count must be nonnegative")
        if self.pair(self.omega, self.omega) <= 0:
            raise ValueError("declared polarization must have positive self-intersection")

    @property
    def rank(self):
        return len(self.generators)

    def pair(self, x: NSClass, y: NSClass) -> Fraction:
        if x.dim != self.rank or y.dim != self.rank:
            raise DimensionMismatch("classes do not live in this lattice")
        total = Fraction(0)
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            row = self.Q[i]
            for j, yj in enumerate(y.coords):
                if yj:
                    total += xi * row[j] * yj
        return total

    def basis(self, i):
        return NSClass(tuple(1 if j == i else 0 for j in range(self.rank)))


def degree(L: NSClass, against: NSClass, model: SurfaceModel) -> Fraction:
    """Intersection number L . against in the declared lattice."""
    return model.pair(L, against)


# -- products of curves -------------------------------------------------------


@dataclass(frozen=True)
class ProductOfCurves:
    """C1 x C2 with fiber classes F1, F2: F1.F2 = 1, F1^2 = F2^2 = 0."""

    g1: int
    g2: int

    def __post_init__(self):
        if self.g1 < 0 or self.g2 < 0:
            raise ValueError("genera must be nonnegative")

    @property
    def model(self) -> SurfaceModel:
        return SurfaceModel(
            generators=("F1", "F2"),
            Q=((0, 1), (1, 0)),
            K=NSClass((2 * self.g1 - 2, 2 * self.g2 - 2)),
            omega=NSClass((1, 1)),
            b1=2 * self.g1 + 2 * self.g2,
            torsion2_count=2 ** (2 * self.g1 + 2 * self.g2),
        )

    @property
    def F1(self):
        return NSClass((1, 0))

    @property
    def F2(self):
        return NSClass((0, 1))


# -- h^0 on curves -------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPower:
    """omega_C^m on a curve."""

    m: int


@dataclass(frozen=True)
class GenericDegree:
    """A generic line bundle of degree d; h^0 declared for the special range."""

    d: int
    declared_h0: int | None = None


def h0_curve(g: int, bundle) -> int:
    """h^0 of a canonical power or a generic divisor on a genus-g curve."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if isinstance(bundle, CanonicalPower):
        m = bundle.m
        if m < 0:
            raise ValueError("canonical powers need m >= 0")
        if m == 0:
            return 1
        if g == 0:
            return 0
        if g == 1:
            return 1
        return g if m == 1 else (2 * m - 1) * (g - 1)
    if isinstance(bundle, GenericDegree):
        d = bundle.d
        if d > 2 * g - 2:
            return d - g + 1
        if d < 0:
            return 0
        if d == 0:
            return 0
        if bundle.declared_h0 is not None:
            return bundle.declared_h0
        raise SpecialDivisorUndecidable(
            f"degree {d} on genus {g} is special; declare h^0 explicitly"
        )
    raise TypeError("bundle must be CanonicalPower or GenericDegree")


# -- structure of the rank-one locus over a product of curves -------------------


@dataclass(frozen=True)
class BxComponent:
    """One component of the rank-one locus: a Veronese cone or a linear space."""

    label: str
    line_class: NSClass
    kind: str  # "V", "L" or "both"
    dim: int
    h0_omega_twist: int
    h0_Lsq: int

    def __post_init__(self):
        if self.kind not in ("V", "L", "both"):
            raise ValueError("kind must be V, L or both")
        if self.kind in ("V", "both") and self.h0_Lsq != 1:
            raise ValueError("V-type components have h0(L^2) = 1")
        if self.kind in ("L", "both") and self.h0_omega_twist != 1:
            raise ValueError("L-type components have h0(Omega x L^-1) = 1")
        if self.kind == "both" and self.dim != 1:
            raise ValueError("components of both types are one dimensional")


@dataclass(frozen=True)
class BxTable:
    components: tuple
    intersections: tuple  # ((label_i, label_j), dim)
    swapped: bool = False


def bx_decomposition(X: ProductOfCurves) -> BxTable:
    """Component table of the rank-one locus on a product of two curves.

    Components are indexed by the trivial bundle and the two pulled-back
    canonical bundles; low genera degenerate as usual (components merge,
    disappear, or become both Veronese and linear).
    """
    g1, g2 = X.g1, X.g2
    swapped = g1 < g2
    if swapped:
        g1, g2 = g2, g1
    # line classes in the (swapped) convention: L_i = (2 g_i - 2) F_i
    L1 = NSClass((2 * g1 - 2, 0))
    L2 = NSClass((0, 2 * g2 - 2))
    O = NSClass((0, 0))

    comps = []
    inters = []
    if (g1, g2) == (0, 0):
        return BxTable((), (), swapped)
    if g2 == 0:
        if g1 == 1:
            comps.append(BxComponent("O", O, "both", 1, 1, 1))
        else:
            comps.append(BxComponent("L1", L1, "L", 3 * g1 - 3, 1, 3 * g1 - 3))
        return BxTable(tuple(comps), (), swapped)
    if (g1, g2) == (1, 1):
        comps.append(BxComponent("O", O, "V", 2, 2, 1))
        return BxTable(tuple(comps), (), swapped)
    if g2 == 1:
        comps.append(BxComponent("O", O, "V", g1 + 1, g1 + 1, 1))
        comps.append(BxComponent("L1", L1, "L", 3 * g1 - 3, 1, 3 * g1 - 3))
        inters.append((("O", "L1"), h0_curve(g1, CanonicalPower(1))))
        return BxTable(tuple(comps), tuple(inters), swapped)
    comps.append(BxComponent("O", O, "V", g1 + g2, g1 + g2, 1))
    comps.append(BxComponent("L1", L1, "L", 3 * g1 - 3, 1, 3 * g1 - 3))
    comps.append(BxComponent("L2", L2, "L", 3 * g2 - 3, 1, 3 * g2 - 3))
    inters.append((("O", "L1"), h0_curve(g1, CanonicalPower(1))))
    inters.append((("O", "L2"), h0_curve(g2, CanonicalPower(1))))
    inters.append((("L1", "L2"), 0))
    return BxTable(tuple(comps), tuple(inters), swapped)


# -- double-cover push-forward ---------------------------------------------------


@dataclass(frozen=True)
class CoverMap:
    """Declared numerical data of a double covering pi: X' -> X.

    P pushes cover classes to the base, `pullback` pulls base classes up;
    the projection formula (P x) . y = x .' (pullback y) is validated on the
    generator basis at construction.  L_class is the covering datum (half the
    branch class).
    """

    P: tuple
    cover_Q: tuple
    pullback: tuple
    L_class: NSClass
    base: SurfaceModel

    def __post_init__(self):
        nb = self.base.rank
        P = tuple(tuple(int(x) for x in row) for row in self.P)
        nc = len(P[0]) if P else 0
        if len(P) != nb or any(len(r) != nc for r in P):
            raise DimensionMismatch("P must be (base rank) x (cover rank)")
        cQ = tuple(tuple(int(x) for x in row) for row in self.cover_Q)
        if len(cQ) != nc or any(len(r) != nc for r in cQ):
            raise DimensionMismatch("cover intersection matrix has the wrong size")
        for i in range(nc):
            for j in range(nc):
                if cQ[i][j] != cQ[j][i]:
                    raise ValueError("cover intersection matrix must be symmetric")
        pb = tuple(tuple(int(x) for x in row) for row in self.pullback)
        if len(pb) != nc or any(len(r) != nb for r in pb):
            raise DimensionMismatch("pullback must be (cover rank) x (base rank)")
        if self.L_class.dim != nb:
            raise DimensionMismatch("L_class must live in the base lattice")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "cover_Q", cQ)
        object.__setattr__(self, "pullback", pb)
        for x in range(nc):
            for y in range(nb):
                lhs = self.base.pair(self.push(self._cover_basis(x)), self.base.basis(y))
                rhs = self.cover_pair(self._cover_basis(x), self.pull(self.base.basis(y)))
                if lhs != rhs:
                    raise ValueError(
                        f"projection formula fails on cover basis {x}, base basis {y}"
                    )

    @property
    def cover_rank(self):
        return len(self.cover_Q)

    def _cover_basis(self, i):
        return NSClass(tuple(1 if j == i else 0 for j in range(self.cover_rank)))

    def push(self, x: NSClass) -> NSClass:
        if x.dim != self.cover_rank:
            raise DimensionMismatch("pushforward expects a cover class")
        return NSClass(
            tuple(sum(Fraction(self.P[i][j]) * x.coords[j] for j in range(self.cover_rank)) for i in range(len(self.P)))
        )

    def pull(self, y: NSClass) -> NSClass:
        if y.dim != self.base.rank:
            raise DimensionMismatch("pullback expects a base class")
        return NSClass(
            tuple(sum(Fraction(self.pullback[i][j]) * y.coords[j] for j in range(self.base.rank)) for i in range(self.cover_rank))
        )

    def cover_pair(self, x: NSClass, y: NSClass) -> Fraction:
        if x.dim != self.cover_rank or y.dim != self.cover_rank:
            raise DimensionMismatch("classes do not live on the cover")
        total = Fraction(0)
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            for j, yj in enumerate(y.coords):
                if yj:
                    total += xi * self.cover_Q[i][j] * yj
        return total


def pushforward_c1(M_c1: NSClass, cover: CoverMap) -> NSClass:
    """c1 of the pushed-forward rank-two bundle: P . m - L."""
    return cover.push(M_c1) - cover.L_class


def pushforward_c2(M_c1: NSClass, cover: CoverMap) -> Fraction:
    """c2 of the push-forward: ((P m)^2 - m.m - (P m).L) / 2 on a surface."""
    pm = cover.push(M_c1)
    base = cover.base
    return (
        base.pair(pm, pm) - cover.cover_pair(M_c1, M_c1) - base.pair(pm, cover.L_class)
    ) / 2


def discriminant(c1: NSClass, c2: Fraction, model: SurfaceModel) -> Fraction:
    """4 c2 - c1^2; invariant under twisting by line bundles."""
    return 4 * Fraction(c2) - model.pair(c1, c1)
