"""Exception types shared across the library.

Every domain failure derives from :class:`HiggspecError` so callers (and the
CLI) can separate precondition violations from genuine bugs.
"""


class HiggspecError(Exception):
    """Base class for all library-level failures."""


class DivisionFailure(HiggspecError):
    """Exact polynomial division failed; carries the remainder witness."""

    def __init__(self, remainder, message="exact division failed"):
        super().__init__(f"{message} (remainder witness: {remainder})")
        self.remainder = remainder


class ZeroPolynomial(HiggspecError):
    """An operation that requires a nonzero polynomial received zero."""


class DegreeCapExceeded(HiggspecError):
    """Desk-scale cap violated (chart dimension, matrix size or entry degree)."""


class NotRankOne(HiggspecError):
    """A symmetric differential has a nonvanishing 2x2 minor."""

    def __init__(self, indices, minor):
        i, j, k, l = indices
        super().__init__(f"2x2 minor (rows {i},{j} / cols {k},{l}) is nonzero: {minor}")
        self.indices = indices
        self.minor = minor


class ZeroInput(HiggspecError):
    """A nonzero input was required."""


class FactorizationInconsistent(HiggspecError):
    """Internal identity S = tau * alpha alpha^T failed after construction."""


class RankUnsupported(HiggspecError):
    """Operation only defined for rank-two Higgs fields."""


class FactorizationMismatch(HiggspecError):
    """Higgs field is not compatible with the supplied rank-one factorization."""


class CayleyHamiltonViolation(HiggspecError):
    """An eta-action matrix does not square to -tau * Id."""


class DimensionMismatch(HiggspecError):
    """Lattice / chart dimensions of the operands disagree."""


class SpecialDivisorUndecidable(HiggspecError):
    """h^0 of a possibly-special divisor was requested without a declaration."""


class ZeroHiggsUnsupported(HiggspecError):
    """The fixed-point stability criterion requires a nonzero Higgs field."""


class DegreeOrderViolation(HiggspecError):
    """Split descriptions must be ordered with deg L1 >= deg L2."""


class NilpotentDatum(HiggspecError):
    """The Hitchin section is undefined at the origin of the spectral base."""


class InconsistentBranchData(HiggspecError):
    """Declared branch components do not reproduce the covering datum."""


class NotApplicable(HiggspecError):
    """Hypothesis for the requested verdict was declared false by the caller."""


class RankCap(HiggspecError):
    """Companion-field construction is capped at rank five."""


class ParseError(HiggspecError):
    """A config document failed to parse; carries the offending path."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class SchemaError(ParseError):
    """A config document is well-formed but violates the schema."""
