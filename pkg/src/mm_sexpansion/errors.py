"""Exception hierarchy for semigroup and expansion operations."""


class SExpansionError(Exception):
    """Base class for all domain errors raised by mm_sexpansion."""


class InvalidTableError(SExpansionError):
    """Cayley table is not a square array of labels in 1..n."""


class NotAssociativeError(SExpansionError):
    """Operation requires an associative table."""


class NotCommutativeError(SExpansionError):
    """Operation requires a commutative table."""


class NotLieAlgebraError(SExpansionError):
    """Structure constants violate the Jacobi identity."""


class AntisymmetryError(SExpansionError):
    """A bracket [X_i, X_i] was given a nonzero value."""


class FrozenAlgebraError(SExpansionError):
    """Structure constants were modified after the builder phase."""


class DimensionMismatchError(SExpansionError):
    """Objects of incompatible sizes were combined."""


class PreconditionError(SExpansionError):
    """Argument outside the supported range."""


class NoZeroElementError(SExpansionError):
    """Semigroup has no zero element."""


class GradingError(SExpansionError):
    """Subspace decomposition is not a disjoint cover or is not respected by the brackets."""


class ResonanceError(SExpansionError):
    """Subset pair is not a resonant decomposition of the semigroup."""


class ClosureError(SExpansionError):
    """Bracket of retained generators leaves the retained span."""


class DegenerateAlgebraError(SExpansionError):
    """Reduction removed every generator."""


class FormatError(SExpansionError):
    """Malformed input file."""

    def __init__(self, line: int, cause: str) -> None:
        """Store the 1-based line number and the cause."""
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause
