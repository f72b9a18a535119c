"""Exception types shared across the package."""


class IterationLimitError(RuntimeError):
    """An iterative kernel exhausted its sweep budget without converging."""


class ReducibleMatrixError(ValueError):
    """The Markov matrix is reducible; no unique invariant measure exists."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes or dimension tags."""


class RankDeficiencyError(ValueError):
    """An identity that requires full rank was asked of a singular matrix."""
