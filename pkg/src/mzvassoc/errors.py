"""Exception types shared across the package.

The service layer maps these onto HTTP statuses (usage -> 400, math -> 409)
and the CLI maps those onto exit codes (usage -> 2, math -> 3).
"""


class UsageError(ValueError):
    """Malformed input: bad word/composition syntax, out-of-range parameters."""


class ParseError(UsageError):
    """Input text does not match the word or composition grammar."""


class TruncationError(UsageError):
    """A requested word or weight exceeds the available truncation/tables."""


class MathError(Exception):
    """An exact computation failed in a mathematically meaningful way."""


class HomogeneityError(MathError):
    """A scalar insertion violated the weight-k-at-key-k invariant."""


class InconsistentSystemError(MathError):
    """An overdetermined linear system has no exact solution."""

    def __init__(self, witness_row, message=None):
        self.witness_row = witness_row
        super().__init__(message or f"inconsistent system, witness row {witness_row!r}")


class UnderdeterminedSystemError(MathError):
    """A linear system has rank < number of unknowns."""

    def __init__(self, rank, n_cols, free_cols=None):
        self.rank = rank
        self.n_cols = n_cols
        self.free_cols = list(free_cols or [])
        super().__init__(f"underdetermined system: rank {rank} < {n_cols} unknowns")


class RankDeficientError(MathError):
    """The relation harvest failed to reduce some zeta values at a weight."""

    def __init__(self, weight, unreduced):
        self.weight = weight
        self.unreduced = list(unreduced)
        super().__init__(
            f"weight {weight} harvest left {len(self.unreduced)} value(s) unreduced: "
            + ", ".join(map(str, self.unreduced))
        )
