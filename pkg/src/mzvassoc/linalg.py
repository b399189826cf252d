"""Exact rational matrices: reduced row echelon form and overdetermined solving.

Pivoting is deterministic (first nonzero in column order); exact arithmetic
needs no numerical pivoting and determinism keeps golden tests stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InconsistentSystemError, UnderdeterminedSystemError


@dataclass
class LabeledMatrix:
    rows: list[list[Fraction]]
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("matrix is not rectangular")
        if not self.row_labels:
            self.row_labels = list(range(len(self.rows)))
        if not self.col_labels:
            self.col_labels = list(range(self.n_cols))
        if len(self.row_labels) != len(self.rows):
            raise ValueError("row label count mismatch")
        if self.rows and len(self.col_labels) != self.n_cols:
            raise ValueError("column label count mismatch")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else len(self.col_labels)

    def copy(self) -> "LabeledMatrix":
        return LabeledMatrix([row[:] for row in self.rows],
                             list(self.row_labels), list(self.col_labels))


def rref(m: LabeledMatrix) -> tuple[LabeledMatrix, list[int]]:
    """Exact Gauss-Jordan. Returns the reduced matrix and pivot column indices."""
    out = m.copy()
    rows = out.rows
    pivots: list[int] = []
    r = 0
    for c in range(out.n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        out.row_labels[r], out.row_labels[pivot_row] = out.row_labels[pivot_row], out.row_labels[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return out, pivots


def rank(m: LabeledMatrix) -> int:
    return len(rref(m)[1])


def solve_overdetermined(m: LabeledMatrix,
                         rhs: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Solve m x = b exactly for each right-hand-side vector in rhs.

    The system may have more rows than columns. Requires full column rank
    (raises UnderdeterminedSystemError otherwise); raises
    InconsistentSystemError with a witness row label if any residual entry
    is nonzero. Every returned solution is certified by re-substitution.
    """
    n_rows, n_cols = m.n_rows, m.n_cols
    rhs = [list(map(Fraction, b)) for b in rhs]
    for b in rhs:
        if len(b) != n_rows:
            raise ValueError("rhs length does not match row count")
    # Augment, but only system columns may pivot; rhs columns ride along.
    rows = [m.rows[i][:] + [b[i] for b in rhs] for i in range(n_rows)]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    if len(pivots) < n_cols:
        free = [m.col_labels[c] for c in range(n_cols) if c not in pivots]
        raise UnderdeterminedSystemError(len(pivots), n_cols, free)
    solutions: list[list[Fraction]] = []
    for j in range(len(rhs)):
        col = n_cols + j
        x = [Fraction(0)] * n_cols
        for r_i, c in enumerate(pivots):
            x[c] = rows[r_i][col]
        # exact residual certificate against the original system
        for i in range(n_rows):
            resid = sum((m.rows[i][c] * x[c] for c in range(n_cols)), Fraction(0)) - rhs[j][i]
            if resid != 0:
                raise InconsistentSystemError(m.row_labels[i])
        solutions.append(x)
    return solutions
