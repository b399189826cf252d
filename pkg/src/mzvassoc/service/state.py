"""Shared computation state for the service.

Reduction tables are the expensive resource; they are built once per weight
and shared across requests (everything downstream is immutable). The
default table depth comes from ASSOC_MAX_WEIGHT (default 8).
"""

from __future__ import annotations

import os

from ..at_pipeline import AtSolution, solve_cab
from ..errors import UsageError
from ..families import AssociatorFamilies
from ..reduction import build_reduction_table

ENV_MAX_WEIGHT = "ASSOC_MAX_WEIGHT"
EXTENDED_WEIGHT = 11


def default_max_weight() -> int:
    raw = os.environ.get(ENV_MAX_WEIGHT)
    if raw is None:
        return 8
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"{ENV_MAX_WEIGHT} must be an integer, got {raw!r}") from exc
    if not 2 <= value <= 11:
        raise UsageError(f"{ENV_MAX_WEIGHT} must be between 2 and 11")
    return value


class ServiceState:
    def __init__(self, max_weight: int | None = None):
        self.max_weight = max_weight if max_weight is not None else default_max_weight()
        self._families: dict[int, AssociatorFamilies] = {}
        self._solutions: dict[int, AtSolution] = {}

    def families(self, max_weight: int | None = None) -> AssociatorFamilies:
        w = self.max_weight if max_weight is None else max_weight
        if w not in self._families:
            self._families[w] = AssociatorFamilies(build_reduction_table(w))
        return self._families[w]

    def at_solution(self, n: int, extended: bool = False) -> AtSolution:
        if not 1 <= n <= 5:
            raise UsageError(f"n={n} out of range; c_(alpha,beta) systems exist for n in 1..5")
        if n >= 4 and not extended:
            raise UsageError(
                f"n={n} needs the extended odd-weight tables; pass extended=true (--extended)")
        if n not in self._solutions:
            weight_needed = 2 * n + 1
            fam = self.families(max(self.max_weight, EXTENDED_WEIGHT)) if weight_needed > 8 \
                else self.families(max(self.max_weight, 8))
            self._solutions[n] = solve_cab(n, fam)
        return self._solutions[n]

    def at_solutions_up_to(self, n: int, extended: bool = False) -> dict[int, AtSolution]:
        return {k: self.at_solution(k, extended or k <= 3) for k in range(1, n + 1)}
