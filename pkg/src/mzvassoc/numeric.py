"""Floating-point verification oracle for the exact tables.

Single zeta values are evaluated by direct summation plus an integral tail
sandwich; depth-2 values by a double sum with the same style of tail
control. Every routine guarantees its absolute error bound or refuses the
request; the naive method documented here bottoms out at 1e-10.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UsageError
from .scalars import ATOM_WEIGHTS, MzvExpr
from .words import Composition

MIN_TARGET = 1e-10


def _check_target(target: float):
    if target < MIN_TARGET:
        raise UsageError(f"target error {target} below documented limit {MIN_TARGET}")
    if target <= 0:
        raise UsageError("target error must be positive")


def _tail_integral(s: int, t: float) -> float:
    # integral of x^-s from t to infinity
    return t ** (1 - s) / (s - 1)


def zeta_numeric(s: int, target: float = 1e-10) -> float:
    """zeta(s) for integer s >= 2 with absolute error <= target."""
    _check_target(target)
    if s < 2:
        raise UsageError("zeta_numeric requires s >= 2")
    # Tail midpoint error <= M^-s / 2; leave half the budget for it.
    m_count = int(math.ceil((1.0 / target) ** (1.0 / s))) + 10
    partial = math.fsum(j ** (-float(s)) for j in range(1, m_count + 1))
    hi = _tail_integral(s, m_count)
    lo = _tail_integral(s, m_count + 1)
    return partial + 0.5 * (hi + lo)


def zeta2_numeric(a: int, b: int, target: float = 1e-9) -> float:
    """Direct double-sum zeta(a,b) = sum_{j>k>=1} j^-a k^-b, error <= target.

    The inner sum over j > k is written as zeta(a) - H_k(a); the tail over
    k > K is sandwiched between integral bounds of exponent a+b-1 >= 2.
    """
    _check_target(target)
    if a < 2 or b < 1:
        raise UsageError("zeta2_numeric requires a >= 2, b >= 1")
    s_tail = a + b - 1
    k_count = int(math.ceil((4.0 / ((a - 1) * target)) ** (1.0 / s_tail))) + 10
    k_count = max(50, min(k_count, 4_000_000))
    # zeta(a) enters every term; weight its error by sum k^-b <= 2 + ln K.
    za_budget = target / (4.0 * (2.0 + math.log(k_count)))
    za = zeta_numeric(a, max(za_budget, MIN_TARGET))
    terms = []
    h_k = 0.0
    for k in range(1, k_count + 1):
        h_k += k ** (-float(a))
        inner = za - h_k  # sum over j > k of j^-a
        terms.append(k ** (-float(b)) * inner)
    partial = math.fsum(terms)
    inv = 1.0 / (a - 1)
    hi = inv * _tail_integral(s_tail, k_count)
    lo = inv * _tail_integral(s_tail, k_count + 2)
    return partial + 0.5 * (hi + lo)


_ATOM_CACHE: dict[str, tuple[float, float]] = {}  # name -> (achieved target, value)


def atom_numeric(name: str, target: float = 1e-10) -> float:
    """Numeric value of a basis atom with absolute error <= target."""
    _check_target(target)
    cached = _ATOM_CACHE.get(name)
    if cached and cached[0] <= target:
        return cached[1]
    if name == "z35":
        value = zeta2_numeric(3, 5, target)
    else:
        value = zeta_numeric(ATOM_WEIGHTS[name], target)
    _ATOM_CACHE[name] = (target, value)
    return value


def numeric_eval(expr: MzvExpr, target: float = 1e-9) -> float:
    """Evaluate an MzvExpr with guaranteed absolute error <= target."""
    _check_target(target)
    items = expr.items()
    if not items:
        return 0.0
    # Error budget: each monomial's atoms contribute at most
    # (atom error) * (product of sibling magnitudes <= 1.7^(n-1)).
    weight = 0.0
    for mono, coeff in items:
        n = len(mono.atoms)
        if n:
            weight += abs(coeff) * n * (1.7 ** (n - 1))
    if weight == 0.0:
        return float(math.fsum(float(Fraction(c)) for _, c in items))
    per_atom = target / (2.0 * weight)
    if per_atom < MIN_TARGET:
        raise UsageError(
            f"target error {target} is not achievable for this expression "
            f"(needs per-atom error {per_atom:.2e} below the {MIN_TARGET} limit)"
        )
    total = 0.0
    for mono, coeff in items:
        v = float(Fraction(coeff))
        for atom in mono.atoms:
            v *= atom_numeric(atom, per_atom)
        total += v
    return total


def zeta_composition_numeric(c: Composition, target: float = 1e-9) -> float:
    """Direct summation oracle for an admissible depth-<=2 composition."""
    if not c.is_admissible or c.depth == 0:
        raise UsageError(f"composition {c} is not an admissible zeta argument")
    if c.depth == 1:
        return zeta_numeric(c.parts[0], target)
    if c.depth == 2:
        return zeta2_numeric(c.parts[0], c.parts[1], target)
    raise UsageError("direct evaluation implemented for depth <= 2 only")
