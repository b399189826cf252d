"""Closed-form coefficient families for the associator tower.

u: the KZ associator; akz: its image under (x,y) -> (-x,-y); c: the group
element carrying KZ to anti-KZ; d: its square root; f: the associator the
square root produces from KZ. Degree means y-degree throughout; every family
is defined on words of length >= 2 and y-degree <= 2 and memoized per word.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import TruncationError, UsageError
from .reduction import ReductionTable, zeta_word
from .scalars import Scalar
from .series import NCSeries
from .words import Word, deg1_word, words_up_to

#: associator parameter: 1 for associators, 0 for group elements
FAMILY_MU = {"kz": 1, "akz": 1, "psi": 0, "half_psi": 0, "half": 1, "at": 1}


def delta(p: int, q: int) -> int:
    """1 when the degree-1 word x^p y x^q has odd length, else 0."""
    return (p + q + 1) % 2


class AssociatorFamilies:
    """Lazy, memoized coefficient getters sharing one reduction table."""

    def __init__(self, table: ReductionTable):
        self.table = table
        self._memo: dict[tuple[str, Word], Scalar] = {}

    def _check(self, w: Word):
        if w.length < 2:
            raise UsageError(f"coefficients are defined for length >= 2, got {w}")
        if w.y_degree > 2:
            raise UsageError(f"{w} has y-degree {w.y_degree} > 2")
        if not self.table.supports_weight(w.length):
            raise TruncationError(
                f"word {w} needs weight {w.length}, beyond table (max {self.table.max_weight})")

    def u(self, w: Word) -> Scalar:
        """KZ coefficient (-1)^(number of y's) zeta(w) / (2 pi i)^|w|."""
        key = ("kz", w)
        if key not in self._memo:
            self._check(w)
            expr = zeta_word(w, self.table)
            sign = (-1) ** w.y_degree
            self._memo[key] = Scalar.of(w.length, expr.scale(sign)) if not expr.is_zero \
                else Scalar.zero()
        return self._memo[key]

    def _u1(self, p: int, q: int) -> Scalar:
        """u of the degree-1 word x^p y x^q, zero below length 2."""
        if p + q + 1 < 2:
            return Scalar.zero()
        return self.u(deg1_word(p, q))

    def akz(self, w: Word) -> Scalar:
        """(-1)^|w| u_w: the coefficient after flipping the signs of x and y."""
        return self.u(w).scale((-1) ** w.length)

    def c(self, w: Word) -> Scalar:
        key = ("psi", w)
        if key in self._memo:
            return self._memo[key]
        self._check(w)
        if w.y_degree == 1:
            out = self.u(w).scale(-2) if w.length % 2 else Scalar.zero()
        else:
            p, q, r = w.x_runs()
            u_w = self.u(w)
            out = u_w.scale(-1) + u_w.scale((-1) ** w.length)
            for j in range(q + 1):
                if delta(p, j):
                    out = out + (self._u1(p, j) * self._u1(q - j, r)).scale(2)
            for j in range(p + 1):
                if delta(p - j, q):
                    out = out + (self._u1(j, r) * self._u1(p - j, q)).scale(-2)
            for j in range(r + 1):
                if delta(q, r - j):
                    out = out + (self._u1(p, j) * self._u1(q, r - j)).scale(2)
        self._memo[key] = out
        return out

    def d(self, w: Word) -> Scalar:
        key = ("half_psi", w)
        if key in self._memo:
            return self._memo[key]
        self._check(w)
        if w.y_degree == 1:
            out = self.u(w).scale(-1) if w.length % 2 else Scalar.zero()
        elif w.length % 2:
            out = self.c(w).scale(Fraction(1, 2))
        else:
            p, q, r = w.x_runs()
            out = self._even_deg2_sum(p, q, r).scale(Fraction(1, 2))
        self._memo[key] = out
        return out

    def _even_deg2_sum(self, p: int, q: int, r: int) -> Scalar:
        """The three parity-filtered u-product sums shared by the even-length
        degree-2 cases of d and f."""
        out = Scalar.zero()
        for j in range(q + 1):
            if delta(p, j):
                out = out + self._u1(p, j) * self._u1(q - j, r)
        for j in range(p + 1):
            if delta(p - j, q):
                out = out - self._u1(j, r) * self._u1(p - j, q)
        for j in range(r + 1):
            if delta(q, r - j):
                out = out + self._u1(p, j) * self._u1(q, r - j)
        return out

    def f(self, w: Word) -> Scalar:
        key = ("half", w)
        if key in self._memo:
            return self._memo[key]
        self._check(w)
        if w.y_degree == 1:
            out = self.u(w) if w.length % 2 == 0 else Scalar.zero()
        elif w.length % 2:
            out = Scalar.zero()
        else:
            p, q, r = w.x_runs()
            out = self.u(w) - self._even_deg2_sum(p, q, r).scale(Fraction(1, 2))
        self._memo[key] = out
        return out

    def coefficient(self, name: str, w: Word) -> Scalar:
        getter = {"kz": self.u, "akz": self.akz, "psi": self.c,
                  "half_psi": self.d, "half": self.f}.get(name)
        if getter is None:
            raise UsageError(f"unknown family {name!r}")
        return getter(w)

    def series(self, name: str, max_len: int = 8, max_y: int = 2) -> NCSeries:
        """The full truncated series of a family (constant term 1)."""
        coeffs = {}
        for w in words_up_to(max_len, max_y, min_len=2):
            d = w.y_degree
            if d == 0 or d == w.length:
                continue  # pure-letter words vanish in every family here
            s = self.coefficient(name, w)
            if not s.is_zero:
                coeffs[w] = s
        return NCSeries(coeffs, Fraction(1), max_len, max_y, mu=Fraction(FAMILY_MU[name]))
