"""Truncated noncommutative formal power series in x and y.

A series is a constant plus finitely many Word -> Scalar coefficients, with
a hard truncation in length and in y-degree (2 throughout this package).
All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .scalars import Scalar
from .words import Word

DEFAULT_MAX_LEN = 8
DEFAULT_MAX_Y = 2


class NCSeries:
    __slots__ = ("constant", "coeffs", "max_len", "max_y", "mu")

    def __init__(self, coeffs=None, constant=Fraction(1), max_len=DEFAULT_MAX_LEN,
                 max_y=DEFAULT_MAX_Y, mu=Fraction(0)):
        self.constant = Fraction(constant)
        self.max_len = max_len
        self.max_y = max_y
        self.mu = Fraction(mu)
        clean: dict[Word, Scalar] = {}
        for w, s in (coeffs or {}).items():
            if isinstance(s, (int, Fraction)):
                s = Scalar.rational(s)
            if s.is_zero:
                continue
            if w.length == 0:
                raise UsageError("empty word belongs in the constant term")
            if w.length > max_len or w.y_degree > max_y:
                continue
            clean[w] = s
        self.coeffs = clean

    @staticmethod
    def one(max_len=DEFAULT_MAX_LEN, max_y=DEFAULT_MAX_Y) -> "NCSeries":
        return NCSeries({}, Fraction(1), max_len, max_y)

    @staticmethod
    def zero(max_len=DEFAULT_MAX_LEN, max_y=DEFAULT_MAX_Y) -> "NCSeries":
        return NCSeries({}, Fraction(0), max_len, max_y)

    @staticmethod
    def monomial(w: Word, coeff=1, max_len=DEFAULT_MAX_LEN, max_y=DEFAULT_MAX_Y) -> "NCSeries":
        """The single-word series coeff * w (constant series when w is empty)."""
        if w.length == 0:
            return NCSeries({}, Fraction(coeff), max_len, max_y)
        return NCSeries({w: Scalar.rational(coeff)}, Fraction(0), max_len, max_y)

    def coeff(self, w: Word) -> Scalar:
        if w.length == 0:
            return Scalar.rational(self.constant)
        return self.coeffs.get(w, Scalar.zero())

    def words(self) -> list[Word]:
        return sorted(self.coeffs, key=lambda w: (w.length, w.letters))

    def __add__(self, other: "NCSeries") -> "NCSeries":
        max_len = min(self.max_len, other.max_len)
        max_y = min(self.max_y, other.max_y)
        coeffs = dict(self.coeffs)
        for w, s in other.coeffs.items():
            coeffs[w] = coeffs.get(w, Scalar.zero()) + s
        return NCSeries(coeffs, self.constant + other.constant, max_len, max_y, self.mu)

    def __sub__(self, other: "NCSeries") -> "NCSeries":
        return self + other.scale(-1)

    def scale(self, q) -> "NCSeries":
        if isinstance(q, Scalar):
            return self.scale_scalar(q)
        q = Fraction(q)
        return NCSeries({w: s.scale(q) for w, s in self.coeffs.items()},
                        self.constant * q, self.max_len, self.max_y, self.mu)

    def scale_scalar(self, q: Scalar) -> "NCSeries":
        if self.constant != 0:
            raise UsageError("scalar-scaling a series with nonzero rational constant")
        return NCSeries({w: s * q for w, s in self.coeffs.items()},
                        Fraction(0), self.max_len, self.max_y, self.mu)

    def truncated(self, max_len: int, max_y: int | None = None) -> "NCSeries":
        max_y = self.max_y if max_y is None else max_y
        return NCSeries(self.coeffs, self.constant, min(max_len, self.max_len),
                        min(max_y, self.max_y), self.mu)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.constant == other.constant and self.coeffs == other.coeffs

    def is_group_shaped(self) -> bool:
        """Constant 1, no length-1 words, no pure-x or pure-y words."""
        if self.constant != 1:
            return False
        for w in self.coeffs:
            if w.length == 1:
                return False
            d = w.y_degree
            if d == 0 or d == w.length:
                return False
        return True

    def __repr__(self):
        n = len(self.coeffs)
        return f"NCSeries(constant={self.constant}, {n} words, max_len={self.max_len})"


def series_mul(a: NCSeries, b: NCSeries, max_len: int | None = None,
               max_y: int | None = None) -> NCSeries:
    """Concatenation product: the coefficient of w is the sum of a_u * b_v
    over all splittings w = u v, constants included."""
    max_len = min(a.max_len, b.max_len) if max_len is None else max_len
    max_y = min(a.max_y, b.max_y) if max_y is None else max_y
    coeffs: dict[Word, Scalar] = {}

    def add(w: Word, s: Scalar):
        if s.is_zero or w.length > max_len or w.y_degree > max_y:
            return
        coeffs[w] = coeffs.get(w, Scalar.zero()) + s

    for w, s in a.coeffs.items():
        if b.constant != 0:
            add(w, s.scale(b.constant))
    for w, s in b.coeffs.items():
        if a.constant != 0:
            add(w, s.scale(a.constant))
    for wa, sa in a.coeffs.items():
        if wa.length >= max_len:
            continue
        for wb, sb in b.coeffs.items():
            if wa.length + wb.length > max_len:
                continue
            add(wa.concat(wb), sa * sb)
    return NCSeries(coeffs, a.constant * b.constant, max_len, max_y, a.mu)


def series_inverse(a: NCSeries) -> NCSeries:
    """Two-sided inverse up to truncation, by recursion on word length.

    Requires constant term 1: b_w = -sum over proper splittings w = u v,
    |u| >= 1, of a_u b_v.
    """
    if a.constant != 1:
        raise UsageError("series_inverse requires constant term 1")
    inv: dict[Word, Scalar] = {}
    for w in sorted(a.coeffs.keys() | _closure_words(a), key=lambda w: (w.length, w.letters)):
        acc = Scalar.zero()
        for i in range(1, w.length + 1):
            u, v = w.prefix(i), w.suffix_from(i)
            au = a.coeffs.get(u)
            if au is None:
                continue
            bv = Scalar.ONE if v.length == 0 else inv.get(v, Scalar.zero())
            acc = acc + au * bv
        if not acc.is_zero:
            inv[w] = -acc
    return NCSeries(inv, Fraction(1), a.max_len, a.max_y, a.mu)


def _closure_words(a: NCSeries) -> set[Word]:
    """Words reachable as concatenations of words of a, within truncation."""
    frontier = set(a.coeffs)
    seen = set(frontier)
    while frontier:
        nxt = set()
        for w in frontier:
            for u in a.coeffs:
                c = w.concat(u)
                if c.length <= a.max_len and c.y_degree <= a.max_y and c not in seen:
                    nxt.add(c)
                    seen.add(c)
        frontier = nxt
    return seen


def series_equal(a: NCSeries, b: NCSeries, max_len: int | None = None,
                 max_y: int | None = None) -> bool:
    """Equality of all coefficients up to the common (or given) truncation."""
    max_len = min(a.max_len, b.max_len) if max_len is None else max_len
    max_y = min(a.max_y, b.max_y) if max_y is None else max_y
    if a.constant != b.constant:
        return False
    for w in set(a.coeffs) | set(b.coeffs):
        if w.length > max_len or w.y_degree > max_y:
            continue
        if a.coeff(w) != b.coeff(w):
            return False
    return True
