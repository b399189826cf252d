"""Shuffle and stuffle products, their regularizations, and the classical
single-zeta closed forms (Bernoulli numbers, even zeta values, Euler's
zeta(a,1) identity).

The shuffle product lives on words over {x,y}; the stuffle product on
compositions of positive integers. zeta is an algebra homomorphism for both,
extended to non-admissible arguments by zeta(x)=zeta(y)=0 (shuffle) and
zeta(1)=0 (stuffle).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import UsageError
from .scalars import MzvExpr, single_zeta_atom
from .words import Composition, Word, X, Y


class _LinComb:
    """Shared plumbing for finite linear combinations with Fraction weights."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[k] = c
        self._terms = clean

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def coeff(self, k) -> Fraction:
        return self._terms.get(k, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def support(self):
        return set(self._terms)

    def __eq__(self, other):
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return type(self)(terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, q):
        q = Fraction(q)
        return type(self)({k: c * q for k, c in self._terms.items()})

    def mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    @staticmethod
    def _sort_key(k):
        raise NotImplementedError


class WordPoly(_LinComb):
    """Finite rational combination of words (the space B)."""

    @staticmethod
    def of(w: Word, coeff=1) -> "WordPoly":
        return WordPoly({w: Fraction(coeff)})

    @staticmethod
    def _sort_key(w: Word):
        return (w.length, w.letters)

    def map_words(self, fn) -> "WordPoly":
        """Sum of coeff * fn(word) where fn returns a WordPoly."""
        acc = WordPoly()
        for w, c in self._terms.items():
            acc = acc + fn(w).scale(c)
        return acc

    def render(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for i, (w, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = str(w) if mag == 1 else f"{mag} {w}"
            chunks.append((body if sign == "+" else f"-{body}") if i == 0 else f" {sign} {body}")
        return "".join(chunks)


class CompositionPoly(_LinComb):
    """Finite rational combination of compositions (the space A)."""

    @staticmethod
    def of(c: Composition, coeff=1) -> "CompositionPoly":
        return CompositionPoly({c: Fraction(coeff)})

    @staticmethod
    def _sort_key(c: Composition):
        return (c.depth, c.parts)

    def map_compositions(self, fn) -> "CompositionPoly":
        acc = CompositionPoly()
        for c, q in self._terms.items():
            acc = acc + fn(c).scale(q)
        return acc

    def render(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for i, (c, q) in enumerate(self.items()):
            sign = "-" if q < 0 else "+"
            mag = -q if q < 0 else q
            body = str(c) if mag == 1 else f"{mag} {c}"
            chunks.append((body if sign == "+" else f"-{body}") if i == 0 else f" {sign} {body}")
        return "".join(chunks)


@lru_cache(maxsize=None)
def _shuffle_words(u: Word, v: Word) -> WordPoly:
    if u.length == 0:
        return WordPoly.of(v)
    if v.length == 0:
        return WordPoly.of(u)
    a, u_rest = u.prefix(1), u.suffix_from(1)
    b, v_rest = v.prefix(1), v.suffix_from(1)
    left = _shuffle_words(u_rest, v).map_words(lambda w: WordPoly.of(a.concat(w)))
    right = _shuffle_words(u, v_rest).map_words(lambda w: WordPoly.of(b.concat(w)))
    return left + right


def shuffle(u: Word, v: Word) -> WordPoly:
    """All interlacings of u and v: aw * a'w' = a(w * a'w') + a'(aw * w')."""
    return _shuffle_words(u, v)


@lru_cache(maxsize=None)
def _stuffle_comps(u: Composition, v: Composition) -> CompositionPoly:
    if u.depth == 0:
        return CompositionPoly.of(v)
    if v.depth == 0:
        return CompositionPoly.of(u)
    n, u_rest = u.parts[0], Composition(u.parts[1:])
    m, v_rest = v.parts[0], Composition(v.parts[1:])

    def prepend(k):
        return lambda c: CompositionPoly.of(Composition((k,) + c.parts))

    return (_stuffle_comps(u_rest, v).map_compositions(prepend(n))
            + _stuffle_comps(u_rest, v_rest).map_compositions(prepend(n + m))
            + _stuffle_comps(u, v_rest).map_compositions(prepend(m)))


def stuffle(u: Composition, v: Composition) -> CompositionPoly:
    """Quasi-shuffle with part merging: nw # n'w' = n(w#n'w') + (n+n')(w#w') + n'(nw#w')."""
    return _stuffle_comps(u, v)


@lru_cache(maxsize=None)
def shuffle_regularize(w: Word) -> WordPoly:
    """Express w modulo the shuffle ideal generated by x and y as a
    combination of admissible words.

    zeta of the result equals the shuffle-regularized zeta(w). Trailing x's
    are peeled by shuffling with the single letter x, then leading y's with
    y; pure-letter words regularize to 0.
    """
    if w.length == 0:
        return WordPoly.of(w)
    d = w.y_degree
    if d == 0 or d == w.length:
        return WordPoly()
    if w.is_admissible:
        return WordPoly.of(w)
    letters = w.letters
    if letters.endswith("x"):
        u = w.prefix(w.length - 1)
        expansion = shuffle(u, X)  # zeta(u)zeta(x) = 0, so w = -(rest)/mult
        mult = expansion.coeff(w)
        rest = expansion - WordPoly.of(w, mult)
        return rest.scale(Fraction(-1, mult)).map_words(shuffle_regularize)
    # leading y
    u = w.suffix_from(1)
    expansion = shuffle(Y, u)
    mult = expansion.coeff(w)
    rest = expansion - WordPoly.of(w, mult)
    return rest.scale(Fraction(-1, mult)).map_words(shuffle_regularize)


@lru_cache(maxsize=None)
def stuffle_regularize(c: Composition) -> CompositionPoly:
    """Express c modulo the stuffle ideal generated by (1) in admissible terms."""
    if c.is_admissible:
        return CompositionPoly.of(c)
    if c.depth == 1:  # the composition (1); zeta(1) = 0
        return CompositionPoly()
    one = Composition((1,))
    tail = Composition(c.parts[1:])
    expansion = stuffle(one, tail)  # zeta(1)zeta(tail) = 0
    mult = expansion.coeff(c)
    rest = expansion - CompositionPoly.of(c, mult)
    return rest.scale(Fraction(-1, mult)).map_compositions(stuffle_regularize)


def zeta_deg1_closed_form(a: int, b: int) -> CompositionPoly:
    """Closed form of the shuffle-regularized zeta(x^a y x^b):
    (-1)^b (a+b)!/(a! b!) zeta(a+b+1)."""
    if a < 0 or b < 0 or a + b < 1:
        raise UsageError("zeta_deg1_closed_form requires a,b >= 0 with a+b >= 1")
    coeff = Fraction((-1) ** b) * Fraction(factorial(a + b), factorial(a) * factorial(b))
    return CompositionPoly.of(Composition((a + b + 1,)), coeff)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, via sum_j C(n+1, j) B_j = 0."""
    if n < 0:
        raise UsageError("Bernoulli index must be >= 0")
    if n == 0:
        return Fraction(1)
    acc = sum((Fraction(comb(n + 1, j)) * bernoulli(j) for j in range(n)), Fraction(0))
    return -acc / (n + 1)


def zeta_even(n: int) -> MzvExpr:
    """zeta(2m) as an exact rational multiple of zeta(2)^m.

    From zeta(2m) = (-1)^(m-1) (2π)^(2m) B_{2m} / (2 (2m)!) divided by
    (zeta(2) = π²/6)^m.
    """
    if n < 2 or n % 2:
        raise UsageError("zeta_even requires an even weight >= 2")
    m = n // 2
    q = Fraction((-1) ** (m - 1)) * Fraction(2**n * 6**m, 2 * factorial(n)) * bernoulli(n)
    mono = MzvExpr.atom("z2")
    out = MzvExpr.rational(q)
    for _ in range(m):
        out = out * mono
    return out


def single_zeta(n: int) -> MzvExpr:
    """zeta(n) reduced to the basis: 0 for n=1, zeta_even for even n,
    the basis atom for odd n."""
    if n < 1:
        raise UsageError("zeta argument must be >= 1")
    if n == 1:
        return MzvExpr.zero()
    if n % 2 == 0:
        return zeta_even(n)
    return MzvExpr.atom(single_zeta_atom(n))


def euler_a1(a: int) -> MzvExpr:
    """zeta(a,1) by the classical identity
    2 zeta(a,1) = a zeta(a+1) - sum_{b=2}^{a-1} zeta(b) zeta(a+1-b),
    reduced to the basis."""
    if a < 2:
        raise UsageError("euler_a1 requires a >= 2")
    acc = single_zeta(a + 1).scale(a)
    for b in range(2, a):
        acc = acc - single_zeta(b) * single_zeta(a + 1 - b)
    return acc.scale(Fraction(1, 2))
