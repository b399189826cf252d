"""Lyndon words, the bracketing bijection, and Lie elements of y-degree <= 2.

The Lie normal form used downstream is the ad-basis: {ad_x^a(y)} in degree 1
and {[ad_x^alpha(y), ad_x^beta(y)] : alpha < beta} in degree 2. Convention
x < y throughout. Under this letter order the bracketing of a degree-2
Lyndon word is generally a combination of ad-basis elements, not a single
one; the normal form absorbs that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import UsageError
from .products import WordPoly
from .scalars import Scalar
from .series import NCSeries
from .words import Word, X, Y, word_pow


def lyndon_words(length: int, max_y_degree: int | None = None) -> list[Word]:
    """All Lyndon words of the given length (optionally capped in y-degree),
    in lexicographic order, by Duval's generation over x < y."""
    if length < 1:
        raise UsageError("Lyndon word length must be >= 1")
    alphabet = "xy"
    out: list[Word] = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            word = Word.from_letters("".join(alphabet[i] for i in w))
            if max_y_degree is None or word.y_degree <= max_y_degree:
                out.append(word)
        while len(w) < length:
            w.append(w[-m])
        while w and w[-1] == len(alphabet) - 1:
            w.pop()
    return sorted(out)


def is_lyndon(w: Word) -> bool:
    """Strictly smallest among its rotations."""
    if w.length == 0:
        return False
    text = w.letters
    return all(text < text[i:] + text[:i] for i in range(1, w.length))


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the longest proper Lyndon suffix."""
    if w.length < 2 or not is_lyndon(w):
        raise UsageError(f"{w} has no standard factorization")
    for i in range(1, w.length):
        v = w.suffix_from(i)
        if is_lyndon(v):
            return w.prefix(i), v
    raise AssertionError("unreachable: the last letter is always Lyndon")


def _normalized_pair(a: int, b: int):
    """[ad^a, ad^b] -> (sign, (alpha, beta)) with alpha < beta, or None if zero."""
    if a == b:
        return None
    return (1, (a, b)) if a < b else (-1, (b, a))


def _coerce(s) -> Scalar:
    return s if isinstance(s, Scalar) else Scalar.rational(s)


@dataclass
class LieElement:
    """Rational/Scalar combination of ad-basis elements, y-degree <= 2.

    deg1 maps a -> coefficient of ad_x^a(y) (weight a+1);
    deg2 maps (alpha, beta) with alpha < beta -> coefficient of
    [ad_x^alpha(y), ad_x^beta(y)] (weight alpha+beta+2).
    """

    deg1: dict[int, Scalar] = field(default_factory=dict)
    deg2: dict[tuple[int, int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.deg1 = {a: _coerce(s) for a, s in self.deg1.items() if not _coerce(s).is_zero}
        clean = {}
        for (a, b), s in self.deg2.items():
            if a >= b:
                raise UsageError(f"deg2 key ({a},{b}) must satisfy alpha < beta")
            s = _coerce(s)
            if not s.is_zero:
                clean[(a, b)] = s
        self.deg2 = clean

    @staticmethod
    def zero() -> "LieElement":
        return LieElement()

    @staticmethod
    def ad_power(a: int, coeff=1) -> "LieElement":
        return LieElement(deg1={a: _coerce(coeff)})

    @staticmethod
    def bracket_basis(alpha: int, beta: int, coeff=1) -> "LieElement":
        return LieElement(deg2={(alpha, beta): _coerce(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.deg1 and not self.deg2

    def __add__(self, other: "LieElement") -> "LieElement":
        d1 = dict(self.deg1)
        for a, s in other.deg1.items():
            d1[a] = d1.get(a, Scalar.zero()) + s
        d2 = dict(self.deg2)
        for k, s in other.deg2.items():
            d2[k] = d2.get(k, Scalar.zero()) + s
        return LieElement(d1, d2)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def scale(self, q) -> "LieElement":
        if isinstance(q, Scalar):
            return LieElement({a: s * q for a, s in self.deg1.items()},
                              {k: s * q for k, s in self.deg2.items()})
        return LieElement({a: s.scale(q) for a, s in self.deg1.items()},
                          {k: s.scale(q) for k, s in self.deg2.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.deg1 == other.deg1 and self.deg2 == other.deg2

    def ad_x(self) -> "LieElement":
        """[x, .] on the normal form: ad^a -> ad^(a+1),
        [ad^a, ad^b] -> [ad^(a+1), ad^b] + [ad^a, ad^(b+1)]."""
        d1 = {a + 1: s for a, s in self.deg1.items()}
        d2: dict[tuple[int, int], Scalar] = {}

        def put(pair, s):
            norm = _normalized_pair(*pair)
            if norm is None:
                return
            sign, key = norm
            val = s if sign == 1 else s.scale(-1)
            d2[key] = d2.get(key, Scalar.zero()) + val

        for (a, b), s in self.deg2.items():
            put((a + 1, b), s)
            put((a, b + 1), s)
        return LieElement(d1, d2)

    def __repr__(self):
        bits = [f"ad^{a}(y)*{s!r}" for a, s in sorted(self.deg1.items())]
        bits += [f"[ad^{a},ad^{b}]*{s!r}" for (a, b), s in sorted(self.deg2.items())]
        return "LieElement(" + (" + ".join(bits) if bits else "0") + ")"


def lie_bracket(p: LieElement, q: LieElement) -> LieElement:
    """Free Lie bracket of two degree-1 elements, in the deg-2 normal form."""
    if p.deg2 or q.deg2:
        raise UsageError("bracket of y-degree-2 elements would exceed y-degree 2")
    d2: dict[tuple[int, int], Scalar] = {}
    for a, sa in p.deg1.items():
        for b, sb in q.deg1.items():
            norm = _normalized_pair(a, b)
            if norm is None:
                continue
            sign, key = norm
            val = sa * sb
            if sign == -1:
                val = val.scale(-1)
            d2[key] = d2.get(key, Scalar.zero()) + val
    return LieElement(deg2=d2)


def gamma(w: Word) -> LieElement:
    """Bracketing of a Lyndon word via its standard factorization, expressed
    in the ad-basis. Defined for Lyndon words of y-degree 1 or 2; the single
    letter x has no image in this y-graded normal form."""
    if not is_lyndon(w):
        raise UsageError(f"{w} is not a Lyndon word")
    result = _gamma_inner(w)
    if result is _X_MARKER:
        raise UsageError("gamma of the letter x is outside the y-graded normal form")
    return result


_X_MARKER = object()


def _gamma_inner(w: Word):
    if w.length == 1:
        return _X_MARKER if w == X else LieElement.ad_power(0)
    u, v = standard_factorization(w)
    gu, gv = _gamma_inner(u), _gamma_inner(v)
    if gu is _X_MARKER and gv is _X_MARKER:
        raise AssertionError("xx is not Lyndon")
    if gu is _X_MARKER:
        return gv.ad_x()
    if gv is _X_MARKER:
        raise AssertionError("a Lyndon word of length >= 2 never ends in x")
    return lie_bracket(gu, gv)


def ad_word_poly(a: int) -> WordPoly:
    """ad_x^a(y) in the free associative algebra:
    sum_i C(a,i) (-1)^i x^(a-i) y x^i."""
    terms = {}
    for i in range(a + 1):
        w = word_pow(X, a - i).concat(Y).concat(word_pow(X, i))
        terms[w] = Fraction((-1) ** i * comb(a, i))
    return WordPoly(terms)


def _concat_mul(p: WordPoly, q: WordPoly) -> WordPoly:
    return p.map_words(lambda w1: q.map_words(lambda w2: WordPoly.of(w1.concat(w2))))


def bracket_word_poly(alpha: int, beta: int) -> WordPoly:
    """[ad_x^alpha(y), ad_x^beta(y)] expanded via [A,B] = AB - BA."""
    pa, pb = ad_word_poly(alpha), ad_word_poly(beta)
    return _concat_mul(pa, pb) - _concat_mul(pb, pa)


def expand(e: LieElement, max_len: int, max_y: int = 2) -> NCSeries:
    """Embed a LieElement into the free associative algebra as an NCSeries
    with zero constant term."""
    coeffs: dict[Word, Scalar] = {}

    def accumulate(poly: WordPoly, s: Scalar):
        for w, q in poly.items():
            if w.length > max_len:
                continue
            val = s.scale(q)
            coeffs[w] = coeffs.get(w, Scalar.zero()) + val

    for a, s in e.deg1.items():
        if a + 1 <= max_len:
            accumulate(ad_word_poly(a), s)
    for (alpha, beta), s in e.deg2.items():
        if alpha + beta + 2 <= max_len:
            accumulate(bracket_word_poly(alpha, beta), s)
    return NCSeries(coeffs, Fraction(0), max_len, max_y)


def necklace_lyndon_count(n: int, alphabet_size: int = 2) -> int:
    """Number of Lyndon words of length n: (1/n) sum_{d | n} mu(d) k^(n/d)."""
    def mobius(m: int) -> int:
        result, d, mm = 1, 2, m
        while d * d <= mm:
            if mm % d == 0:
                mm //= d
                if mm % d == 0:
                    return 0
                result = -result
            d += 1
        if mm > 1:
            result = -result
        return result

    total = sum(mobius(d) * alphabet_size ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n
