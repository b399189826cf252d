"""The twisted group product on series, its closed degree-1/2 coefficient
formulas, the Lie-algebra action by derivation, and the Ihara bracket.

The closed formulas and the substitution product are deliberately redundant:
each validates the other on random series (the substitution oracle catches
transcription slips in the four-line degree-2 formula).
"""

from __future__ import annotations

from .errors import UsageError
from .freelie import LieElement, expand, lie_bracket
from .scalars import Scalar
from .series import NCSeries, series_inverse, series_mul
from .words import Word, Y, deg1_word, word_pow, X


def _deg1_profile(w: Word) -> tuple[int, int]:
    if w.y_degree != 1:
        raise UsageError(f"{w} is not a degree-1 word")
    runs = w.x_runs()
    return runs[0], runs[1]


def _deg2_profile(w: Word) -> tuple[int, int, int]:
    if w.y_degree != 2:
        raise UsageError(f"{w} is not a degree-2 word")
    runs = w.x_runs()
    return runs[0], runs[1], runs[2]


def product_deg1(a: NCSeries, b: NCSeries, w: Word) -> Scalar:
    """Coefficient of the degree-1 word w = x^p y x^q in the twisted product:
    p_w = a_w + b_w."""
    _deg1_profile(w)
    return a.coeff(w) + b.coeff(w)


def product_deg2(a: NCSeries, b: NCSeries, w: Word) -> Scalar:
    """Coefficient of the degree-2 word w = x^p y x^q y x^r in the twisted
    product, by the closed four-line formula."""
    p, q, r = _deg2_profile(w)

    def ca(i: int, j: int) -> Scalar:
        return a.coeff(deg1_word(i, j)) if i + j + 1 >= 2 else Scalar.zero()

    def cb(i: int, j: int) -> Scalar:
        return b.coeff(deg1_word(i, j)) if i + j + 1 >= 2 else Scalar.zero()

    total = a.coeff(w) + b.coeff(w)
    for j in range(q + 1):
        total = total + ca(p, j) * cb(q - j, r)
    for j in range(p + 1):
        total = total + cb(j, r) * (ca(p - j, q).scale(-1))
    for j in range(r + 1):
        total = total + cb(p, j) * ca(q, r - j)
    return total


def conjugated_y(a: NCSeries, max_len: int | None = None, max_y: int | None = None) -> NCSeries:
    """a^-1 y a, the series substituted for y in the twisted product."""
    max_len = a.max_len if max_len is None else max_len
    max_y = a.max_y if max_y is None else max_y
    y_series = NCSeries.monomial(Y, 1, max_len, max_y)
    inv = series_inverse(a.truncated(max_len, max_y))
    return series_mul(series_mul(inv, y_series, max_len, max_y),
                      a.truncated(max_len, max_y), max_len, max_y)


def substitute_y(b: NCSeries, replacement: NCSeries, max_len: int, max_y: int) -> NCSeries:
    """Replace every y of every word of b by the replacement series."""
    total = NCSeries({}, b.constant, max_len, max_y)
    for w, s in b.coeffs.items():
        runs = w.x_runs()
        piece = NCSeries.monomial(word_pow(X, runs[0]), 1, max_len, max_y)
        for k in runs[1:]:
            piece = series_mul(piece, replacement, max_len, max_y)
            piece = series_mul(piece, NCSeries.monomial(word_pow(X, k), 1, max_len, max_y),
                               max_len, max_y)
        total = total + piece.scale_scalar(s)
    return total


def substitution_product(a: NCSeries, b: NCSeries, max_len: int | None = None,
                         max_y: int | None = None) -> NCSeries:
    """(a . b)(x, y) = a(x, y) * b(x, a^-1 y a), the group product.

    Brute-force oracle for product_deg1/product_deg2.
    """
    max_len = min(a.max_len, b.max_len) if max_len is None else max_len
    max_y = min(a.max_y, b.max_y) if max_y is None else max_y
    conj = conjugated_y(a, max_len, max_y)
    substituted = substitute_y(b, conj, max_len, max_y)
    return series_mul(a.truncated(max_len, max_y), substituted, max_len, max_y)


def y_slot_derivation(gamma_series: NCSeries, phi: NCSeries) -> NCSeries:
    """The derivation sending x -> 0, y -> [y, gamma], applied to phi."""
    max_len, max_y = phi.max_len, phi.max_y
    y_series = NCSeries.monomial(Y, 1, max_len, max_y)
    bracket = series_mul(y_series, gamma_series, max_len, max_y) - \
        series_mul(gamma_series, y_series, max_len, max_y)
    total = NCSeries.zero(max_len, max_y)
    for w, s in phi.coeffs.items():
        for i in range(w.length):
            if w.letters[i] != "y":
                continue
            left = NCSeries.monomial(w.prefix(i), 1, max_len, max_y)
            right = NCSeries.monomial(w.suffix_from(i + 1), 1, max_len, max_y)
            piece = series_mul(series_mul(left, bracket, max_len, max_y), right,
                               max_len, max_y)
            total = total + piece.scale_scalar(s)
    return total


def grt_lie_action(g: LieElement, phi: NCSeries) -> NCSeries:
    """Action of a Lie element on a series: gamma*phi + [y,gamma] d_y phi."""
    gamma_series = expand(g, phi.max_len, phi.max_y)
    return series_mul(gamma_series, phi) + y_slot_derivation(gamma_series, phi)


def _derivation_on_lie(p: LieElement, q: LieElement) -> LieElement:
    """D_p q where D_p sends x -> 0 and y -> [y, p]; q of y-degree 1."""
    if q.deg2:
        raise UsageError("derivation target must have y-degree 1")
    y_bracket_p = lie_bracket(LieElement.ad_power(0), p)  # [y, p]
    out = LieElement.zero()
    for b, coeff in q.deg1.items():
        term = y_bracket_p
        for _ in range(b):
            term = term.ad_x()
        out = out + term.scale(coeff)
    return out


def ihara_bracket(p: LieElement, q: LieElement) -> LieElement:
    """{p, q} = [p, q] + D_p q - D_q p on y-degree-1 elements."""
    if p.deg2 or q.deg2:
        raise UsageError("ihara_bracket inputs must have y-degree <= 1")
    return lie_bracket(p, q) + _derivation_on_lie(p, q) - _derivation_on_lie(q, p)
