import random
from fractions import Fraction

import pytest

from mzvassoc.errors import UsageError
from mzvassoc.freelie import LieElement, expand
from mzvassoc.grt import (grt_lie_action, ihara_bracket, product_deg1,
                          product_deg2, substitution_product, y_slot_derivation)
from mzvassoc.series import NCSeries, series_equal, series_mul
from mzvassoc.words import deg1_word, parse_word, words_up_to


def random_group_series(rng, max_len=7, max_y=2, n_terms=10):
    """Random sparse rational series of group shape: constant 1, no linear
    terms, no pure-letter words."""
    pool = [w for w in words_up_to(max_len, max_y, min_len=2)
            if 0 < w.y_degree < w.length]
    coeffs = {}
    for w in rng.sample(pool, min(n_terms, len(pool))):
        coeffs[w] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return NCSeries(coeffs, Fraction(1), max_len, max_y)


def antisymmetrized(series: NCSeries) -> NCSeries:
    """Force the degree-1 antisymmetry a_(x^p y x^q) = -a_(x^q y x^p)."""
    coeffs = dict(series.coeffs)
    for w in list(coeffs):
        if w.y_degree != 1:
            continue
        p, q = w.x_runs()
        mirror = deg1_word(q, p)
        if mirror == w:
            coeffs.pop(w)
            continue
        coeffs[mirror] = coeffs[w].scale(-1)
    return NCSeries(coeffs, Fraction(1), series.max_len, series.max_y)


def test_product_deg1_unit_cases():
    rng = random.Random(31)
    a = random_group_series(rng)
    one = NCSeries.one(7, 2)
    for w in words_up_to(7, 1, min_len=2):
        if w.y_degree != 1:
            continue
        assert product_deg1(a, one, w) == a.coeff(w)
        assert product_deg1(one, a, w) == a.coeff(w)
    with pytest.raises(UsageError):
        product_deg1(a, one, parse_word("xyxy"))


def test_product_deg2_unit_cases():
    rng = random.Random(32)
    a = random_group_series(rng)
    one = NCSeries.one(7, 2)
    for w in words_up_to(7, 2, min_len=2):
        if w.y_degree != 2:
            continue
        assert product_deg2(a, one, w) == a.coeff(w), str(w)
        assert product_deg2(one, a, w) == a.coeff(w), str(w)


def test_substitution_product_units():
    rng = random.Random(33)
    a = random_group_series(rng)
    one = NCSeries.one(7, 2)
    assert series_equal(substitution_product(one, a), a)
    assert series_equal(substitution_product(a, one), a)


def test_closed_formulas_match_substitution_oracle():
    """Eq-level redundancy: 50 random sparse rational series pairs, exact
    agreement of the degree-1/degree-2 closed formulas with the brute-force
    substitution product on every word of length <= 7."""
    rng = random.Random(1234)
    words = [w for w in words_up_to(7, 2, min_len=2) if w.y_degree in (1, 2)]
    for trial in range(50):
        a = antisymmetrized(random_group_series(rng))
        b = antisymmetrized(random_group_series(rng))
        oracle = substitution_product(a, b)
        for w in words:
            closed = product_deg1(a, b, w) if w.y_degree == 1 else product_deg2(a, b, w)
            assert closed == oracle.coeff(w), (trial, str(w))


def test_substitution_preserves_group_shape():
    rng = random.Random(77)
    for _ in range(10):
        a = random_group_series(rng)
        b = random_group_series(rng)
        prod = substitution_product(a, b)
        assert prod.is_group_shaped()


def test_degree1_antisymmetry_propagates():
    rng = random.Random(55)
    for _ in range(10):
        a = antisymmetrized(random_group_series(rng))
        b = antisymmetrized(random_group_series(rng))
        prod = substitution_product(a, b)
        for w in prod.words():
            if w.y_degree != 1:
                continue
            p, q = w.x_runs()
            assert prod.coeff(w) == prod.coeff(deg1_word(q, p)).scale(-1)


def test_grt_lie_action_trivialities():
    phi = NCSeries.one(6, 2)
    g = LieElement.ad_power(2)
    assert series_equal(grt_lie_action(LieElement.zero(), phi), NCSeries.zero(6, 2))
    assert series_equal(grt_lie_action(g, phi), expand(g, 6, 2))


def test_y_slot_derivation_worked_example():
    """[y,g] d_y (x^2 y x y x^3) = x^2 [y,g] x y x^3 + x^2 y x [y,g] x^3."""
    g = expand(LieElement.ad_power(1), 12, 3)
    w = parse_word("x^2yxyx^3")
    phi = NCSeries.monomial(w, 1, 12, 3)
    got = y_slot_derivation(g, phi)
    y_series = NCSeries.monomial(parse_word("y"), 1, 12, 3)
    bracket = series_mul(y_series, g) - series_mul(g, y_series)

    def mono(text):
        return NCSeries.monomial(parse_word(text), 1, 12, 3)

    expected = series_mul(series_mul(mono("x^2"), bracket), mono("xyx^3")) + \
        series_mul(series_mul(mono("x^2yx"), bracket), mono("x^3"))
    assert series_equal(got, expected)


def series_ihara(a: NCSeries, b: NCSeries) -> NCSeries:
    """Associative-algebra oracle for the Ihara bracket on constant-free
    series: [a,b] + D_a b - D_b a with D the y-slot derivation."""
    return (series_mul(a, b) - series_mul(b, a)
            + y_slot_derivation(a, b) - y_slot_derivation(b, a))


def test_ihara_antisymmetry_and_bilinearity():
    p = LieElement.ad_power(2)
    q = LieElement.ad_power(4)
    assert ihara_bracket(p, p).is_zero
    assert ihara_bracket(p, q) == ihara_bracket(q, p).scale(-1)
    assert ihara_bracket(p.scale(2), q) == ihara_bracket(p, q).scale(2)
    two_p = p + p
    assert ihara_bracket(two_p, q) == ihara_bracket(p, q).scale(2)
    with pytest.raises(UsageError):
        ihara_bracket(LieElement.bracket_basis(0, 1), q)


def test_ihara_golden_ad2_ad4():
    """{ad^2(y), ad^4(y)} frozen after validation against the associative
    expansion: 2[ad^1,ad^5] + 5[ad^2,ad^4]."""
    p, q = LieElement.ad_power(2), LieElement.ad_power(4)
    got = ihara_bracket(p, q)
    assert got == LieElement.bracket_basis(1, 5, 2) + LieElement.bracket_basis(2, 4, 5)
    # independent associative-algebra route
    oracle = series_ihara(expand(p, 8, 2), expand(q, 8, 2))
    assert series_equal(expand(got, 8, 2), oracle)


def test_ihara_matches_series_oracle_on_pairs():
    for a in range(0, 4):
        for b in range(0, 4):
            p, q = LieElement.ad_power(a), LieElement.ad_power(b)
            max_len = a + b + 2
            got = expand(ihara_bracket(p, q), max_len, 2)
            oracle = series_ihara(expand(p, max_len, 2), expand(q, max_len, 2))
            assert series_equal(got, oracle), (a, b)


def test_ihara_jacobi_via_series():
    """Jacobi for the Ihara bracket, checked on the associative side where
    y-degree 3 is representable."""
    max_len, max_y = 9, 3
    elts = [expand(LieElement.ad_power(a), max_len, max_y) for a in (0, 1, 2)]
    p, q, r = elts
    total = series_ihara(p, series_ihara(q, r)) \
        + series_ihara(q, series_ihara(r, p)) \
        + series_ihara(r, series_ihara(p, q))
    assert series_equal(total, NCSeries.zero(max_len, max_y))
