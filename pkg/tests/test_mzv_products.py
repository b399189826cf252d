import random
from fractions import Fraction
from math import comb

import pytest

from mzvassoc.errors import UsageError
from mzvassoc.numeric import numeric_eval, zeta2_numeric
from mzvassoc.products import (CompositionPoly, WordPoly, bernoulli, euler_a1,
                               shuffle, shuffle_regularize, single_zeta, stuffle,
                               stuffle_regularize, zeta_deg1_closed_form, zeta_even)
from mzvassoc.scalars import MzvExpr, ZetaMonomial
from mzvassoc.words import Composition, Word, parse_word


def C(*parts):
    return Composition(tuple(parts))


def random_word(rng, max_len=5):
    n = rng.randint(0, max_len)
    return Word.from_letters("".join(rng.choice("xy") for _ in range(n)))


def random_comp(rng, max_depth=3):
    d = rng.randint(0, max_depth)
    return Composition(tuple(rng.randint(1, 4) for _ in range(d)))


def test_shuffle_square_of_xy():
    poly = shuffle(parse_word("xy"), parse_word("xy"))
    assert poly == WordPoly({parse_word("x^2y^2"): Fraction(4),
                             parse_word("xyxy"): Fraction(2)})


def test_shuffle_unit():
    w = parse_word("xyx")
    empty = Word.from_letters("")
    assert shuffle(w, empty) == WordPoly.of(w)
    assert shuffle(empty, w) == WordPoly.of(w)


def test_shuffle_weight6_expansion():
    poly = shuffle(parse_word("x^3y"), parse_word("xy"))
    assert poly == WordPoly({
        parse_word("x^3yxy"): Fraction(4),
        parse_word("x^4y^2"): Fraction(8),
        parse_word("x^2yx^2y"): Fraction(2),
        parse_word("xyx^3y"): Fraction(1),
    })


def test_shuffle_mass_is_binomial():
    rng = random.Random(2)
    for _ in range(20):
        u, v = random_word(rng), random_word(rng)
        assert shuffle(u, v).mass() == comb(u.length + v.length, u.length)


def test_shuffle_commutative_associative():
    rng = random.Random(4)
    for _ in range(10):
        u, v, w = (random_word(rng, 4) for _ in range(3))
        assert shuffle(u, v) == shuffle(v, u)
        left = shuffle(u, v).map_words(lambda a: shuffle(a, w))
        right = shuffle(v, w).map_words(lambda a: shuffle(u, a))
        assert left == right


def test_stuffle_worked_example():
    poly = stuffle(C(2, 3), C(5))
    assert poly == CompositionPoly({C(2, 3, 5): Fraction(1), C(2, 8): Fraction(1),
                                    C(2, 5, 3): Fraction(1), C(7, 3): Fraction(1),
                                    C(5, 2, 3): Fraction(1)})


def test_stuffle_depth1_rule():
    assert stuffle(C(4), C(2)) == CompositionPoly({C(4, 2): Fraction(1),
                                                   C(6): Fraction(1),
                                                   C(2, 4): Fraction(1)})


def test_stuffle_unit():
    u = C(3, 1)
    assert stuffle(u, C()) == CompositionPoly.of(u)
    assert stuffle(C(), u) == CompositionPoly.of(u)


def test_stuffle_commutative_associative():
    rng = random.Random(6)
    for _ in range(10):
        u, v, w = (random_comp(rng) for _ in range(3))
        assert stuffle(u, v) == stuffle(v, u)
        left = stuffle(u, v).map_compositions(lambda a: stuffle(a, w))
        right = stuffle(v, w).map_compositions(lambda a: stuffle(u, a))
        assert left == right


def test_shuffle_regularize_goldens():
    assert shuffle_regularize(parse_word("x^2yx^2")) == \
        WordPoly.of(parse_word("x^4y"), 6)
    admissible = parse_word("x^4y")
    assert shuffle_regularize(admissible) == WordPoly.of(admissible)
    assert shuffle_regularize(parse_word("x^3")).is_zero
    assert shuffle_regularize(parse_word("y^2")).is_zero
    assert shuffle_regularize(parse_word("yx")) == WordPoly.of(parse_word("xy"), -1)


def test_shuffle_regularize_supports_admissible_only():
    rng = random.Random(8)
    for _ in range(30):
        w = random_word(rng, 6)
        if w.length == 0:
            continue
        for adm, _ in shuffle_regularize(w).items():
            assert adm.is_admissible
            assert adm.length == w.length
            assert adm.y_degree == w.y_degree


def test_stuffle_regularize_goldens():
    poly = stuffle_regularize(C(1, 2, 3))
    assert poly == CompositionPoly({C(3, 3): Fraction(-1), C(2, 1, 3): Fraction(-1),
                                    C(2, 4): Fraction(-1), C(2, 3, 1): Fraction(-1)})
    assert stuffle_regularize(C(2, 1)) == CompositionPoly.of(C(2, 1))
    assert stuffle_regularize(C(1)).is_zero


def test_zeta_deg1_closed_form():
    assert zeta_deg1_closed_form(2, 2) == CompositionPoly.of(C(5), 6)
    assert zeta_deg1_closed_form(0, 4) == CompositionPoly.of(C(5), 1)
    assert zeta_deg1_closed_form(4, 0) == CompositionPoly.of(C(5), 1)
    assert zeta_deg1_closed_form(1, 2) == CompositionPoly.of(C(4), 3)
    assert zeta_deg1_closed_form(2, 1) == CompositionPoly.of(C(4), -3)
    with pytest.raises(UsageError):
        zeta_deg1_closed_form(0, 0)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(8) == Fraction(-1, 30)
    assert all(bernoulli(n) == 0 for n in range(3, 16, 2))


def test_zeta_even_values():
    z2 = ZetaMonomial.of("z2")
    assert zeta_even(2) == MzvExpr({z2: Fraction(1)})
    assert zeta_even(4) == MzvExpr({ZetaMonomial.of("z2", "z2"): Fraction(2, 5)})
    assert zeta_even(6) == MzvExpr({ZetaMonomial.of("z2", "z2", "z2"): Fraction(8, 35)})
    with pytest.raises(UsageError):
        zeta_even(3)


def test_euler_identity_exact():
    assert euler_a1(2) == MzvExpr.atom("z3")
    # zeta(5,1) = 5/2 zeta(6) - zeta(2)zeta(4) - 1/2 zeta(3)^2
    expected = zeta_even(6).scale(Fraction(5, 2)) - single_zeta(2) * single_zeta(4) \
        - (MzvExpr.atom("z3") * MzvExpr.atom("z3")).scale(Fraction(1, 2))
    assert euler_a1(5) == expected
    assert euler_a1(3) == MzvExpr({ZetaMonomial.of("z2", "z2"): Fraction(1, 10)})


@pytest.mark.parametrize("a", [2, 3, 4, 5])
def test_euler_identity_numeric_confirmation(a):
    """The classical zeta(a,1) identity against direct double summation."""
    symbolic = numeric_eval(euler_a1(a), 1e-8)
    direct = zeta2_numeric(a, 1, 1e-8)
    assert abs(symbolic - direct) < 1e-7
