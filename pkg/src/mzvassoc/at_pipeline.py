"""The path-ordered-exponential associator pipeline.

An element of the group is written as the time-ordered exponential of
x(s) = sum_j x_{2j+1} (s(s-1))^(2j); integrating over [0,1] gives the
element carrying KZ to anti-KZ, over [0,1/2] its square root in the
path-ordered sense, whose action on KZ is the Alekseev-Torossian
associator. This module computes the exact moment integrals, the leading
coefficients c_{2n} in closed form, the overdetermined c_{alpha,beta}
system (solved exactly, consistency certified), and the closed coefficient
formulas for the resulting associator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

from .errors import TruncationError, UsageError
from .families import AssociatorFamilies
from .freelie import LieElement, bracket_word_poly, expand
from .grt import grt_lie_action
from .linalg import LabeledMatrix, solve_overdetermined
from .scalars import MzvExpr, Scalar, ZetaMonomial, single_zeta_atom
from .series import NCSeries
from .words import Word, deg2_word


@dataclass(frozen=True)
class PolynomialQ:
    """Dense univariate polynomial over Q; coeffs[i] is the s^i coefficient."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(*coeffs) -> "PolynomialQ":
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        return PolynomialQ(tuple(values))

    def __add__(self, other: "PolynomialQ") -> "PolynomialQ":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolynomialQ.of(*[
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)])

    def __mul__(self, other: "PolynomialQ") -> "PolynomialQ":
        if not self.coeffs or not other.coeffs:
            return PolynomialQ.of()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolynomialQ.of(*out)

    def pow(self, k: int) -> "PolynomialQ":
        out = PolynomialQ.of(1)
        for _ in range(k):
            out = out * self
        return out

    def antiderivative(self) -> "PolynomialQ":
        """Antiderivative vanishing at 0."""
        return PolynomialQ.of(0, *[c / (i + 1) for i, c in enumerate(self.coeffs)])

    def eval(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def integrate_poly(p: PolynomialQ, lo, hi) -> Fraction:
    anti = p.antiderivative()
    return anti.eval(hi) - anti.eval(lo)


_S_TIMES_S_MINUS_1 = PolynomialQ.of(0, -1, 1)  # s(s-1) = s^2 - s


def kernel_power(k: int) -> PolynomialQ:
    """(s(s-1))^k"""
    return _S_TIMES_S_MINUS_1.pow(k)


def I1(n: int) -> Fraction:
    """Moment over [0,1]: ((2n)!)^2 / (4n+1)!"""
    if n < 1:
        raise UsageError("n must be >= 1")
    return Fraction(factorial(2 * n) ** 2, factorial(4 * n + 1))


def J1(n: int) -> Fraction:
    """Moment over [0,1/2]: exactly half of I1 by the beta reflection."""
    return I1(n) / 2


@lru_cache(maxsize=None)
def single_moment(n: int, upper: Fraction) -> Fraction:
    """Exact integral of (s(s-1))^(2n) over [0, upper]."""
    return integrate_poly(kernel_power(2 * n), 0, upper)


@lru_cache(maxsize=None)
def double_moment(l: int, m: int, upper: Fraction) -> Fraction:
    """Exact nested integral: outer kernel 2l on [0, upper], inner kernel 2m
    on [0, s1]."""
    inner = kernel_power(2 * m).antiderivative()
    return integrate_poly(kernel_power(2 * l) * inner, 0, upper)


def J2(l: int, m: int) -> Fraction:
    if l < 1 or m < 1:
        raise UsageError("J2 requires l, m >= 1")
    return double_moment(l, m, Fraction(1, 2))


def I2(l: int, m: int) -> Fraction:
    if l < 1 or m < 1:
        raise UsageError("I2 requires l, m >= 1")
    return double_moment(l, m, Fraction(1))


def incomplete_beta(x, a: int, b: int) -> Fraction:
    """B_x(a,b) = integral of t^(a-1)(1-t)^(b-1) over [0,x], exact for
    integer a, b >= 1."""
    if a < 1 or b < 1:
        raise UsageError("incomplete_beta requires integer a, b >= 1")
    t_pow = PolynomialQ.of(*([0] * (a - 1) + [1]))
    one_minus_t = PolynomialQ.of(1, -1).pow(b - 1)
    return integrate_poly(t_pow * one_minus_t, 0, x)


def c2n(n: int) -> Scalar:
    """c_{2n} = 2 (4n+1)! zeta(2n+1) / ((2 pi i)^(2n+1) ((2n)!)^2)."""
    if n < 1 or 2 * n + 1 > 11:
        raise UsageError("c2n implemented for 1 <= n <= 5")
    q = Fraction(2 * factorial(4 * n + 1), factorial(2 * n) ** 2)
    return Scalar.of(2 * n + 1, MzvExpr.atom(single_zeta_atom(2 * n + 1), q))


@dataclass
class AtSolution:
    """Exact solution for the weight-(2n+1) Lie coefficients."""

    n: int
    c2n: Scalar
    cab: dict[tuple[int, int], Scalar]

    def lie_element(self) -> LieElement:
        return LieElement(deg1={2 * self.n: self.c2n},
                          deg2={k: s for k, s in self.cab.items()})


def _cab_pairs(n: int) -> list[tuple[int, int]]:
    return [(alpha, 2 * n - 1 - alpha) for alpha in range(n)]


def _abc_triples(n: int) -> list[tuple[int, int, int]]:
    total = 2 * n - 1
    return [(a, b, total - a - b)
            for a in range(total + 1) for b in range(total + 1 - a)]


def _linear_action_terms(fam: AssociatorFamilies, weight_fn, a: int, b: int, c: int) -> Scalar:
    """The two cross sums common to the coefficient equations: the degree-1
    Lie pieces acting on degree-1 words. weight_fn(s) supplies the moment
    (I1 for the full path, J1 for the half path)."""
    out = Scalar.zero()
    for s in range(1, (a + b) // 2 + 1):
        p = a + b - 2 * s
        factor = Fraction(comb(2 * s, a) * (-1) ** a - comb(2 * s, b) * (-1) ** b)
        if factor:
            out = out + (c2n(s) * fam._u1(p, c)).scale(weight_fn(s) * factor)
    for s in range(1, (b + c) // 2 + 1):
        q = b + c - 2 * s
        factor = Fraction(comb(2 * s, b) * (-1) ** b)
        if factor:
            out = out + (c2n(s) * fam._u1(a, q)).scale(weight_fn(s) * factor)
    return out


def solve_cab(n: int, fam: AssociatorFamilies) -> AtSolution:
    """Assemble and exactly solve the overdetermined system for the
    c_{alpha,beta} of weight 2n+1.

    One equation per word x^a y x^b y x^c with a+b+c = 2n-1; the bracket
    coefficients come from the true Lie expansion (see the expand oracle),
    the right side from -2 u_w minus the degree-1 action cross terms. The
    per-monomial rational systems share one matrix; solve_overdetermined
    certifies a zero residual on every equation.
    """
    if n < 1 or n > 5:
        raise UsageError("solve_cab implemented for 1 <= n <= 5")
    weight = 2 * n + 1
    if not fam.table.supports_weight(weight):
        raise TruncationError(
            f"solve_cab(n={n}) needs weight-{weight} tables "
            f"(table max weight {fam.table.max_weight})")
    pairs = _cab_pairs(n)
    bracket_polys = {pair: bracket_word_poly(*pair) for pair in pairs}
    triples = _abc_triples(n)
    i1n = I1(n)
    rows = []
    rhs_scalars = []
    for (a, b, c) in triples:
        w = deg2_word(a, b, c)
        rows.append([i1n * bracket_polys[pair].coeff(w) for pair in pairs])
        rhs = fam.u(w).scale(-2) - _linear_action_terms(fam, I1, a, b, c)
        rhs_scalars.append(rhs)
    monomials = sorted({mono for s in rhs_scalars for mono, _ in s.component(weight).items()},
                       key=ZetaMonomial.sort_key)
    matrix = LabeledMatrix(rows, row_labels=triples, col_labels=pairs)
    rhs_columns = [[s.component(weight).coeff(mono) for s in rhs_scalars] for mono in monomials]
    solutions = solve_overdetermined(matrix, rhs_columns)
    cab = {}
    for k, pair in enumerate(pairs):
        expr = MzvExpr({mono: solutions[j][k] for j, mono in enumerate(monomials)})
        cab[pair] = Scalar.of(weight, expr) if not expr.is_zero else Scalar.zero()
    return AtSolution(n, c2n(n), cab)


def at_coeff(w: Word, solutions: Mapping[int, AtSolution], fam: AssociatorFamilies) -> Scalar:
    """Coefficient of w in the path-exponential associator.

    Degree 1: zero for odd length, the KZ coefficient for even length.
    Degree 2, odd length: the half-path expression is evaluated in full and
    asserted to vanish exactly (it is half the c_{alpha,beta} equation).
    Degree 2, even length: u_w plus the double-moment quadratic terms and
    the degree-1 action cross terms.
    """
    if w.y_degree == 0 or w.y_degree > 2:
        raise UsageError(f"{w} must have y-degree 1 or 2")
    if w.y_degree == 1:
        return fam.u(w) if w.length % 2 == 0 else Scalar.zero()
    a, b, c = w.x_runs()
    if w.length % 2:
        n = (w.length - 1) // 2
        sol = solutions.get(n)
        if sol is None:
            raise UsageError(f"at_coeff({w}) needs the n={n} solution")
        total = fam.u(w) + _linear_action_terms(fam, J1, a, b, c)
        j1n = J1(n)
        for pair, coeff in sol.cab.items():
            q = bracket_word_poly(*pair).coeff(w)
            if q:
                total = total + coeff.scale(j1n * q)
        if not total.is_zero:
            raise ArithmeticError(
                f"odd-length coefficient of {w} failed to vanish: {total!r}")
        return Scalar.zero()
    n = w.length // 2
    total = fam.u(w) + _linear_action_terms(fam, J1, a, b, c)
    for l in range(1, n - 1):
        m = n - 1 - l
        if m < 1:
            continue
        q = Fraction(
            comb(2 * l, a) * comb(2 * m, c) * (-1) ** (a - c)
            + comb(2 * m, a) * comb(2 * l, b) * (-1) ** (a + b)
            - comb(2 * m, c) * comb(2 * l, b) * (-1) ** (b + c))
        if q:
            total = total + (c2n(l) * c2n(m)).scale(J2(l, m) * q)
    return total


def at_series(solutions: Mapping[int, AtSolution], fam: AssociatorFamilies,
              max_len: int = 8, max_y: int = 2) -> NCSeries:
    """Full truncated series of the path-exponential associator."""
    from .words import words_up_to

    coeffs = {}
    for w in words_up_to(max_len, max_y, min_len=2):
        d = w.y_degree
        if d == 0 or d == w.length:
            continue
        s = at_coeff(w, solutions, fam)
        if not s.is_zero:
            coeffs[w] = s
    return NCSeries(coeffs, Fraction(1), max_len, max_y, mu=Fraction(1))


def path_exponential_series(solutions: Mapping[int, AtSolution], upper: Fraction,
                            max_len: int = 8, max_y: int = 2) -> NCSeries:
    """Independent oracle: the time-ordered exponential of the solved Lie
    path truncated at y-degree 2, i.e.

        1 + sum_j m1(j) X_{2j+1} + sum_{l,m} m2(l,m) (X_{2l+1} * X_{2m+1})

    where the quadratic product is the twisted one (concatenation plus the
    y-slot derivation) and m1/m2 are the exact moments over [0, upper].
    """
    upper = Fraction(upper)
    total = NCSeries.one(max_len, max_y)
    elements: dict[int, tuple[LieElement, NCSeries]] = {}
    for j in sorted(solutions):
        if 2 * j + 1 <= max_len:
            lie = solutions[j].lie_element()
            elements[j] = (lie, expand(lie, max_len, max_y))
    for j, (_, xj) in elements.items():
        total = total + xj.scale(single_moment(j, upper))
    for l, (lie_l, _) in elements.items():
        for m, (_, xm) in elements.items():
            if 2 * l + 2 * m + 2 > max_len:
                continue
            twisted = grt_lie_action(lie_l, xm)
            total = total + twisted.scale(double_moment(l, m, upper))
    return total
