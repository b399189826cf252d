"""The exact coefficient ring: zeta monomials over Q, graded by weight,
with formal powers of (2*pi*i)^-1.

Every coefficient of a length-n series word in this package is a weight-n
combination of basis zeta monomials divided by (2*pi*i)^n; Scalar enforces
that homogeneity at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Literal, Mapping

from .errors import HomogeneityError, UsageError

#: Atom name -> weight. z35 denotes the double zeta value zeta(3,5).
ATOM_WEIGHTS: dict[str, int] = {
    "z2": 2,
    "z3": 3,
    "z5": 5,
    "z7": 7,
    "z35": 8,
    "z9": 9,
    "z11": 11,
}

_ATOM_DISPLAY = {
    "z2": "ζ(2)",
    "z3": "ζ(3)",
    "z5": "ζ(5)",
    "z7": "ζ(7)",
    "z35": "ζ(3,5)",
    "z9": "ζ(9)",
    "z11": "ζ(11)",
}

_ATOM_ORDER = {name: (w, name) for name, w in ATOM_WEIGHTS.items()}


def single_zeta_atom(n: int) -> str:
    """The atom name for an odd single zeta value zeta(n)."""
    name = f"z{n}"
    if name not in ATOM_WEIGHTS or n == 35:
        raise UsageError(f"zeta({n}) is not a basis atom")
    return name


@dataclass(frozen=True)
class ZetaMonomial:
    """Multiset of basis atoms, stored as a canonically sorted tuple."""

    atoms: tuple[str, ...]

    @staticmethod
    def of(*atoms: str) -> "ZetaMonomial":
        for a in atoms:
            if a not in ATOM_WEIGHTS:
                raise UsageError(f"unknown zeta atom {a!r}")
        return ZetaMonomial(tuple(sorted(atoms, key=_ATOM_ORDER.__getitem__)))

    @property
    def weight(self) -> int:
        return sum(ATOM_WEIGHTS[a] for a in self.atoms)

    def __mul__(self, other: "ZetaMonomial") -> "ZetaMonomial":
        return ZetaMonomial.of(*(self.atoms + other.atoms))

    def split_z2(self) -> tuple[int, "ZetaMonomial"]:
        """(exponent of z2, remaining monomial)."""
        e = sum(1 for a in self.atoms if a == "z2")
        rest = tuple(a for a in self.atoms if a != "z2")
        return e, ZetaMonomial(rest)

    def sort_key(self):
        weights = sorted((ATOM_WEIGHTS[a] for a in self.atoms), reverse=True)
        return (len(self.atoms), tuple(-w for w in weights), self.atoms)

    def display(self) -> str:
        if not self.atoms:
            return "1"
        out = []
        i = 0
        while i < len(self.atoms):
            j = i
            while j < len(self.atoms) and self.atoms[j] == self.atoms[i]:
                j += 1
            run = j - i
            base = _ATOM_DISPLAY[self.atoms[i]]
            out.append(base if run == 1 else f"{base}^{run}")
            i = j
        return "".join(out)


MONOMIAL_ONE = ZetaMonomial(())


class MzvExpr:
    """Exact rational linear combination of zeta monomials.

    Value objects: all operations return new instances; zero coefficients are
    never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ZetaMonomial, Fraction] | None = None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c != 0:
                clean[mono] = c
        self._terms = clean

    @staticmethod
    def zero() -> "MzvExpr":
        return MzvExpr()

    @staticmethod
    def rational(q) -> "MzvExpr":
        return MzvExpr({MONOMIAL_ONE: Fraction(q)})

    @staticmethod
    def atom(name: str, coeff=1) -> "MzvExpr":
        return MzvExpr({ZetaMonomial.of(name): Fraction(coeff)})

    def items(self) -> list[tuple[ZetaMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, mono: ZetaMonomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, MzvExpr) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "MzvExpr") -> "MzvExpr":
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return MzvExpr(terms)

    def __sub__(self, other: "MzvExpr") -> "MzvExpr":
        return self + (-other)

    def __neg__(self) -> "MzvExpr":
        return MzvExpr({m: -c for m, c in self._terms.items()})

    def scale(self, q) -> "MzvExpr":
        q = Fraction(q)
        return MzvExpr({m: c * q for m, c in self._terms.items()})

    def __mul__(self, other: "MzvExpr") -> "MzvExpr":
        terms: dict[ZetaMonomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return MzvExpr(terms)

    def weights(self) -> set[int]:
        return {m.weight for m in self._terms}

    def is_homogeneous(self, weight: int) -> bool:
        return all(m.weight == weight for m in self._terms)

    def weight_component(self, weight: int) -> "MzvExpr":
        return MzvExpr({m: c for m, c in self._terms.items() if m.weight == weight})

    def as_rational(self) -> Fraction:
        """The value of a purely rational expression; raises otherwise."""
        extra = [m for m in self._terms if m.atoms]
        if extra:
            raise ValueError(f"expression is not rational: has {extra[0].display()}")
        return self._terms.get(MONOMIAL_ONE, Fraction(0))

    def render(self) -> str:
        """Spaced display, e.g. ``ζ(3)^2 - 32/105 ζ(2)^3``."""
        if self.is_zero:
            return "0"
        chunks = []
        for i, (mono, coeff) in enumerate(self.items()):
            sign = "-" if coeff < 0 else "+"
            mag = -coeff if coeff < 0 else coeff
            if mono.atoms:
                body = mono.display() if mag == 1 else f"{mag} {mono.display()}"
            else:
                body = str(mag)
            if i == 0:
                chunks.append(body if sign == "+" else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self):
        return f"MzvExpr({self.render()})"


class Scalar:
    """Finite sum over k >= 0 of (weight-k MzvExpr) / (2*pi*i)^k.

    The grading is enforced: the expression stored at key k must be pure
    weight k. Odd k is legal internally; only the pi-power renderer insists
    on even powers.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, MzvExpr] | None = None):
        clean: dict[int, MzvExpr] = {}
        for k, expr in (terms or {}).items():
            if expr.is_zero:
                continue
            if k < 0:
                raise HomogeneityError(f"negative (2πi) power {k}")
            if not expr.is_homogeneous(k):
                raise HomogeneityError(
                    f"expression of weights {sorted(expr.weights())} stored at key {k}"
                )
            clean[k] = expr
        self._terms = clean

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def rational(q) -> "Scalar":
        return Scalar({0: MzvExpr.rational(q)})

    @staticmethod
    def of(k: int, expr: MzvExpr) -> "Scalar":
        return Scalar({k: expr})

    ONE: "Scalar"

    def items(self) -> list[tuple[int, MzvExpr]]:
        return sorted(self._terms.items())

    def component(self, k: int) -> MzvExpr:
        return self._terms.get(k, MzvExpr.zero())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset((k, e) for k, e in self._terms.items()))

    def __add__(self, other: "Scalar") -> "Scalar":
        terms = dict(self._terms)
        for k, e in other._terms.items():
            terms[k] = terms.get(k, MzvExpr.zero()) + e
        return Scalar(terms)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar({k: -e for k, e in self._terms.items()})

    def scale(self, q) -> "Scalar":
        return Scalar({k: e.scale(q) for k, e in self._terms.items()})

    def __mul__(self, other: "Scalar") -> "Scalar":
        terms: dict[int, MzvExpr] = {}
        for k1, e1 in self._terms.items():
            for k2, e2 in other._terms.items():
                k = k1 + k2
                prod = e1 * e2
                terms[k] = terms.get(k, MzvExpr.zero()) + prod
        return Scalar(terms)

    def as_rational(self) -> Fraction:
        for k in self._terms:
            if k != 0:
                raise ValueError("scalar has nonzero (2πi) powers")
        return self.component(0).as_rational()

    def __repr__(self):
        return f"Scalar({render_scalar(self, 'two_pi_i')})"


Scalar.ONE = Scalar.rational(1)

RenderStyle = Literal["two_pi_i", "pi_power"]


def _integerize(items: Iterable[tuple[str, Fraction]]) -> tuple[list[tuple[str, int]], int]:
    """Rewrite rational-coefficient terms as integer terms over one denominator."""
    items = list(items)
    denom = 1
    for _, c in items:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    nums = [(body, int(c * denom)) for body, c in items]
    g = 0
    for _, n in nums:
        g = gcd(g, abs(n))
    if g > 1 and denom % g == 0:
        nums = [(body, n // g) for body, n in nums]
        denom //= g
    return nums, denom


def _join_terms(nums: list[tuple[str, int]]) -> str:
    parts = []
    for i, (body, n) in enumerate(nums):
        sign = "-" if n < 0 else "+"
        mag = abs(n)
        text = body if (mag == 1 and body != "1") else (str(mag) if body == "1" else f"{mag}{body}")
        if i == 0:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f"{sign}{text}")
    return "".join(parts)


def _render_fraction(nums: list[tuple[str, int]], denom_text: str) -> str:
    """denom_text arrives fully formed, including any parentheses."""
    numerator = _join_terms(nums)
    if denom_text == "":
        return numerator
    if len(nums) > 1:
        numerator = f"({numerator})"
    return f"{numerator}/{denom_text}"


def render_scalar(s: Scalar, style: RenderStyle = "two_pi_i") -> str:
    """Deterministic display of a Scalar.

    two_pi_i keeps formal (2πi)^k denominators. pi_power rewrites
    (2πi)^(2m) = (-1)^m 2^(2m) π^(2m) and absorbs ζ(2) = π²/6 factors, so
    pure-ζ(2)-power terms come out as plain rationals; it rejects odd powers.
    """
    if s.is_zero:
        return "0"
    if style == "two_pi_i":
        pieces = []
        for k, expr in s.items():
            if k == 0:
                # homogeneity forces the key-0 component to be a plain rational
                pieces.append(str(expr.as_rational()))
                continue
            nums, denom = _integerize((m.display(), c) for m, c in expr.items())
            power = "(2πi)" if k == 1 else f"(2πi)^{k}"
            denom_text = power if denom == 1 else f"({denom}{power})"
            pieces.append(_render_fraction(nums, denom_text))
        return _concat_signed(pieces)
    if style == "pi_power":
        # bucket: leftover pi-denominator power -> monomial-sans-z2 -> coefficient
        buckets: dict[int, dict[ZetaMonomial, Fraction]] = {}
        for k, expr in s.items():
            if k % 2:
                raise UsageError(f"pi_power style cannot render odd (2πi) power {k}")
            m_half = k // 2
            for mono, coeff in expr.items():
                e, rest = mono.split_z2()
                c = coeff * Fraction((-1) ** m_half, 2**k) * Fraction(1, 6**e)
                d = k - 2 * e
                buckets.setdefault(d, {})
                buckets[d][rest] = buckets[d].get(rest, Fraction(0)) + c
        pieces = []
        for d in sorted(buckets):
            expr = MzvExpr(buckets[d])
            if expr.is_zero:
                continue
            if d == 0:
                pieces.append(str(expr.as_rational()))
                continue
            nums, denom = _integerize((m.display(), c) for m, c in expr.items())
            pi_text = "π" if d == 1 else f"π^{d}"
            denom_text = f"({pi_text})" if denom == 1 else f"({denom}{pi_text})"
            pieces.append(_render_fraction(nums, denom_text))
        return _concat_signed(pieces) if pieces else "0"
    raise UsageError(f"unknown render style {style!r}")


def _concat_signed(pieces: list[str]) -> str:
    out = pieces[0]
    for p in pieces[1:]:
        if p.startswith("-"):
            out += f" - {p[1:]}"
        else:
            out += f" + {p}"
    return out


def scalar_to_terms(s: Scalar) -> list[dict]:
    """JSON-facing structured form: one entry per (monomial, key) pair."""
    out = []
    for k, expr in s.items():
        for mono, coeff in expr.items():
            out.append({"rational": str(coeff), "atoms": list(mono.atoms), "twoPiIPower": k})
    return out


def scalar_from_terms(terms: Iterable[Mapping]) -> Scalar:
    acc = Scalar.zero()
    for t in terms:
        mono = ZetaMonomial.of(*t["atoms"])
        expr = MzvExpr({mono: Fraction(t["rational"])})
        acc = acc + Scalar.of(int(t["twoPiIPower"]), expr)
    return acc
