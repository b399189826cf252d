"""Exact reduction of depth-<=2 multiple zeta values to the conjectural basis.

Per weight N, the harvest collects (i) shuffle relations from all degree-1
word pairs, regularized; (ii) stuffle relations from single-zeta pairs;
(iii) Euler's zeta(a,1) identity; (iv) even-zeta rewrites; plus the
definitional anchors mapping basis compositions to their atoms. One exact
Gauss-Jordan pass per weight then expresses every admissible depth-<=2
value in basis monomials.

Weight 10 is never harvested: it would need a new depth-2 atom and nothing
in scope requires it. Weights 9 and 11 close onto single-zeta monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (InconsistentSystemError, MathError, RankDeficientError,
                     TruncationError, UsageError)
from .numeric import numeric_eval, zeta_composition_numeric
from .products import (euler_a1, shuffle, shuffle_regularize, single_zeta,
                       stuffle, zeta_deg1_closed_form, zeta_even)
from .scalars import MzvExpr
from .words import Composition, Word, deg1_word

DEFAULT_MAX_WEIGHT = 8
SUPPORTED_WEIGHTS = (2, 3, 4, 5, 6, 7, 8, 9, 11)

#: Compositions that ARE basis atoms, by definition.
ANCHOR_ATOMS: dict[tuple[int, ...], str] = {
    (2,): "z2",
    (3,): "z3",
    (5,): "z5",
    (7,): "z7",
    (9,): "z9",
    (11,): "z11",
    (3, 5): "z35",
}

#: Optional pre-reduced entries used only if a harvest comes up rank
#: deficient at some weight. The in-scope harvests all close, so this
#: ships empty; every entry added here must pass numeric verification.
FALLBACK_ENTRIES: dict[Composition, MzvExpr] = {}


def _admissible_compositions(weight: int) -> list[Composition]:
    out = [Composition((weight,))]
    for a in range(2, weight):
        b = weight - a
        if b >= 1:
            out.append(Composition((a, b)))
    return sorted(out, key=lambda c: c.parts)


def _closed_form_deg1_zeta(a: int, b: int) -> MzvExpr:
    """Shuffle-regularized zeta(x^a y x^b) reduced to the basis."""
    poly = zeta_deg1_closed_form(a, b)
    acc = MzvExpr.zero()
    for comp, coeff in poly.items():
        acc = acc + single_zeta(comp.parts[0]).scale(coeff)
    return acc


@dataclass
class _Relation:
    coeffs: dict[Composition, Fraction]
    rhs: MzvExpr
    label: str


def _harvest(weight: int) -> list[_Relation]:
    rel: list[_Relation] = []

    def add(coeffs, rhs, label):
        rel.append(_Relation({c: Fraction(q) for c, q in coeffs.items() if q != 0}, rhs, label))

    for parts, atom in ANCHOR_ATOMS.items():
        if sum(parts) == weight:
            add({Composition(parts): 1}, MzvExpr.atom(atom), f"anchor {parts}")
    if weight % 2 == 0:
        add({Composition((weight,)): 1}, zeta_even(weight), f"even zeta({weight})")
    if weight >= 3:
        # euler_a1 is closed-form (lower-weight products), so it is a constant here
        add({Composition((weight - 1, 1)): 1}, euler_a1(weight - 1), f"euler zeta({weight - 1},1)")
    for r in range(2, weight - 1):
        s = weight - r
        if s < r or s < 2:
            continue
        lhs = single_zeta(r) * single_zeta(s)
        coeffs: dict[Composition, Fraction] = {}
        for comp, q in stuffle(Composition((r,)), Composition((s,))).items():
            coeffs[comp] = coeffs.get(comp, Fraction(0)) + q
        add(coeffs, lhs, f"stuffle ({r})({s})")
    # shuffle relations over all degree-1 word pairs, regularized
    for len_u in range(2, weight - 1):
        len_v = weight - len_u
        if len_v < 2 or len_v < len_u:
            continue
        for a in range(len_u):
            u = deg1_word(a, len_u - 1 - a)
            for c in range(len_v):
                v = deg1_word(c, len_v - 1 - c)
                if len_u == len_v and v < u:
                    continue
                lhs = _closed_form_deg1_zeta(a, len_u - 1 - a) * \
                    _closed_form_deg1_zeta(c, len_v - 1 - c)
                expanded = shuffle(u, v).map_words(shuffle_regularize)
                coeffs = {}
                for w, q in expanded.items():
                    comp = w.to_composition()
                    coeffs[comp] = coeffs.get(comp, Fraction(0)) + q
                add(coeffs, lhs, f"shuffle {u}*{v}")
    return rel


def _solve_weight(weight: int) -> dict[Composition, MzvExpr]:
    variables = _admissible_compositions(weight)
    index = {c: i for i, c in enumerate(variables)}
    relations = _harvest(weight)
    rows = []
    rhs = []
    labels = []
    for r in relations:
        row = [Fraction(0)] * len(variables)
        for comp, q in r.coeffs.items():
            row[index[comp]] += q
        rows.append(row)
        rhs.append(r.rhs)
        labels.append(r.label)
    # Gauss-Jordan over the variable columns, carrying MzvExpr right sides.
    pivots: list[int] = []
    rank = 0
    for c in range(len(variables)):
        pivot_row = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        rhs[rank], rhs[pivot_row] = rhs[pivot_row], rhs[rank]
        labels[rank], labels[pivot_row] = labels[pivot_row], labels[rank]
        inv = Fraction(1) / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        rhs[rank] = rhs[rank].scale(inv)
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * p for x, p in zip(rows[i], rows[rank])]
                rhs[i] = rhs[i] - rhs[rank].scale(f)
        pivots.append(c)
        rank += 1
    for i in range(rank, len(rows)):
        if not rhs[i].is_zero:
            raise InconsistentSystemError(labels[i],
                                          f"weight-{weight} relations are contradictory at {labels[i]}")
    out: dict[Composition, MzvExpr] = {}
    free_cols = [c for c in range(len(variables)) if c not in pivots]
    if free_cols:
        unresolved = [variables[c] for c in free_cols if variables[c] not in FALLBACK_ENTRIES]
        if unresolved:
            raise RankDeficientError(weight, unresolved)
        for c in free_cols:
            out[variables[c]] = FALLBACK_ENTRIES[variables[c]]
    for r_i, c in enumerate(pivots):
        expr = rhs[r_i]
        # a pivot row may still reference free columns; substitute their values
        for c_free in free_cols:
            f = rows[r_i][c_free]
            if f != 0:
                expr = expr - out[variables[c_free]].scale(f)
        if not expr.is_homogeneous(weight):
            raise MathError(f"non-homogeneous reduction for {variables[c]}")
        out[variables[c]] = expr
    return out


@dataclass
class ReductionTable:
    """Immutable map from admissible depth-<=2 compositions to basis combos."""

    max_weight: int
    entries: dict[Composition, MzvExpr] = field(default_factory=dict)

    @property
    def weights(self) -> list[int]:
        return [w for w in SUPPORTED_WEIGHTS if w <= self.max_weight]

    def supports_weight(self, weight: int) -> bool:
        return weight == 0 or weight in self.weights

    def reduce(self, c: Composition) -> MzvExpr:
        if c.depth == 0:
            return MzvExpr.rational(1)
        if not c.is_admissible:
            raise UsageError(f"composition {c} is not admissible; regularize first")
        if c.depth > 2:
            raise UsageError(f"depth-{c.depth} composition {c} is out of scope (depth <= 2)")
        if not self.supports_weight(c.weight):
            raise TruncationError(
                f"weight {c.weight} is outside this table (max weight {self.max_weight}"
                + (", weight 10 unsupported" if c.weight == 10 else "")
                + ")")
        return self.entries[c]

    def verify_numeric(self, tol: float = 1e-6) -> float:
        """Compare each entry against direct summation. Returns the maximum
        absolute deviation; raises MathError beyond tol."""
        worst = 0.0
        for comp in sorted(self.entries, key=lambda c: (c.weight, c.parts)):
            direct = zeta_composition_numeric(comp, tol / 4)
            symbolic = numeric_eval(self.entries[comp], tol / 4)
            dev = abs(direct - symbolic)
            worst = max(worst, dev)
            if dev > tol:
                raise MathError(
                    f"numeric verification failed for {comp}: |{direct} - {symbolic}| = {dev}")
        return worst


@lru_cache(maxsize=None)
def _build(max_weight: int) -> ReductionTable:
    entries: dict[Composition, MzvExpr] = {}
    for w in SUPPORTED_WEIGHTS:
        if w > max_weight:
            continue
        entries.update(_solve_weight(w))
    return ReductionTable(max_weight, entries)


def build_reduction_table(max_weight: int = DEFAULT_MAX_WEIGHT, verify: bool = True,
                          verify_tol: float = 1e-6) -> ReductionTable:
    """Harvest and solve all supported weights <= max_weight.

    With verify=True (the default, per the table's construction contract)
    every entry is checked against the direct-summation oracle.
    """
    if max_weight < 2 or max_weight > 11:
        raise UsageError("max_weight must be between 2 and 11")
    table = _build(max_weight)
    if verify:
        _verified_once(max_weight, verify_tol)
    return table


@lru_cache(maxsize=None)
def _verified_once(max_weight: int, tol: float) -> float:
    return _build(max_weight).verify_numeric(tol)


def zeta_word(w: Word, table: ReductionTable) -> MzvExpr:
    """Shuffle-regularized zeta of a word, reduced to the basis."""
    if w.length == 0:
        return MzvExpr.rational(1)
    if not table.supports_weight(w.length):
        raise TruncationError(f"word {w} has weight {w.length} beyond the table")
    acc = MzvExpr.zero()
    for adm, coeff in shuffle_regularize(w).items():
        acc = acc + table.reduce(adm.to_composition()).scale(coeff)
    return acc
