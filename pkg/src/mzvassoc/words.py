"""Words over {x, y} and integer compositions.

Words index the noncommutative series; compositions index multiple zeta
values. An admissible word starts with x and ends with y and corresponds to
the admissible composition (n1, ..., nk) via x^(n1-1) y x^(n2-1) y ... x^(nk-1) y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .errors import ParseError

_TOKEN = re.compile(r"\s*([xy])(?:\^(\d+))?")


@dataclass(frozen=True)
class Word:
    """Immutable word over {x, y}, packed as a bit string (x=0, y=1).

    Bit i of ``bits`` is the letter at position i, so hashing and equality
    are O(1) on the packed integer.
    """

    bits: int
    length: int

    @staticmethod
    def from_letters(letters: str) -> "Word":
        bits = 0
        for i, ch in enumerate(letters):
            if ch == "y":
                bits |= 1 << i
            elif ch != "x":
                raise ParseError(f"invalid letter {ch!r} in word")
        return Word(bits, len(letters))

    @property
    def letters(self) -> str:
        return "".join("y" if (self.bits >> i) & 1 else "x" for i in range(self.length))

    @property
    def y_degree(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.length

    def __lt__(self, other: "Word") -> bool:
        # Lexicographic with x < y; a proper prefix sorts first.
        return self.letters < other.letters

    def __str__(self) -> str:
        return render_word(self)

    def concat(self, other: "Word") -> "Word":
        return Word(self.bits | (other.bits << self.length), self.length + other.length)

    def prefix(self, n: int) -> "Word":
        return Word(self.bits & ((1 << n) - 1), n)

    def suffix_from(self, i: int) -> "Word":
        return Word(self.bits >> i, self.length - i)

    def rotations(self) -> list["Word"]:
        return [self.suffix_from(i).concat(self.prefix(i)) for i in range(self.length)]

    @property
    def is_admissible(self) -> bool:
        """Empty, or starts with x and ends with y."""
        if self.length == 0:
            return True
        first_y = self.bits & 1
        last_y = (self.bits >> (self.length - 1)) & 1
        return not first_y and bool(last_y)

    def x_runs(self) -> tuple[int, ...]:
        """For a word x^k0 y x^k1 y ... y x^kd, the tuple (k0, ..., kd)."""
        runs = []
        run = 0
        for i in range(self.length):
            if (self.bits >> i) & 1:
                runs.append(run)
                run = 0
            else:
                run += 1
        runs.append(run)
        return tuple(runs)

    def to_composition(self) -> "Composition":
        if self.length == 0:
            return Composition(())
        if not self.is_admissible:
            raise ValueError(f"word {self} is not admissible")
        runs = self.x_runs()  # last entry is 0
        return Composition(tuple(k + 1 for k in runs[:-1]))


EMPTY_WORD = Word(0, 0)
X = Word.from_letters("x")
Y = Word.from_letters("y")


def word_pow(letter: Word, n: int) -> Word:
    w = EMPTY_WORD
    for _ in range(n):
        w = w.concat(letter)
    return w


def deg1_word(a: int, b: int) -> Word:
    """x^a y x^b"""
    return word_pow(X, a).concat(Y).concat(word_pow(X, b))


def deg2_word(a: int, b: int, c: int) -> Word:
    """x^a y x^b y x^c"""
    return deg1_word(a, b).concat(Y).concat(word_pow(X, c))


def parse_word(text: str) -> Word:
    """Parse ``("x"|"y")("^" uint)?...`` with optional whitespace into a Word.

    Zero exponents and stray characters are rejected.
    """
    pos = 0
    letters: list[str] = []
    matched_any = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"invalid word syntax at {text[pos:]!r}")
        matched_any = True
        letter, exp = m.group(1), m.group(2)
        n = int(exp) if exp is not None else 1
        if n == 0:
            raise ParseError("zero exponents are not allowed in words")
        letters.append(letter * n)
        pos = m.end()
    if not matched_any:
        raise ParseError("empty word")
    return Word.from_letters("".join(letters))


def render_word(w: Word) -> str:
    """Canonical text form collapsing runs, e.g. xxyxxxxy -> x^2yx^4y."""
    if w.length == 0:
        return "1"
    out = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        out.append(letters[i] if run == 1 else f"{letters[i]}^{run}")
        i = j
    return "".join(out)


def all_words(length: int, max_y_degree: int = 2) -> list[Word]:
    """All words of the given length with at most max_y_degree y's, sorted."""
    words = []
    for d in range(min(max_y_degree, length) + 1):
        for positions in combinations(range(length), d):
            bits = 0
            for p in positions:
                bits |= 1 << p
            words.append(Word(bits, length))
    return sorted(words)


def words_up_to(max_len: int, max_y_degree: int = 2, min_len: int = 0) -> list[Word]:
    out: list[Word] = []
    for n in range(min_len, max_len + 1):
        out.extend(all_words(n, max_y_degree))
    return out


@dataclass(frozen=True)
class Composition:
    """Finite sequence of positive integers; admissible iff empty or first part >= 2."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("composition parts must be >= 1")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def is_admissible(self) -> bool:
        return not self.parts or self.parts[0] >= 2

    def to_word(self) -> Word:
        w = EMPTY_WORD
        for n in self.parts:
            w = w.concat(word_pow(X, n - 1)).concat(Y)
        return w

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def parse_composition(text: str) -> Composition:
    """Parse "4,2" (optionally with spaces) into a Composition."""
    body = text.strip()
    if not body:
        raise ParseError("empty composition")
    parts = []
    for piece in body.split(","):
        piece = piece.strip()
        if not piece.isdigit():
            raise ParseError(f"invalid composition part {piece!r}")
        n = int(piece)
        if n < 1:
            raise ParseError("composition parts must be >= 1")
        parts.append(n)
    return Composition(tuple(parts))
