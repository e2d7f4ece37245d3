"""Words, lasso words, and transducer output values.

Finite words are immutable tuples of symbols.  Infinite words are carried by
their ultimately periodic representatives ("lassos") u(v)^w, which is the
fragment every evaluator and every property test in this package works over.
A symbol is any hashable value; plain machines use one-character strings and
annotated machines use tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterable, Iterator

Symbol = Hashable


@dataclass(frozen=True)
class Alphabet:
    """A finite, ordered set of symbols."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbols in alphabet")

    def __contains__(self, sym: Symbol) -> bool:
        return sym in self.symbols

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @staticmethod
    def of(chars: str) -> "Alphabet":
        return Alphabet(tuple(chars))


@dataclass(frozen=True)
class Word:
    """A finite word; an immutable sequence of symbols."""

    letters: tuple[Symbol, ...] = ()

    @staticmethod
    def of(text: str) -> "Word":
        """One symbol per character."""
        return Word(tuple(text))

    @staticmethod
    def concat(parts: Iterable["Word"]) -> "Word":
        out: list[Symbol] = []
        for p in parts:
            out.extend(p.letters)
        return Word(tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.letters[idx])
        return self.letters[idx]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def reverse(self) -> "Word":
        return Word(self.letters[::-1])

    def times(self, n: int) -> "Word":
        return Word(self.letters * n)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EPSILON = Word(())


def _primitive_root(loop: tuple[Symbol, ...]) -> tuple[Symbol, ...]:
    n = len(loop)
    for d in range(1, n + 1):
        if n % d == 0 and loop[:d] * (n // d) == loop:
            return loop[:d]
    return loop


@dataclass(frozen=True)
class LassoWord:
    """An ultimately periodic word u.v^w, given by prefix u and loop v.

    The loop must be nonempty.  Two lassos denote the same infinite word iff
    their normal forms coincide; see lasso_normalize.
    """

    prefix: Word
    loop: Word

    def __post_init__(self) -> None:
        if len(self.loop) == 0:
            raise ValueError("lasso loop must be nonempty")

    @staticmethod
    def of(prefix: str, loop: str) -> "LassoWord":
        return LassoWord(Word.of(prefix), Word.of(loop))

    def at(self, i: int) -> Symbol:
        """Letter at position i (0-based) of the infinite word."""
        if i < len(self.prefix):
            return self.prefix.letters[i]
        return self.loop.letters[(i - len(self.prefix)) % len(self.loop)]

    def head(self, n: int) -> Word:
        """The first n letters."""
        return Word(tuple(self.at(i) for i in range(n)))

    def suffix(self, i: int) -> "LassoWord":
        """The infinite word with the first i letters dropped (not normalized)."""
        if i <= len(self.prefix):
            return LassoWord(self.prefix[i:], self.loop)
        k = (i - len(self.prefix)) % len(self.loop)
        return LassoWord(EPSILON, self.loop[k:] + self.loop[:k])

    def unroll(self, copies: int) -> "LassoWord":
        """Same word, with `copies` extra loop copies folded into the prefix."""
        return LassoWord(self.prefix + self.loop.times(copies), self.loop)

    def __str__(self) -> str:
        return format_lasso(self)

    def __repr__(self) -> str:
        return f"LassoWord({format_lasso(self)!r})"


def lasso_normalize(w: LassoWord) -> LassoWord:
    """Canonical representative: primitive loop, then shortest prefix.

    Absorbing the last prefix letter into the loop (rotating the loop right)
    preserves the infinite word; the normal form is the fixpoint.  Distinct
    normal forms denote distinct infinite words.
    """
    loop = _primitive_root(w.loop.letters)
    prefix = list(w.prefix.letters)
    loop = list(loop)
    while prefix and prefix[-1] == loop[-1]:
        prefix.pop()
        loop = [loop[-1]] + loop[:-1]
    return LassoWord(Word(tuple(prefix)), Word(tuple(loop)))


def lasso_equal(a: LassoWord, b: LassoWord) -> bool:
    """Do the two lassos denote the same infinite word?"""
    na, nb = lasso_normalize(a), lasso_normalize(b)
    return na.prefix == nb.prefix and na.loop == nb.loop


def lasso_unrolled_equal(a: LassoWord, b: LassoWord) -> bool:
    """Reference comparison by unrolling both words far enough.

    Agreement up to |u1|+|u2|+2*lcm(|v1|,|v2|) letters decides equality of
    ultimately periodic words with these representations.
    """
    la, lb = len(a.loop), len(b.loop)
    bound = len(a.prefix) + len(b.prefix) + 2 * (la * lb // gcd(la, lb))
    return a.head(bound) == b.head(bound)


# ---------------------------------------------------------------------------
# Output values


class Undef:
    """The undefined transducer output (absorbing)."""

    _instance: "Undef | None" = None

    def __new__(cls) -> "Undef":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEF"


UNDEF = Undef()


@dataclass(frozen=True)
class Fin:
    """A finite output word (possibly empty)."""

    word: Word

    def __repr__(self) -> str:
        return f"Fin({format_word(self.word)!r})"


@dataclass(frozen=True)
class InfLasso:
    """An infinite output word, represented by a lasso."""

    lasso: LassoWord

    def normalized(self) -> "InfLasso":
        return InfLasso(lasso_normalize(self.lasso))

    def __repr__(self) -> str:
        return f"InfLasso({format_lasso(self.lasso)!r})"


Output = Fin | InfLasso | Undef


def output_equal(x: Output, y: Output) -> bool:
    if isinstance(x, Undef) or isinstance(y, Undef):
        return isinstance(x, Undef) and isinstance(y, Undef)
    if isinstance(x, Fin) and isinstance(y, Fin):
        return x.word == y.word
    if isinstance(x, InfLasso) and isinstance(y, InfLasso):
        return lasso_equal(x.lasso, y.lasso)
    return False


# ---------------------------------------------------------------------------
# Textual syntax.  Finite words render one character per symbol, with the
# empty word written `_`.  Lassos render as u(v)^w.


def format_word(w: Word) -> str:
    if not w.letters:
        return "_"
    if all(isinstance(s, str) and len(s) == 1 for s in w.letters):
        return "".join(w.letters)  # type: ignore[arg-type]
    return "".join(f"<{s}>" for s in w.letters)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "_" or text == "":
        return EPSILON
    return Word.of(text)


_LASSO_RE = re.compile(r"^(.*)\((.+)\)\^w$")


def format_lasso(w: LassoWord) -> str:
    pre = "" if not w.prefix else format_word(w.prefix)
    return f"{pre}({format_word(w.loop)})^w"


def parse_lasso(text: str) -> LassoWord:
    m = _LASSO_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a lasso word: {text!r} (expected u(v)^w)")
    return LassoWord(parse_word(m.group(1)), parse_word(m.group(2)))


def iter_words(symbols: Iterable[Symbol], max_len: int) -> Iterator[Word]:
    """All words over the symbols with length 0..max_len, shortest first."""
    syms = tuple(symbols)
    layer: list[tuple[Symbol, ...]] = [()]
    for _ in range(max_len + 1):
        for tup in layer:
            yield Word(tup)
        layer = [tup + (s,) for tup in layer for s in syms]
