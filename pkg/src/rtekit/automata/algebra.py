"""Finite-monoid machinery behind domain reasoning and ω-languages.

A Morphism carries the submonoid generated by letter images under an
arbitrary associative product, with shortest witness words per element.
OmegaAlgebra represents an ω-regular language as a morphism plus the set of
accepting linked pairs; membership of a lasso word is an exact table lookup,
and boolean operations are set operations over a common (product) morphism.
The split-profile morphisms enrich a product of two morphisms with the set
of factorization behaviours, which is what makes prefix-concatenation and
double-split (ambiguity) languages recognizable by the same machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator

from ..words import EPSILON, LassoWord, Symbol, Word
from .finite import Dfa, minimize

Elem = Hashable


@dataclass
class Morphism:
    """Monoid morphism Σ* → M, restricted to the generated submonoid."""

    alphabet: tuple[Symbol, ...]
    letter_image: dict[Symbol, Elem]
    mul: Callable[[Elem, Elem], Elem]
    unit: Elem
    elements: tuple[Elem, ...] = field(default=())
    semigroup: frozenset[Elem] = field(default=frozenset())
    _witness: dict[Elem, Word] = field(default_factory=dict)
    _nonempty_witness: dict[Elem, Word] = field(default_factory=dict)
    _cache: dict[tuple[Elem, Elem], Elem] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.elements:
            return
        seen: dict[Elem, Word] = {}
        frontier: list[Elem] = []
        for a in self.alphabet:
            m = self.letter_image[a]
            if m not in seen:
                seen[m] = Word((a,))
                frontier.append(m)
        while frontier:
            nxt = []
            for m in frontier:
                for a in self.alphabet:
                    r = self.times(m, self.letter_image[a])
                    if r not in seen:
                        seen[r] = seen[m] + Word((a,))
                        nxt.append(r)
            frontier = nxt
        self.semigroup = frozenset(seen)
        self._nonempty_witness = dict(seen)
        self._witness = dict(seen)
        self._witness[self.unit] = EPSILON
        order = [self.unit] + [m for m in seen if m != self.unit]
        self.elements = tuple(order)

    def times(self, x: Elem, y: Elem) -> Elem:
        key = (x, y)
        out = self._cache.get(key)
        if out is None:
            out = self.mul(x, y)
            self._cache[key] = out
        return out

    def image(self, w: Word) -> Elem:
        m = self.unit
        for a in w.letters:
            m = self.times(m, self.letter_image[a])
        return m

    def witness(self, m: Elem) -> Word:
        return self._witness[m]

    def nonempty_witness(self, m: Elem) -> Word:
        return self._nonempty_witness[m]

    def is_idempotent(self, m: Elem) -> bool:
        return self.times(m, m) == m

    def idempotent_power(self, m: Elem) -> Elem:
        """The unique idempotent in the cyclic semigroup generated by m."""
        seen: dict[Elem, int] = {}
        cur = m
        while cur not in seen:
            seen[cur] = len(seen)
            cur = self.times(cur, m)
        cycle_start = seen[cur]
        cycle = [e for e, i in seen.items() if i >= cycle_start]
        for e in cycle:
            if self.is_idempotent(e):
                return e
        raise AssertionError("cyclic semigroup without idempotent")

    def idempotents(self) -> list[Elem]:
        return [m for m in self.elements if self.is_idempotent(m)]

    def linked_pairs(self) -> list[tuple[Elem, Elem]]:
        """Pairs (s, e) with s·e = s and e idempotent, e from the semigroup."""
        out = []
        for s in self.elements:
            for e in self.semigroup:
                if self.times(e, e) == e and self.times(s, e) == s:
                    out.append((s, e))
        return out

    def lasso_pair(self, w: LassoWord) -> tuple[Elem, Elem]:
        """The canonical linked pair recognizing the lasso word."""
        e = self.idempotent_power(self.image(w.loop))
        s = self.times(self.image(w.prefix), e)
        return s, e


def dfa_transition_morphism(d: Dfa) -> Morphism:
    """Right action of words on DFA states, as tuples indexed by state."""
    def img(a: Symbol) -> tuple[int, ...]:
        return tuple(d.trans[(q, a)] for q in range(d.n))

    def mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(y[q] for q in x)

    return Morphism(
        d.alphabet, {a: img(a) for a in d.alphabet}, mul, tuple(range(d.n))
    )


def preimage_dfa(phi: Morphism, targets: Iterable[Elem]) -> Dfa:
    """DFA for φ⁻¹(targets), running the Cayley right action from the unit."""
    index = {m: i for i, m in enumerate(phi.elements)}
    trans = {
        (i, a): index[phi.times(m, phi.letter_image[a])]
        for m, i in index.items()
        for a in phi.alphabet
    }
    finals = frozenset(index[t] for t in targets if t in index)
    return minimize(Dfa(len(index), phi.alphabet, trans, index[phi.unit], finals))


def product_morphism(m1: Morphism, m2: Morphism) -> Morphism:
    if m1.alphabet != m2.alphabet:
        raise ValueError("alphabet mismatch")

    def mul(x: tuple, y: tuple) -> tuple:
        return (m1.times(x[0], y[0]), m2.times(x[1], y[1]))

    images = {
        a: (m1.letter_image[a], m2.letter_image[a]) for a in m1.alphabet
    }
    return Morphism(m1.alphabet, images, mul, (m1.unit, m2.unit))


# ---------------------------------------------------------------------------
# Split profiles.  Elements carry, besides the two component images, the set
# of behaviours (image of p under m1, image of r under m2, p=ε?, r=ε?) over
# all two-part splits w = p·r; the double variant adds ordered pairs of
# distinct splits.  Both compose associatively, so prefix languages W·L and
# two-split ambiguity languages become recognizable over these morphisms.

_Split = tuple  # (p_image, r_image, p_is_eps, r_is_eps)


def _splits_of_letter(m1: Morphism, m2: Morphism, a: Symbol) -> frozenset:
    return frozenset(
        {
            (m1.unit, m2.letter_image[a], True, False),
            (m1.letter_image[a], m2.unit, False, True),
        }
    )


def _compose_splits(
    m1: Morphism, m2: Morphism, x: tuple, y: tuple
) -> frozenset:
    ax, _, ex, sx = x[0], x[1], x[2], x[3]
    _, by, ey, sy = y[0], y[1], y[2], y[3]
    out = set()
    for (p, r, pe, re) in sx:
        out.add((p, m2.times(r, y[1]), pe, re and ey))
    for (p, r, pe, re) in sy:
        out.add((m1.times(ax, p), r, pe and ex, re))
    return frozenset(out)


def split_profile_morphism(m1: Morphism, m2: Morphism) -> Morphism:
    """Elements (m1-image, m2-image, is-ε, split profile)."""
    if m1.alphabet != m2.alphabet:
        raise ValueError("alphabet mismatch")

    def mul(x: tuple, y: tuple) -> tuple:
        return (
            m1.times(x[0], y[0]),
            m2.times(x[1], y[1]),
            x[2] and y[2],
            _compose_splits(m1, m2, x, y),
        )

    unit = (
        m1.unit, m2.unit, True,
        frozenset({(m1.unit, m2.unit, True, True)}),
    )
    images = {
        a: (
            m1.letter_image[a], m2.letter_image[a], False,
            _splits_of_letter(m1, m2, a),
        )
        for a in m1.alphabet
    }
    return Morphism(m1.alphabet, images, mul, unit)


def double_split_profile_morphism(m1: Morphism, m2: Morphism) -> Morphism:
    """Split profiles plus ordered pairs of two distinct splits."""
    if m1.alphabet != m2.alphabet:
        raise ValueError("alphabet mismatch")

    def adj_left(e: _Split, y: tuple) -> _Split:
        return (e[0], m2.times(e[1], y[1]), e[2], e[3] and y[2])

    def adj_right(e: _Split, x: tuple) -> _Split:
        return (m1.times(x[0], e[0]), e[1], e[2] and x[2], e[3])

    def mul(x: tuple, y: tuple) -> tuple:
        s1 = frozenset(
            {adj_left(e, y) for e in x[3]} | {adj_right(e, x) for e in y[3]}
        )
        pairs = set()
        for (e1, e2) in x[4]:
            pairs.add((adj_left(e1, y), adj_left(e2, y)))
        for (e1, e2) in y[4]:
            pairs.add((adj_right(e1, x), adj_right(e2, x)))
        for e1 in x[3]:
            for e2 in y[3]:
                if e1[3] and e2[2]:
                    continue  # same position counted from both sides
                pairs.add((adj_left(e1, y), adj_right(e2, x)))
        return (
            m1.times(x[0], y[0]),
            m2.times(x[1], y[1]),
            x[2] and y[2],
            s1,
            frozenset(pairs),
        )

    unit = (
        m1.unit, m2.unit, True,
        frozenset({(m1.unit, m2.unit, True, True)}),
        frozenset(),
    )
    images = {
        a: (
            m1.letter_image[a], m2.letter_image[a], False,
            _splits_of_letter(m1, m2, a),
            frozenset(),
        )
        for a in m1.alphabet
    }
    return Morphism(m1.alphabet, images, mul, unit)


# ---------------------------------------------------------------------------
# Algebraic ω-languages


@dataclass
class OmegaAlgebra:
    """ω-regular language as ∪ [s]·[e]^ω over accepting linked pairs.

    Exactness rests on the morphism recognizing the language (every linked
    class is inside or disjoint from it); constructions in this package pick
    morphisms with that property and verify it on sampled witnesses.
    """

    phi: Morphism
    acc: frozenset[tuple[Elem, Elem]]

    def member(self, w: LassoWord) -> bool:
        return self.phi.lasso_pair(w) in self.acc

    def complement(self) -> "OmegaAlgebra":
        rest = frozenset(self.phi.linked_pairs()) - self.acc
        return OmegaAlgebra(self.phi, rest)

    def is_empty(self) -> bool:
        return not self.acc

    def witness(self) -> LassoWord | None:
        for (s, e) in self.acc:
            return LassoWord(self.phi.witness(s), self.phi.nonempty_witness(e))
        return None


def omega_from_oracle(
    phi: Morphism, oracle: Callable[[LassoWord], bool]
) -> OmegaAlgebra:
    """Accepting pairs decided by the oracle on one witness lasso each."""
    acc = set()
    for (s, e) in phi.linked_pairs():
        w = LassoWord(phi.witness(s), phi.nonempty_witness(e))
        if oracle(w):
            acc.add((s, e))
    return OmegaAlgebra(phi, frozenset(acc))


def omega_binop(
    a: OmegaAlgebra, b: OmegaAlgebra, op: Callable[[bool, bool], bool]
) -> OmegaAlgebra:
    """Boolean combination over the product morphism (exact)."""
    phi = product_morphism(a.phi, b.phi)
    acc = set()
    for (s, e) in phi.linked_pairs():
        ina = (phi.times(s, e)[0], e[0]) in a.acc or (s[0], e[0]) in a.acc
        inb = (s[1], e[1]) in b.acc or (phi.times(s, e)[1], e[1]) in b.acc
        if op((s[0], e[0]) in a.acc, (s[1], e[1]) in b.acc):
            acc.add((s, e))
    return OmegaAlgebra(phi, frozenset(acc))


def omega_intersect(a: OmegaAlgebra, b: OmegaAlgebra) -> OmegaAlgebra:
    return omega_binop(a, b, lambda x, y: x and y)


def omega_union(a: OmegaAlgebra, b: OmegaAlgebra) -> OmegaAlgebra:
    return omega_binop(a, b, lambda x, y: x or y)


def omega_difference(a: OmegaAlgebra, b: OmegaAlgebra) -> OmegaAlgebra:
    return omega_binop(a, b, lambda x, y: x and not y)


def omega_equal(a: OmegaAlgebra, b: OmegaAlgebra) -> bool:
    return omega_difference(a, b).is_empty() and omega_difference(b, a).is_empty()


def words_for(phi: Morphism, m: Elem, limit: int, max_len: int) -> list[Word]:
    """Up to `limit` distinct words with image m (for saturation sampling)."""
    out: list[Word] = []
    layer: list[tuple[Word, Elem]] = [(EPSILON, phi.unit)]
    for _ in range(max_len + 1):
        for w, img in layer:
            if img == m:
                out.append(w)
                if len(out) >= limit:
                    return out
        layer = [
            (w + Word((a,)), phi.times(img, phi.letter_image[a]))
            for w, img in layer
            for a in phi.alphabet
        ]
    return out


def check_saturation_sampled(
    phi: Morphism,
    oracle: Callable[[LassoWord], bool],
    variants: int = 3,
    max_len: int = 6,
) -> tuple[Elem, Elem] | None:
    """Return a linked pair whose witness lassos disagree, or None.

    Disagreement means the morphism does not recognize the oracle's
    language, so an algebra built over it would be unsound.
    """
    for (s, e) in phi.linked_pairs():
        answers = set()
        ss = words_for(phi, s, variants, max_len) or [phi.witness(s)]
        es = [w for w in words_for(phi, e, variants + 1, max_len) if len(w)]
        if not es:
            es = [phi.nonempty_witness(e)]
        for ws in ss:
            for we in es:
                answers.add(oracle(LassoWord(ws, we)))
        if len(answers) > 1:
            return (s, e)
    return None
