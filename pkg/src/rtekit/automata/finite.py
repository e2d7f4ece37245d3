"""Rational expressions, NFAs, DFAs, and concatenation-ambiguity analyses.

The unambiguity machinery (ambiguous_concat_lang, ambiguous_plus_lang,
regex_node_unambiguity) backs the domain computation of split-style
combinators and the goodness checker: a product automaton tracks two parses
of the same word with a forced difference between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..words import EPSILON, Symbol, Word

# ---------------------------------------------------------------------------
# Rational expressions


class RatExpr:
    """Base class for rational-expression AST nodes."""

    def __str__(self) -> str:
        return format_regex(self)


@dataclass(frozen=True)
class Empty(RatExpr):
    pass


@dataclass(frozen=True)
class Eps(RatExpr):
    pass


@dataclass(frozen=True)
class Atom(RatExpr):
    sym: Symbol


@dataclass(frozen=True)
class Union(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Concat(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Plus(RatExpr):
    body: RatExpr


def star(e: RatExpr) -> RatExpr:
    """Kleene star as the derived form ε ∪ e⁺."""
    return Union(Eps(), Plus(e))


def opt(e: RatExpr) -> RatExpr:
    return Union(Eps(), e)


def power(e: RatExpr, n: int) -> RatExpr:
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return Eps()
    out = e
    for _ in range(n - 1):
        out = Concat(out, e)
    return out


def regex_atoms(e: RatExpr) -> set[Symbol]:
    if isinstance(e, Atom):
        return {e.sym}
    if isinstance(e, (Union, Concat)):
        return regex_atoms(e.left) | regex_atoms(e.right)
    if isinstance(e, Plus):
        return regex_atoms(e.body)
    return set()


# ---------------------------------------------------------------------------
# Concrete syntax.  Union `|`, concatenation by juxtaposition, postfix
# `*` `+` `^n` `?`, parentheses, one character per atom.  Specials are
# escaped with a backslash; `\e` and `\0` denote ε and ∅.

_SPECIALS = set("|()*+^?/\\")


class _RegexParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ValueError:
        return ValueError(f"regex syntax error at column {self.pos + 1}: {msg}")

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> RatExpr:
        e = self.alt()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return e

    def alt(self) -> RatExpr:
        e = self.cat()
        while self.peek() == "|":
            self.pos += 1
            e = Union(e, self.cat())
        return e

    def cat(self) -> RatExpr:
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            parts.append(self.post())
        if not parts:
            return Eps()
        e = parts[0]
        for p in parts[1:]:
            e = Concat(e, p)
        return e

    def post(self) -> RatExpr:
        e = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                e = star(e)
            elif c == "+":
                e = Plus(e)
            elif c == "?":
                e = opt(e)
            elif c == "^":
                self.pos += 1
                digits = ""
                while (d := self.peek()) is not None and d.isdigit():
                    digits += d
                    self.pos += 1
                if not digits:
                    raise self.error("expected a number after ^")
                e = power(e, int(digits))
                continue
            else:
                return e
            self.pos += 1

    def atom(self) -> RatExpr:
        c = self.peek()
        if c is None:
            raise self.error("expected an atom")
        if c == "(":
            self.pos += 1
            e = self.alt()
            if self.peek() != ")":
                raise self.error("expected )")
            self.pos += 1
            return e
        if c == "\\":
            self.pos += 1
            c2 = self.peek()
            if c2 is None:
                raise self.error("dangling backslash")
            self.pos += 1
            if c2 == "e":
                return Eps()
            if c2 == "0":
                return Empty()
            return Atom(c2)
        if c in _SPECIALS:
            raise self.error(f"unexpected {c!r}")
        self.pos += 1
        return Atom(c)


def parse_regex(text: str) -> RatExpr:
    return _RegexParser(text).parse()


def format_regex(e: RatExpr) -> str:
    def fmt(e: RatExpr, prec: int) -> str:
        # prec: 0 = union context, 1 = concat, 2 = postfix operand
        if isinstance(e, Empty):
            return "\\0"
        if isinstance(e, Eps):
            return "\\e"
        if isinstance(e, Atom):
            s = str(e.sym)
            return "\\" + s if s in _SPECIALS else s
        if isinstance(e, Union):
            if isinstance(e.left, Eps):  # sugar: ε ∪ x prints as x?
                return fmt(e.right, 2) + "?"
            out = fmt(e.left, 0) + "|" + fmt(e.right, 0)
            return "(" + out + ")" if prec > 0 else out
        if isinstance(e, Concat):
            out = fmt(e.left, 1) + fmt(e.right, 1)
            return "(" + out + ")" if prec > 1 else out
        if isinstance(e, Plus):
            return fmt(e.body, 2) + "+"
        raise TypeError(f"not a RatExpr: {e!r}")

    # special-case the derived star so ε ∪ x⁺ round-trips as x*
    if isinstance(e, Union) and isinstance(e.left, Eps) and isinstance(e.right, Plus):
        return fmt(e.right.body, 2) + "*"
    return fmt(e, 0)


# ---------------------------------------------------------------------------
# NFAs


@dataclass
class Nfa:
    """ε-NFA with integer states."""

    n: int
    alphabet: tuple[Symbol, ...]
    eps: dict[int, list[int]]
    trans: dict[tuple[int, Symbol], list[int]]
    inits: frozenset[int]
    finals: frozenset[int]

    def eps_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for r in self.eps.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)


class _NfaBuilder:
    def __init__(self, alphabet: tuple[Symbol, ...]) -> None:
        self.alphabet = alphabet
        self.n = 0
        self.eps: dict[int, list[int]] = {}
        self.trans: dict[tuple[int, Symbol], list[int]] = {}

    def state(self) -> int:
        self.n += 1
        return self.n - 1

    def add_eps(self, p: int, q: int) -> None:
        self.eps.setdefault(p, []).append(q)

    def add(self, p: int, a: Symbol, q: int) -> None:
        self.trans.setdefault((p, a), []).append(q)

    def build(self, inits: Iterable[int], finals: Iterable[int]) -> Nfa:
        return Nfa(
            self.n, self.alphabet, self.eps, self.trans,
            frozenset(inits), frozenset(finals),
        )


def regex_to_nfa(e: RatExpr, alphabet: Iterable[Symbol]) -> Nfa:
    """Thompson construction; one initial and one final state."""
    b = _NfaBuilder(tuple(alphabet))

    def go(e: RatExpr) -> tuple[int, int]:
        i, f = b.state(), b.state()
        if isinstance(e, Empty):
            pass
        elif isinstance(e, Eps):
            b.add_eps(i, f)
        elif isinstance(e, Atom):
            if e.sym not in b.alphabet:
                raise ValueError(f"atom {e.sym!r} not in alphabet")
            b.add(i, e.sym, f)
        elif isinstance(e, Union):
            li, lf = go(e.left)
            ri, rf = go(e.right)
            b.add_eps(i, li)
            b.add_eps(i, ri)
            b.add_eps(lf, f)
            b.add_eps(rf, f)
        elif isinstance(e, Concat):
            li, lf = go(e.left)
            ri, rf = go(e.right)
            b.add_eps(i, li)
            b.add_eps(lf, ri)
            b.add_eps(rf, f)
        elif isinstance(e, Plus):
            ci, cf = go(e.body)
            b.add_eps(i, ci)
            b.add_eps(cf, f)
            b.add_eps(cf, ci)
        else:
            raise TypeError(f"not a RatExpr: {e!r}")
        return i, f

    i, f = go(e)
    return b.build([i], [f])


# ---------------------------------------------------------------------------
# DFAs (always total over their alphabet)


@dataclass
class Dfa:
    n: int
    alphabet: tuple[Symbol, ...]
    trans: dict[tuple[int, Symbol], int]
    init: int
    finals: frozenset[int]

    def step(self, q: int, a: Symbol) -> int:
        return self.trans[(q, a)]

    def run_from(self, q: int, w: Word) -> int:
        for a in w.letters:
            q = self.trans[(q, a)]
        return q

    def accepts(self, w: Word) -> bool:
        return self.run_from(self.init, w) in self.finals


def accepts(a: Dfa, w: Word) -> bool:
    return a.accepts(w)


def determinize(n: Nfa) -> Dfa:
    """Subset construction over ε-closures; result is total."""
    start = n.eps_closure(n.inits)
    index: dict[frozenset[int], int] = {start: 0}
    order = [start]
    trans: dict[tuple[int, Symbol], int] = {}
    i = 0
    while i < len(order):
        cur = order[i]
        for a in n.alphabet:
            nxt = set()
            for q in cur:
                nxt.update(n.trans.get((q, a), ()))
            tgt = n.eps_closure(nxt)
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            trans[(i, a)] = index[tgt]
        i += 1
    finals = frozenset(
        idx for subset, idx in index.items() if subset & n.finals
    )
    return Dfa(len(order), n.alphabet, trans, 0, finals)


def rat_to_dfa(e: RatExpr, alphabet: Iterable[Symbol]) -> Dfa:
    return minimize(determinize(regex_to_nfa(e, alphabet)))


def _reachable(d: Dfa) -> list[int]:
    seen = [False] * d.n
    seen[d.init] = True
    stack = [d.init]
    order = [d.init]
    while stack:
        q = stack.pop()
        for a in d.alphabet:
            r = d.trans[(q, a)]
            if not seen[r]:
                seen[r] = True
                stack.append(r)
                order.append(r)
    return order


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part."""
    reach = _reachable(d)
    block = {q: (q in d.finals) for q in reach}
    while True:
        sig = {
            q: (block[q],) + tuple(block[d.trans[(q, a)]] for a in d.alphabet)
            for q in reach
        }
        groups: dict[tuple, int] = {}
        newblock = {}
        for q in reach:
            newblock[q] = groups.setdefault(sig[q], len(groups))
        if len(groups) == len(set(block.values())):
            block = newblock
            break
        block = newblock
    # renumber blocks in BFS order from the initial block
    remap: dict[int, int] = {}

    def bid(q: int) -> int:
        b = block[q]
        if b not in remap:
            remap[b] = len(remap)
        return remap[b]

    init = bid(d.init)
    trans: dict[tuple[int, Symbol], int] = {}
    finals = set()
    frontier = [d.init]
    seen_blocks = {block[d.init]}
    while frontier:
        q = frontier.pop(0)
        if q in d.finals:
            finals.add(bid(q))
        for a in d.alphabet:
            r = d.trans[(q, a)]
            trans[(bid(q), a)] = bid(r)
            if block[r] not in seen_blocks:
                seen_blocks.add(block[r])
                frontier.append(r)
    return Dfa(len(remap), d.alphabet, trans, init, frozenset(finals))


def _check_same_alphabet(a: Dfa, b: Dfa) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError(
            f"alphabet mismatch: {a.alphabet!r} vs {b.alphabet!r}"
        )


def product(a: Dfa, b: Dfa, final: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable product; acceptance combined by `final`."""
    _check_same_alphabet(a, b)
    index = {(a.init, b.init): 0}
    order = [(a.init, b.init)]
    trans: dict[tuple[int, Symbol], int] = {}
    i = 0
    while i < len(order):
        p, q = order[i]
        for sym in a.alphabet:
            tgt = (a.trans[(p, sym)], b.trans[(q, sym)])
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            trans[(i, sym)] = index[tgt]
        i += 1
    finals = frozenset(
        i for (p, q), i in index.items()
        if final(p in a.finals, q in b.finals)
    )
    return Dfa(len(order), a.alphabet, trans, 0, finals)


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and y)


def union(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x or y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and not y)


def complement(a: Dfa) -> Dfa:
    return Dfa(a.n, a.alphabet, dict(a.trans), a.init,
               frozenset(range(a.n)) - a.finals)


def is_empty(a: Dfa) -> bool:
    return not any(q in a.finals for q in _reachable(a))


def shortest_word(a: Dfa) -> Word | None:
    """A shortest accepted word, or None if the language is empty."""
    if a.init in a.finals:
        return EPSILON
    parent: dict[int, tuple[int, Symbol]] = {}
    frontier = [a.init]
    seen = {a.init}
    while frontier:
        nxt = []
        for q in frontier:
            for sym in a.alphabet:
                r = a.trans[(q, sym)]
                if r not in seen:
                    seen.add(r)
                    parent[r] = (q, sym)
                    if r in a.finals:
                        letters = []
                        cur = r
                        while cur in parent:
                            p, s = parent[cur]
                            letters.append(s)
                            cur = p
                        return Word(tuple(reversed(letters)))
                    nxt.append(r)
        frontier = nxt
    return None


def distinguishing_word(a: Dfa, b: Dfa) -> Word | None:
    """A shortest word accepted by exactly one of the two, else None."""
    return shortest_word(product(a, b, lambda x, y: x != y))


def language_equiv(a: Dfa, b: Dfa) -> bool:
    return distinguishing_word(a, b) is None


# ---------------------------------------------------------------------------
# NFA-level language combinators (used to assemble ambiguity languages)


def dfa_to_nfa(d: Dfa) -> Nfa:
    trans = {k: [v] for k, v in d.trans.items()}
    return Nfa(d.n, d.alphabet, {}, trans, frozenset([d.init]), d.finals)


def _nfa_shift(b: _NfaBuilder, n: Nfa) -> tuple[int, frozenset[int], frozenset[int]]:
    off = b.n
    b.n += n.n
    for p, qs in n.eps.items():
        for q in qs:
            b.add_eps(p + off, q + off)
    for (p, a), qs in n.trans.items():
        for q in qs:
            b.add(p + off, a, q + off)
    return off, frozenset(i + off for i in n.inits), frozenset(f + off for f in n.finals)


def nfa_concat(x: Nfa, y: Nfa) -> Nfa:
    b = _NfaBuilder(x.alphabet)
    _, xi, xf = _nfa_shift(b, x)
    _, yi, yf = _nfa_shift(b, y)
    for f in xf:
        for i in yi:
            b.add_eps(f, i)
    return b.build(xi, yf)


def nfa_star(x: Nfa) -> Nfa:
    b = _NfaBuilder(x.alphabet)
    _, xi, xf = _nfa_shift(b, x)
    hub = b.state()
    for i in xi:
        b.add_eps(hub, i)
    for f in xf:
        b.add_eps(f, hub)
    return b.build([hub], [hub])


def nfa_plus(x: Nfa) -> Nfa:
    b = _NfaBuilder(x.alphabet)
    _, xi, xf = _nfa_shift(b, x)
    for f in xf:
        for i in xi:
            b.add_eps(f, i)
    return b.build(xi, xf)


def concat_lang(a: Dfa, b: Dfa) -> Dfa:
    _check_same_alphabet(a, b)
    return minimize(determinize(nfa_concat(dfa_to_nfa(a), dfa_to_nfa(b))))


def star_lang(a: Dfa) -> Dfa:
    return minimize(determinize(nfa_star(dfa_to_nfa(a))))


def plus_lang(a: Dfa) -> Dfa:
    return minimize(determinize(nfa_plus(dfa_to_nfa(a))))


# ---------------------------------------------------------------------------
# Ambiguity languages


def ambiguous_concat_lang(l1: Dfa, l2: Dfa) -> Dfa:
    """Words with at least two splits u·v, u ∈ L1, v ∈ L2.

    Product NFA tracking two parses with a forced difference: phase 0 runs
    L1 alone; the earlier split starts an L2 run (phase 1, still tracking
    L1); after ≥1 letter the later split starts a second L2 run (phase 2).
    """
    _check_same_alphabet(l1, l2)
    b = _NfaBuilder(l1.alphabet)
    p0 = {q: b.state() for q in range(l1.n)}
    p1f = {(q, r): b.state() for q in range(l1.n) for r in range(l2.n)}
    p1r = {(q, r): b.state() for q in range(l1.n) for r in range(l2.n)}
    p2 = {(r, s): b.state() for r in range(l2.n) for s in range(l2.n)}
    for q in range(l1.n):
        for a in l1.alphabet:
            b.add(p0[q], a, p0[l1.trans[(q, a)]])
        if q in l1.finals:
            b.add_eps(p0[q], p1f[(q, l2.init)])
    for phase in (p1f, p1r):
        for (q, r), st in phase.items():
            for a in l1.alphabet:
                b.add(st, a, p1r[(l1.trans[(q, a)], l2.trans[(r, a)])])
    for (q, r), st in p1r.items():
        if q in l1.finals:
            b.add_eps(st, p2[(r, l2.init)])
    for (r, s), st in p2.items():
        for a in l1.alphabet:
            b.add(st, a, p2[(l2.trans[(r, a)], l2.trans[(s, a)])])
    finals = [p2[(r, s)] for r in l2.finals for s in l2.finals]
    nfa = b.build([p0[l1.init]], finals)
    return minimize(determinize(nfa))


class EpsilonBodyError(ValueError):
    """Raised when an iterated language contains the empty word."""


def ambiguous_plus_lang(l: Dfa) -> Dfa:
    """Words of L⁺ with at least two factorizations into L-blocks.

    Two distinct block factorizations first diverge after a common prefix
    of blocks, leaving a suffix with two distinct splits into L · L*.
    """
    if l.accepts(EPSILON):
        raise EpsilonBodyError("iterated language contains the empty word")
    suffix_amb = ambiguous_concat_lang(l, star_lang(l))
    k = nfa_concat(nfa_star(dfa_to_nfa(l)), dfa_to_nfa(suffix_amb))
    return minimize(determinize(k))


# ---------------------------------------------------------------------------
# Per-node unambiguity report


@dataclass(frozen=True)
class NodeCheck:
    node: RatExpr
    kind: str  # "union" | "concat" | "plus"
    ok: bool
    witness: Word | None = None


@dataclass(frozen=True)
class UnambiguityReport:
    expr: RatExpr
    checks: tuple[NodeCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[NodeCheck]:
        return [c for c in self.checks if not c.ok]


def regex_node_unambiguity(
    e: RatExpr, alphabet: Iterable[Symbol] | None = None
) -> UnambiguityReport:
    """Check every Union for disjointness, every Concat and Plus for a
    unique factorization; the overall verdict is their conjunction."""
    sigma = tuple(alphabet) if alphabet is not None else tuple(sorted(
        regex_atoms(e), key=repr))
    if not sigma:
        sigma = ("a",)
    checks: list[NodeCheck] = []

    def go(e: RatExpr) -> Dfa:
        if isinstance(e, (Empty, Eps, Atom)):
            return rat_to_dfa(e, sigma)
        if isinstance(e, Union):
            dl, dr = go(e.left), go(e.right)
            w = shortest_word(intersection(dl, dr))
            checks.append(NodeCheck(e, "union", w is None, w))
            return minimize(union(dl, dr))
        if isinstance(e, Concat):
            dl, dr = go(e.left), go(e.right)
            w = shortest_word(ambiguous_concat_lang(dl, dr))
            checks.append(NodeCheck(e, "concat", w is None, w))
            return concat_lang(dl, dr)
        if isinstance(e, Plus):
            d = go(e.body)
            if d.accepts(EPSILON):
                checks.append(NodeCheck(e, "plus", False, EPSILON))
            else:
                w = shortest_word(ambiguous_plus_lang(d))
                checks.append(NodeCheck(e, "plus", w is None, w))
            return plus_lang(d)
        raise TypeError(f"not a RatExpr: {e!r}")

    go(e)
    return UnambiguityReport(e, tuple(checks))


# ---------------------------------------------------------------------------
# DFA -> rational expression (state elimination; not unambiguity-preserving)


def _u(a: RatExpr, b: RatExpr) -> RatExpr:
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    if a == b:
        return a
    return Union(a, b)


def _c(a: RatExpr, b: RatExpr) -> RatExpr:
    if isinstance(a, Empty) or isinstance(b, Empty):
        return Empty()
    if isinstance(a, Eps):
        return b
    if isinstance(b, Eps):
        return a
    return Concat(a, b)


def _s(e: RatExpr) -> RatExpr:
    if isinstance(e, (Empty, Eps)):
        return Eps()
    if isinstance(e, Plus):
        return star(e.body)
    if isinstance(e, Union) and isinstance(e.left, Eps):
        return _s(e.right)
    return star(e)


def dfa_to_ratexpr(d: Dfa) -> RatExpr:
    """Language-preserving rational expression via state elimination."""
    reach = _reachable(d)
    src, snk = d.n, d.n + 1
    edge: dict[tuple[int, int], RatExpr] = {}

    def get(i: int, j: int) -> RatExpr:
        return edge.get((i, j), Empty())

    def put(i: int, j: int, e: RatExpr) -> None:
        if isinstance(e, Empty):
            edge.pop((i, j), None)
        else:
            edge[(i, j)] = e

    for q in reach:
        for a in d.alphabet:
            r = d.trans[(q, a)]
            if r in reach:
                put(q, r, _u(get(q, r), Atom(a)))
    put(src, d.init, _u(get(src, d.init), Eps()))
    for f in d.finals:
        if f in reach:
            put(f, snk, _u(get(f, snk), Eps()))
    for k in reach:
        loop = _s(get(k, k))
        ins = [(i, e) for (i, j), e in edge.items() if j == k and i != k]
        outs = [(j, e) for (i, j), e in edge.items() if i == k and j != k]
        for i, ei in ins:
            for j, ej in outs:
                put(i, j, _u(get(i, j), _c(ei, _c(loop, ej))))
        for i, _ in ins:
            edge.pop((i, k), None)
        for j, _ in outs:
            edge.pop((k, j), None)
        edge.pop((k, k), None)
    return get(src, snk)
