from __future__ import annotations

import random

import pytest

from rtekit.automata.finite import (
    Atom,
    Concat,
    Empty,
    Eps,
    EpsilonBodyError,
    Plus,
    RatExpr,
    Union,
    ambiguous_concat_lang,
    ambiguous_plus_lang,
    complement,
    dfa_to_ratexpr,
    difference,
    distinguishing_word,
    format_regex,
    intersection,
    is_empty,
    language_equiv,
    parse_regex,
    plus_lang,
    rat_to_dfa,
    regex_node_unambiguity,
    shortest_word,
)
from rtekit.words import EPSILON, Word, iter_words

AB = ("a", "b")


# --- independent oracle: recursive matcher over the AST ---------------------


def naive_match(e: RatExpr, w: tuple) -> bool:
    if isinstance(e, Empty):
        return False
    if isinstance(e, Eps):
        return w == ()
    if isinstance(e, Atom):
        return w == (e.sym,)
    if isinstance(e, Union):
        return naive_match(e.left, w) or naive_match(e.right, w)
    if isinstance(e, Concat):
        return any(
            naive_match(e.left, w[:i]) and naive_match(e.right, w[i:])
            for i in range(len(w) + 1)
        )
    if isinstance(e, Plus):
        if w == ():
            return naive_match(e.body, ())
        # nonempty-block factorizations suffice for nonempty words
        def blocks(w: tuple) -> bool:
            return any(
                naive_match(e.body, w[:i]) and (i == len(w) or blocks(w[i:]))
                for i in range(1, len(w) + 1)
            )
        return blocks(w)
    raise TypeError


def rand_regex(rng: random.Random, depth: int) -> RatExpr:
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        return Atom(rng.choice(AB))
    if roll < 0.55:
        return Union(rand_regex(rng, depth - 1), rand_regex(rng, depth - 1))
    if roll < 0.8:
        return Concat(rand_regex(rng, depth - 1), rand_regex(rng, depth - 1))
    if roll < 0.9:
        return Plus(rand_regex(rng, depth - 1))
    return Eps() if roll < 0.97 else Empty()


def test_dfa_agrees_with_recursive_matcher():
    rng = random.Random(11)
    for _ in range(40):
        e = rand_regex(rng, 3)
        d = rat_to_dfa(e, AB)
        for w in iter_words(AB, 5):
            assert d.accepts(w) == naive_match(e, w.letters), (e, w)


def test_format_parse_round_trip():
    rng = random.Random(12)
    for _ in range(60):
        e = rand_regex(rng, 3)
        back = parse_regex(format_regex(e))
        assert language_equiv(rat_to_dfa(e, AB), rat_to_dfa(back, AB)), (
            e, format_regex(e), back)


def test_parser_concrete_cases():
    assert language_equiv(
        rat_to_dfa(parse_regex("(ba+)^3"), AB),
        rat_to_dfa(parse_regex("ba+ba+ba+"), AB),
    )
    d = rat_to_dfa(parse_regex("a+(ba)+"), AB)
    assert d.accepts(Word.of("aababa"))
    assert not d.accepts(Word.of("ba"))
    assert rat_to_dfa(parse_regex("a*"), AB).accepts(EPSILON)
    assert rat_to_dfa(parse_regex("\\e"), AB).accepts(EPSILON)
    assert is_empty(rat_to_dfa(parse_regex("\\0"), AB))
    esc = parse_regex("\\+")
    assert esc == Atom("+")
    with pytest.raises(ValueError):
        parse_regex("((")
    with pytest.raises(ValueError):
        parse_regex("a)")
    with pytest.raises(ValueError):
        parse_regex("^3")


def test_boolean_ops_and_equiv():
    a_plus = rat_to_dfa(parse_regex("a+"), AB)
    aa_star = rat_to_dfa(parse_regex("aa*"), AB)
    assert language_equiv(a_plus, aa_star)
    rng = random.Random(13)
    for _ in range(20):
        e = rand_regex(rng, 3)
        d = rat_to_dfa(e, AB)
        assert language_equiv(complement(complement(d)), d)
        assert is_empty(difference(d, d))
    w = distinguishing_word(a_plus, rat_to_dfa(parse_regex("a*"), AB))
    assert w == EPSILON


# --- ambiguity languages ----------------------------------------------------


def count_splits(l1, l2, w: Word) -> int:
    return sum(
        1
        for i in range(len(w) + 1)
        if l1.accepts(w[:i]) and l2.accepts(w[i:])
    )


def count_block_factorizations(l, w: Word) -> int:
    # nonempty blocks only; l must not accept the empty word
    def go(w: Word) -> int:
        if len(w) == 0:
            return 1
        return sum(
            go(w[i:]) for i in range(1, len(w) + 1) if l.accepts(w[:i])
        )
    return go(w)


def test_concat_ambiguity_against_split_oracle():
    rng = random.Random(14)
    for _ in range(25):
        e1, e2 = rand_regex(rng, 2), rand_regex(rng, 2)
        d1, d2 = rat_to_dfa(e1, AB), rat_to_dfa(e2, AB)
        k = ambiguous_concat_lang(d1, d2)
        for w in iter_words(AB, 6):
            assert k.accepts(w) == (count_splits(d1, d2, w) >= 2), (e1, e2, w)


def test_concat_ambiguity_fixed_cases():
    a_plus = rat_to_dfa(parse_regex("a+"), AB)
    k = ambiguous_concat_lang(a_plus, a_plus)
    # oracle: a^2 = a·a has exactly one split; ambiguity starts at a^3
    assert count_splits(a_plus, a_plus, Word.of("aa")) == 1
    assert language_equiv(k, rat_to_dfa(parse_regex("aaaa*"), AB))
    ba_star = rat_to_dfa(parse_regex("ba*"), AB)
    assert is_empty(ambiguous_concat_lang(ba_star, ba_star))
    empty = rat_to_dfa(Empty(), AB)
    assert is_empty(ambiguous_concat_lang(empty, a_plus))


def test_plus_ambiguity_against_factorization_oracle():
    rng = random.Random(15)
    done = 0
    while done < 25:
        e = rand_regex(rng, 2)
        d = rat_to_dfa(e, AB)
        if d.accepts(EPSILON):
            continue
        done += 1
        k = ambiguous_plus_lang(d)
        lp = plus_lang(d)
        for w in iter_words(AB, 6):
            n = count_block_factorizations(d, w)
            assert k.accepts(w) == (n >= 2), (e, w, n)
            assert lp.accepts(w) == (n >= 1 and len(w) > 0), (e, w, n)


def test_plus_ambiguity_fixed_cases():
    single = rat_to_dfa(parse_regex("a"), AB)
    k = ambiguous_plus_lang(single)
    assert is_empty(intersection(k, rat_to_dfa(parse_regex("a+"), AB)))
    a_or_aa = rat_to_dfa(parse_regex("a|aa"), AB)
    assert ambiguous_plus_lang(a_or_aa).accepts(Word.of("aaa"))
    ba_plus = rat_to_dfa(parse_regex("ba+"), AB)
    assert is_empty(
        intersection(
            ambiguous_plus_lang(ba_plus),
            rat_to_dfa(parse_regex("(ba+)+"), AB),
        )
    )
    with pytest.raises(EpsilonBodyError):
        ambiguous_plus_lang(rat_to_dfa(parse_regex("a*"), AB))


def test_node_unambiguity_report():
    rep = regex_node_unambiguity(parse_regex("a+(ba)+"), AB)
    assert rep.ok
    rep = regex_node_unambiguity(parse_regex("(a|aa)+"), AB)
    assert not rep.ok
    kinds = {c.kind for c in rep.failures()}
    assert kinds == {"plus"}
    rep = regex_node_unambiguity(parse_regex("aba|(aa)+|a(aa)+ba"), AB)
    assert rep.ok


def test_dfa_to_ratexpr_round_trip():
    rng = random.Random(16)
    for _ in range(25):
        e = rand_regex(rng, 3)
        d = rat_to_dfa(e, AB)
        back = rat_to_dfa(dfa_to_ratexpr(d), AB)
        assert language_equiv(d, back), (e, format_regex(dfa_to_ratexpr(d)))


def test_shortest_word():
    d = rat_to_dfa(parse_regex("ab(ab)*|aaaa"), AB)
    assert shortest_word(d) == Word.of("ab")
    assert shortest_word(rat_to_dfa(Empty(), AB)) is None
    assert shortest_word(rat_to_dfa(Eps(), AB)) == EPSILON
