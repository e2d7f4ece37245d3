from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from rtekit.words import (
    EPSILON,
    Fin,
    InfLasso,
    LassoWord,
    UNDEF,
    Word,
    format_lasso,
    format_word,
    lasso_equal,
    lasso_normalize,
    lasso_unrolled_equal,
    output_equal,
    parse_lasso,
    parse_word,
)


def unrolled(w: LassoWord, n: int = 40) -> tuple:
    # independent oracle: spell the first n letters directly
    out = []
    i = 0
    for k in range(n):
        if k < len(w.prefix):
            out.append(w.prefix.letters[k])
        else:
            out.append(w.loop.letters[(k - len(w.prefix)) % len(w.loop)])
    return tuple(out)


def test_normalize_absorbs_prefix_into_rotated_loop():
    w = LassoWord.of("ab", "abab")
    n = lasso_normalize(w)
    assert unrolled(w) == unrolled(n)
    assert (str(n.prefix), str(n.loop)) == ("_", "ab")


def test_normalize_reduces_loop_to_primitive_root():
    w = LassoWord.of("b", "aa")
    n = lasso_normalize(w)
    assert unrolled(w) == unrolled(n)
    assert (str(n.prefix), str(n.loop)) == ("b", "a")


def test_normalize_is_idempotent_and_minimal():
    rng = random.Random(7)
    for _ in range(300):
        pre = "".join(rng.choice("ab") for _ in range(rng.randrange(0, 5)))
        loop = "".join(rng.choice("ab") for _ in range(rng.randrange(1, 5)))
        w = LassoWord.of(pre, loop)
        n = lasso_normalize(w)
        assert unrolled(w) == unrolled(n)
        assert lasso_normalize(n) == n
        # prefix minimality: no further absorption possible
        assert not n.prefix or n.prefix.letters[-1] != n.loop.letters[-1]


@given(
    st.text(alphabet="ab", max_size=4),
    st.text(alphabet="ab", min_size=1, max_size=4),
    st.text(alphabet="ab", max_size=4),
    st.text(alphabet="ab", min_size=1, max_size=4),
)
def test_lasso_equal_matches_unrolling_oracle(p1, l1, p2, l2):
    a = LassoWord.of(p1, l1)
    b = LassoWord.of(p2, l2)
    assert lasso_equal(a, b) == (unrolled(a, 50) == unrolled(b, 50))
    assert lasso_equal(a, b) == lasso_unrolled_equal(a, b)


def test_lasso_equal_across_representations():
    assert lasso_equal(LassoWord.of("", "ab"), LassoWord.of("ab", "ab"))
    assert lasso_equal(LassoWord.of("a", "ba"), LassoWord.of("ab", "ab"))
    assert not lasso_equal(LassoWord.of("", "ab"), LassoWord.of("", "ba"))


def test_suffix_and_head():
    w = LassoWord.of("ab", "cd")
    assert str(w.head(7)) == "abcdcdc"
    assert str(w.suffix(1).head(6)) == "bcdcdc"
    assert str(w.suffix(3).head(4)) == "dcdc"
    assert str(w.suffix(4).head(4)) == "cdcd"


def test_word_basics():
    w = Word.of("abc")
    assert len(w) == 3 and w[1] == "b"
    assert str(w + Word.of("d")) == "abcd"
    assert str(w.reverse()) == "cba"
    assert str(Word.of("ab").times(3)) == "ababab"
    assert not EPSILON and str(EPSILON) == "_"


def test_textual_syntax_round_trips():
    for text in ["(ab)^w", "b(a)^w", "abba(cab)^w", "_(ab)^w"]:
        w = parse_lasso(text)
        assert parse_lasso(format_lasso(w)) == w
    assert parse_word("_") == EPSILON
    assert format_word(parse_word("abba")) == "abba"
    assert parse_lasso("_(ab)^w") == parse_lasso("(ab)^w")
    with pytest.raises(ValueError):
        parse_lasso("ab")
    with pytest.raises(ValueError):
        LassoWord.of("a", "")


def test_output_equality():
    assert output_equal(UNDEF, UNDEF)
    assert not output_equal(UNDEF, Fin(EPSILON))
    assert output_equal(Fin(Word.of("ab")), Fin(Word.of("ab")))
    assert output_equal(
        InfLasso(LassoWord.of("a", "ba")), InfLasso(LassoWord.of("ab", "ab"))
    )
    assert not output_equal(Fin(EPSILON), InfLasso(LassoWord.of("", "a")))
