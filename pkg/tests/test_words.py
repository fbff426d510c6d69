"""Word arithmetic: reduction, powers, roots, homomorphisms, abelianization."""

import pytest
from hypothesis import given, settings, strategies as st

from freecomm import (
    EPSILON,
    RankMismatchError,
    Word,
    WordError,
    abelianize,
    apply_hom,
    concat,
    conjugate,
    cyclic_split,
    imprimitivity_certificate,
    invert,
    nth_root,
    parse_word,
    power,
    reduce,
    word_to_text,
)

letters2 = st.sampled_from([1, -1, 2, -2])
words2 = st.lists(letters2, max_size=12).map(Word)
words3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(Word)


def test_reduce_examples():
    assert reduce([1, 2, -2, 1]) == Word((1, 1))
    assert reduce([]) == EPSILON
    assert reduce([1, -1, 2, -2]) == EPSILON


def test_reduce_validates_rank():
    with pytest.raises(RankMismatchError):
        reduce([3], 2)


def test_constructor_reduces_eagerly():
    # equality is plain sequence comparison on the reduced form
    assert Word((1, 2, -2)) == Word((1,))
    assert tuple(Word((1, -1))) == ()


@given(st.lists(letters2, max_size=20))
def test_reduce_idempotent(letters):
    once = reduce(letters)
    assert reduce(once) == once


def test_concat_examples():
    assert concat(Word((1,)), Word((-1,))) == EPSILON
    assert concat(parse_word("ab"), parse_word("Bc")) == parse_word("ac")
    w = parse_word("aBa")
    assert concat(w, EPSILON) == w


@given(words2, words2)
def test_concat_length_bound(u, v):
    assert len(concat(u, v)) <= len(u) + len(v)


def test_invert_power_conjugate_examples():
    assert invert(parse_word("ab")) == parse_word("BA")
    assert power(parse_word("ab"), 3) == parse_word("ababab")
    assert power(parse_word("aB"), 0) == EPSILON
    assert conjugate(parse_word("b"), parse_word("a")) == parse_word("Aba")


@given(words2)
def test_invert_involution(w):
    assert invert(invert(w)) == w
    assert concat(w, invert(w)) == EPSILON


@given(words2, st.integers(min_value=-4, max_value=4))
def test_power_matches_iterated_concat(w, n):
    expected = EPSILON
    step = w if n >= 0 else invert(w)
    for _ in range(abs(n)):
        expected = concat(expected, step)
    assert power(w, n) == expected


def test_nth_root_examples():
    xy = parse_word("ab")
    assert nth_root(power(xy, 3), 3) == xy
    assert nth_root(parse_word("b"), 3) is None
    assert nth_root(parse_word("Ababaa"), 2) == parse_word("Abaa")
    assert power(parse_word("Abaa"), 2) == parse_word("Ababaa")
    assert nth_root(parse_word("Ababaa"), 1) == parse_word("Ababaa")
    assert nth_root(EPSILON, 5) == EPSILON


@given(words2, st.integers(min_value=1, max_value=5))
def test_unique_root_round_trip(w, n):
    assert nth_root(power(w, n), n) == w


@given(words2, st.integers(min_value=1, max_value=5))
def test_root_implies_power(w, n):
    v = nth_root(w, n)
    if v is not None:
        assert power(v, n) == w


@given(words2)
def test_cyclic_split_reassembles(w):
    u, c = cyclic_split(w)
    assert concat(concat(invert(u), c), u) == w
    if len(c) > 1:
        assert c[0] != -c[-1]


def test_apply_hom_examples():
    x, y = parse_word("a"), parse_word("b")
    assert apply_hom([x, x], parse_word("ab")) == parse_word("aa")
    assert apply_hom([x, y], parse_word("aBab")) == parse_word("aBab")
    assert apply_hom([y, x], parse_word("aB")) == parse_word("bA")


def test_apply_hom_validates_rank():
    with pytest.raises(RankMismatchError):
        apply_hom([parse_word("a")], parse_word("ab"))


@given(words2, words2)
def test_apply_hom_distributes_over_concat(u, v):
    images = [parse_word("ab"), parse_word("B")]
    assert apply_hom(images, concat(u, v)) == concat(
        apply_hom(images, u), apply_hom(images, v)
    )


@given(words2)
def test_apply_hom_commutes_with_invert(w):
    images = [parse_word("ba"), parse_word("a")]
    assert apply_hom(images, invert(w)) == invert(apply_hom(images, w))


def test_abelianize_examples():
    assert abelianize(parse_word("aaa"), 2) == (3, 0)
    assert abelianize(parse_word("Aba"), 2) == (0, 1)
    assert abelianize(EPSILON, 2) == (0, 0)


@given(words3, words3)
def test_abelianize_additive(u, v):
    au = abelianize(u, 3)
    av = abelianize(v, 3)
    assert abelianize(concat(u, v), 3) == tuple(a + b for a, b in zip(au, av))
    assert abelianize(invert(u), 3) == tuple(-a for a in au)


def test_imprimitivity_examples():
    assert imprimitivity_certificate(parse_word("aaa"), 2) == 3
    assert imprimitivity_certificate(parse_word("a"), 2) is None
    # commutator: zero exponent vector carries no gcd certificate
    assert imprimitivity_certificate(parse_word("ABab"), 2) is None


def test_imprimitivity_rejects_identity():
    with pytest.raises(WordError):
        imprimitivity_certificate(EPSILON, 2)


@given(words2, st.integers(min_value=2, max_value=5))
def test_proper_powers_are_imprimitive(w, n):
    if w:
        if abelianize(w, 2) != (0, 0):
            d = imprimitivity_certificate(power(w, n), 2)
            assert d is not None and d % n == 0


def test_parse_word_examples():
    assert parse_word("aBBa") == Word((1, -2, -2, 1))
    assert parse_word("1") == EPSILON
    assert parse_word("") == EPSILON
    assert parse_word("abA") == Word((1, 2, -1))


def test_parse_word_errors():
    with pytest.raises(WordError):
        parse_word("a?b")
    with pytest.raises(RankMismatchError):
        parse_word("c", rank=2)


def test_word_to_text_identity():
    assert word_to_text(EPSILON) == "1"


@given(words3)
def test_text_round_trip(w):
    assert parse_word(word_to_text(w)) == w
