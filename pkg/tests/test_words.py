import random

import pytest
from hypothesis import given, strategies as st

from conftest import cat, make
from oracles import all_words, word_image
from palinwidth.errors import ParseError, TableMismatchError
from palinwidth.palindromes import _relator_lengths, schreier_relator
from palinwidth.words import (
    Letter,
    Word,
    enumerate_relations,
    evaluate,
    format_word,
    free_reduce,
    invert_word,
    is_palindrome,
    is_reduced,
    parse_word,
    reverse_word,
    schreier_relators,
    word_permutation,
)
import numpy as np

X, Y, W = Letter(0, 1), Letter(1, 1), Letter(2, 1)
Xi, Yi = X.inverse(), Y.inverse()

letters = st.builds(Letter, st.integers(0, 2), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=12).map(Word)


def test_reverse_examples():
    assert reverse_word(Word([X, Y, W])) == Word([W, Y, X])
    assert reverse_word(Word()) == Word()
    assert reverse_word(Word([X, Yi])) == Word([Yi, X])


def test_invert_examples():
    assert invert_word(Word([X, Y])) == Word([Yi, Xi])
    assert invert_word(Word()) == Word()


def test_free_reduce_examples():
    assert free_reduce(Word([X, Xi])) == Word()
    assert free_reduce(Word([X, Y, Yi, X])) == Word([X, X])
    w = Word([X, Y, Xi, W])
    assert free_reduce(w) == w


def test_is_palindrome_examples():
    assert is_palindrome(Word([X, Y, X]))
    assert not is_palindrome(Word([X, Y]))
    assert is_palindrome(Word([X, Yi, X]))
    assert not is_palindrome(Word([X, Yi, Xi]))
    assert is_palindrome(Word())


@given(words)
def test_reverse_and_invert_are_commuting_involutions(w):
    assert reverse_word(reverse_word(w)) == w
    assert invert_word(invert_word(w)) == w
    assert reverse_word(invert_word(w)) == invert_word(reverse_word(w))


@given(words)
def test_free_reduce_kills_inverse(w):
    assert free_reduce(w + invert_word(w)) == Word()
    r = free_reduce(w)
    assert is_reduced(r)
    assert free_reduce(r) == r


@given(words, letters)
def test_palindrome_wrap_and_inverse(w, l):
    p = w + reverse_word(w)
    assert is_palindrome(p)
    assert is_palindrome(Word([l]) + p + Word([l]))
    assert is_palindrome(invert_word(p))


@pytest.fixture(scope="module")
def s4_words():
    gens, t = cat("S4")
    rng = random.Random(3)
    ws = [Word(Letter(rng.randrange(2), rng.choice([1, -1])) for _ in range(rng.randrange(15)))
          for _ in range(1000)]
    return gens, t, ws


def test_evaluate_matches_direct_composition(s4_words):
    gens, t, ws = s4_words
    assert evaluate(Word(), gens, t) == 0
    assert evaluate(Word([X, Xi]), gens, t) == 0
    for w in ws[:200]:
        assert t.element(evaluate(w, gens, t)) == word_permutation(w, gens)


def test_evaluate_homomorphism_properties(s4_words):
    gens, t, ws = s4_words
    for w in ws:
        assert evaluate(w, gens, t) == evaluate(free_reduce(w), gens, t)
    for u, v in zip(ws[:100], ws[100:200]):
        assert evaluate(u + v, gens, t) == t.mul(evaluate(u, gens, t), evaluate(v, gens, t))
        assert evaluate(invert_word(u), gens, t) == t.inv[evaluate(u, gens, t)]


def test_evaluate_alphabet_mismatch(s4_words):
    gens, t, _ = s4_words
    other, _ = cat("A5")
    with pytest.raises(TableMismatchError):
        evaluate(Word([X]), other, t)
    with pytest.raises(TableMismatchError):
        evaluate(Word([Letter(5, 1)]), gens, t)


@pytest.mark.parametrize("name", ["C5", "C6", "C12"])
def test_reversal_trivial_on_abelian(name):
    gens, t = cat(name)
    rng = random.Random(0)
    for _ in range(200):
        w = Word(Letter(0, rng.choice([1, -1])) for _ in range(rng.randrange(10)))
        assert evaluate(reverse_word(w), gens, t) == evaluate(w, gens, t)


def test_relations_cyclic_order_two():
    gens, t = cat("C2")
    assert next(enumerate_relations(gens, t, 4)) == Word([X, X])


def test_relations_s3_against_exhaustive_oracle(s3):
    gens, t = s3
    stream = list(enumerate_relations(gens, t, 6))
    oracle = [Word(w) for w in all_words(2, 6)
              if is_reduced(Word(w)) and word_image(w, gens.perms).is_identity()]
    oracle.sort(key=Word.sort_key)
    assert stream == oracle
    assert Word([X, X]) in stream
    assert Word([X, Y] * 3) in stream
    assert len(set(stream)) == len(stream)


def test_relations_max_len_one_empty():
    for name in ("S4", "A5", "C6"):
        gens, t = cat(name)
        assert list(enumerate_relations(gens, t, 1)) == []


def test_relations_are_reduced_relations():
    gens, t = cat("D8")
    for w in enumerate_relations(gens, t, 7):
        assert is_reduced(w)
        assert evaluate(w, gens, t) == 0


def test_schreier_relators_are_relations():
    gens, t = cat("S4")
    rels = list(schreier_relators(gens, t))
    assert rels
    for w in rels:
        assert w and is_reduced(w)
        assert evaluate(w, gens, t) == 0


@pytest.mark.parametrize("name", ["S4", "A5", "D10", "C6", "PSL(2,7)"])
def test_relator_lengths_match_free_reduction(name):
    gens, t = cat(name)
    us = np.arange(t.order, dtype=np.int32)
    for g in range(len(gens)):
        lengths = _relator_lengths(t, us, t.col_of[(g, 1)])
        for u in range(t.order):
            assert lengths[u] == len(schreier_relator(u, g, t))


def test_word_text_roundtrip():
    gens, _ = make([[(0, 1)], [(1, 2)]], 3)
    w = parse_word("x y^-1 x", gens)
    assert w == Word([X, Yi, X])
    assert format_word(w, gens) == "x y^-1 x"
    assert format_word(Word(), gens) == "1"
    with pytest.raises(ParseError):
        parse_word("x z", gens)
