import numpy as np
import pytest

from conftest import CATALOG, SMALL_CATALOG, cat, sigma
from oracles import brute_palindromes, brute_width, count_cycle_type
from palinwidth.errors import InapplicableError, NotASubgroupError, PalinwidthError
from palinwidth.genset import involution_class_genset, lemma_augment
from palinwidth.group import closure, conjugacy_class, conjugation_closure, is_normal
from palinwidth.palindromes import (
    conjugates_in_p2,
    covering_number,
    element_width,
    factorization,
    involution_lower_bound,
    moved_points,
    n_subgroup,
    palindrome_set,
    palindrome_witness,
    palindromic_width,
    product_set,
    verify_prop_normal,
    width_upper_bound_via_subgroup,
)
from palinwidth.perm import parse_cycles
from palinwidth.words import Letter, Word, evaluate, is_palindrome


@pytest.mark.parametrize("n", [1, 2, 5, 6, 12])
def test_cyclic_every_element_palindrome(n):
    gens, t = cat(f"C{n}")
    assert palindrome_set(gens, t).members.is_full()


def test_sigma_class_palindromes_are_class_plus_identity(sigma5):
    gens, t = sigma5
    data = palindrome_set(gens, t)
    assert len(data) == 16
    cls = conjugacy_class(t.index_of(parse_cycles("(1 2)(3 4)", 5)), t)
    assert data.members == cls | t.set_of([0])
    assert len(cls) == count_cycle_type(t.elements, (2, 2, 1)) == 15


def test_augmented_a5_all_palindromes(a5):
    aug = lemma_augment(*a5)
    assert palindrome_set(aug.gens_out, aug.table_out).members.is_full()


def test_palindrome_data_invariants(s4):
    gens, t = s4
    data = palindrome_set(gens, t)
    assert 0 in data.members
    for c in range(t.n_letters):
        assert t.trans[0, c] in data.members
    for m in data.members:
        p = int(data.wrap_parent[m])
        if p >= 0:
            c = int(data.wrap_col[m])
            assert t.trans[t.left_letter(p, c), c] == m
    assert data.seed_kind(0) == "empty"


def test_witness_examples(s4):
    gens, t = s4
    data = palindrome_set(gens, t)
    assert palindrome_witness(0, data) == Word()
    a = t.index_of(gens.perms[0])
    assert palindrome_witness(a, data) == Word([Letter(0, 1)])
    for g in data.members:
        w = palindrome_witness(g, data)
        assert is_palindrome(w)
        assert evaluate(w, gens, t) == g


def test_witness_rejects_non_palindrome(sigma5):
    gens, t = sigma5
    data = palindrome_set(gens, t)
    outside = next(i for i in range(t.order) if i not in data.members)
    with pytest.raises(PalinwidthError, match="not a palindrome"):
        palindrome_witness(outside, data)


@pytest.mark.parametrize("name", SMALL_CATALOG + ["A5", "PSL(2,7)"])
def test_palindrome_set_matches_word_oracle(name):
    gens, t = cat(name)
    data = palindrome_set(gens, t)
    assert {t.element(i) for i in data.members} == brute_palindromes(list(gens.perms))


def test_width_examples(sigma5):
    gens, t = sigma5
    rep = palindromic_width(gens, t)
    assert rep.width == 2
    assert rep.layer_sizes == [1, 16, 60]
    _, triv = cat("C1")
    assert palindromic_width(cat("C1")[0], triv).width == 0


def test_width_one_when_everything_is_palindrome():
    gens, t = cat("C7")
    assert palindromic_width(gens, t).width == 1


def test_layer_sizes_strictly_increase():
    for name in ("S4", "D12", "A5"):
        rep = palindromic_width(*cat(name))
        sizes = rep.layer_sizes
        assert all(a < b for a, b in zip(sizes, sizes[1:]))
        assert sizes[-1] == cat(name)[1].order


def test_element_width_examples(sigma5):
    gens, t = sigma5
    rep = palindromic_width(gens, t)
    assert element_width(0, rep) == 0
    for p in gens.perms:
        assert element_width(t.index_of(p), rep) == 1
    five = t.index_of(parse_cycles("(1 2 3 4 5)", 5))
    assert element_width(five, rep) == 2


def test_factorizations_are_palindromic_and_correct():
    gens, t = sigma(6)
    rep = palindromic_width(gens, t)
    for g in range(t.order):
        f = factorization(g, rep)
        assert len(f) == element_width(g, rep)
        acc = 0
        for p in f:
            assert p in rep.data.members
            assert is_palindrome(palindrome_witness(p, rep.data))
            acc = t.mul(acc, p)
        assert acc == g


def test_width_subadditive():
    gens, t = cat("S4")
    rep = palindromic_width(gens, t)
    for g in range(t.order):
        for h in range(t.order):
            assert rep.layer[t.mul(g, h)] <= rep.layer[g] + rep.layer[h]


@pytest.mark.parametrize("name", SMALL_CATALOG)
def test_width_matches_brute_force(name):
    gens, t = cat(name)
    rep = palindromic_width(gens, t)
    best, width = brute_width(list(gens.perms))
    assert rep.width == width
    for g in range(t.order):
        assert rep.layer[g] == best[t.element(g)]


def test_palindromes_inverse_and_wrap_closed():
    for name in CATALOG:
        gens, t = cat(name)
        data = palindrome_set(gens, t)
        m = data.members.indices()
        assert data.members.bits[t.inv[m]].all()
        for c in range(t.n_letters):
            assert data.members.bits[t.trans[t.left_letter(m, c), c]].all()


# -- N -------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["C4", "C6", "C12"])
def test_n_subgroup_abelian_trivial(name):
    assert len(n_subgroup(*cat(name))) == 1


def test_n_subgroup_involution_alphabet_trivial(sigma5):
    gens, t = sigma5
    res = n_subgroup(gens, t, None)
    assert len(res) == 1 and res.exact


def test_n_subgroup_augmented_a5_is_everything(a5):
    aug = lemma_augment(*a5)
    res = n_subgroup(aug.gens_out, aug.table_out, None)
    assert res.members.is_full() and res.normal


@pytest.mark.parametrize("name", CATALOG)
def test_n_subgroup_normal_and_palindromic(name):
    gens, t = cat(name)
    res = n_subgroup(gens, t, None)
    assert res.exact and res.normal
    assert is_normal(res.members)
    assert res.members.issubset(palindrome_set(gens, t).members)


def test_n_subgroup_cap_gives_subgroup_of_exact():
    aug = lemma_augment(*cat("A6"))
    full = n_subgroup(aug.gens_out, aug.table_out, None)
    for cap in (2, 4, 6, 12):
        part = n_subgroup(aug.gens_out, aug.table_out, cap)
        assert part.members.issubset(full.members)


def test_n_subgroup_rejects_tiny_cap(s4):
    with pytest.raises(ValueError):
        n_subgroup(*s4, max_relation_len=1)


def test_verify_prop_normal_examples():
    rep = verify_prop_normal(*cat("C2"), sample_count=30)
    assert rep.verdict == "pass"
    rep = verify_prop_normal(*cat("S4"), sample_count=1000, seed=5)
    assert rep.checks >= 1000 and rep.failures == 0
    assert verify_prop_normal(*cat("C1")).verdict == "inconclusive"


def test_conjugates_in_p2_examples(s4, sigma5):
    assert conjugates_in_p2(*cat("C6"))
    assert conjugates_in_p2(*s4)
    gens, t = sigma5
    data = palindrome_set(gens, t)
    assert conjugates_in_p2(gens, t, data)
    assert conjugation_closure(data.members) == data.members


def test_product_set_against_pairs(s4):
    gens, t = s4
    data = palindrome_set(gens, t)
    p2 = product_set(data.members, data.members)
    m = data.members.indices()
    pairs = {t.mul(a, b) for a in m for b in m}
    assert set(p2) == pairs


def test_covering_number_examples(a5):
    gens, t = a5
    g = t.index_of(parse_cycles("(1 2)(3 4)", 5))
    cls = conjugacy_class(g, t)
    assert covering_number(cls) == 2
    # exhaustive pair products of class-with-identity cover A_5
    m = cls.indices().tolist() + [0]
    assert len({t.mul(a, b) for a in m for b in m}) == 60
    assert len(set(m)) < 60
    assert covering_number(t.full() - t.set_of([0])) == 1
    _, s4t = cat("S4")
    v = s4t.index_of(parse_cycles("(1 2)(3 4)", 4))
    with pytest.raises(InapplicableError, match="proper subgroup"):
        covering_number(conjugacy_class(v, s4t))


def test_width_upper_bound_examples(a5):
    aug = lemma_augment(*a5)
    data = palindrome_set(aug.gens_out, aug.table_out)
    t = aug.table_out
    assert width_upper_bound_via_subgroup(t.full(), data) == 1
    assert width_upper_bound_via_subgroup(t.set_of([0]), data) == t.diameter + 1
    nsub = n_subgroup(aug.gens_out, t, None)
    assert width_upper_bound_via_subgroup(nsub.members, data) == 1 == palindromic_width(aug.gens_out, t, data).width


def test_width_upper_bound_errors(sigma5):
    gens, t = sigma5
    data = palindrome_set(gens, t)
    with pytest.raises(InapplicableError, match="not palindromic"):
        width_upper_bound_via_subgroup(t.full(), data)
    with pytest.raises(NotASubgroupError):
        width_upper_bound_via_subgroup(data.members, data)


def test_involution_lower_bound_examples(sigma5):
    gens, t = sigma5
    assert involution_lower_bound(0, gens, t) == 0
    five = t.index_of(parse_cycles("(1 2 3 4 5)", 5))
    assert involution_lower_bound(five, gens, t) == 2
    g7, t7 = sigma(7)
    seven = t7.index_of(parse_cycles("(1 2 3 4 5 6 7)", 7))
    assert involution_lower_bound(seven, g7, t7) == 2
    with pytest.raises(InapplicableError):
        involution_lower_bound(0, *cat("A5"))


def test_involution_lower_bound_a9_value():
    # the sigma-class table of A_9 is large; the bound only needs the step,
    # so evaluate it on the two-generator table with step = moved((1 2)(3 4)) = 4
    gens, t = cat("A9")
    step = parse_cycles("(1 2)(3 4)", 9).moved_points()
    g = t.index_of(parse_cycles("(1 2 3 4 5 6 7 8 9)", 9))
    assert involution_lower_bound(g, gens, t, step=step) == 3


@pytest.mark.parametrize("n", [5, 6, 7])
def test_involution_bound_below_width_exhaustive(n):
    gens, t = sigma(n)
    rep = palindromic_width(gens, t)
    bounds = np.ceil(moved_points(t) / 4).astype(int)
    assert (bounds <= rep.layer).all()
    for g in range(0, t.order, 97):
        assert involution_lower_bound(g, gens, t) == bounds[g]


@pytest.mark.parametrize("name", ["A5", "A6", "PSL(2,7)"])
def test_involution_alphabet_specialisation(name):
    _, t = cat(name)
    gens = involution_class_genset(t)
    t2 = closure(list(gens.perms))
    data = palindrome_set(gens, t2)
    m = data.members.indices()
    assert (t2.multiply(m, m) == 0).all()
    for g in range(1, t2.order):
        if t2.element(g).order() % 2 == 1:
            assert g not in data.members
