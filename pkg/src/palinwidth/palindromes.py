"""Palindrome sets, palindromic width, and the reversal subgroup.

All element-level sets are exact for finite groups: the palindrome set is
the least fixed point of the wrap rule ``m -> l*m*l`` seeded with the
identity (empty word) and the letters, never a truncated word search.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from palinwidth.errors import InapplicableError, InvariantViolation, NotASubgroupError, PalinwidthError
from palinwidth.group import (
    ElementSet,
    GroupTable,
    conjugation_closure,
    coset_rep_bound,
    is_normal,
    is_subgroup,
    subgroup_generated,
)
from palinwidth.words import (
    GeneratingSet,
    Letter,
    Word,
    _check_alphabet,
    canonical_word,
    column_letter,
    evaluate,
    free_reduce,
    invert_word,
    reverse_word,
)


@dataclass
class PalindromeData:
    """The palindrome set P with wrap links for witness reconstruction.

    ``wrap_parent[m]`` is -1 for seeds and -2 for non-members;
    ``wrap_col[m]`` is the wrapping letter column, or for a seed its letter
    column (-1 for the empty-word seed).
    """

    members: ElementSet
    wrap_parent: np.ndarray
    wrap_col: np.ndarray
    order: np.ndarray
    gens: GeneratingSet

    @property
    def table(self) -> GroupTable:
        return self.members.table

    def __len__(self):
        return len(self.members)

    def seed_kind(self, m: int):
        """``"empty"``, the seed :class:`Letter`, or None for wrapped members."""
        if self.wrap_parent[m] != -1:
            return None
        c = int(self.wrap_col[m])
        return "empty" if c < 0 else column_letter(c, self.table)


def palindrome_set(gens: GeneratingSet, table: GroupTable) -> PalindromeData:
    _check_alphabet(gens, table)
    seeds = [0] + [int(table.trans[0, c]) for c in range(table.n_letters)]
    seed_cols = [-1] + list(range(table.n_letters))
    order, parent, pcol = table.backend.wrap_closure(table.trans, table.inv, table.inv_col, seeds, seed_cols)
    return PalindromeData(ElementSet(table, parent != -2), parent, pcol, order, gens)


def palindrome_witness(g: int, data: PalindromeData) -> Word:
    """A palindromic word evaluating to ``g``."""
    if not data.members.bits[g]:
        raise PalinwidthError(f"element {g} is not a palindrome")
    wraps = []
    while data.wrap_parent[g] >= 0:
        wraps.append(column_letter(int(data.wrap_col[g]), data.table))
        g = int(data.wrap_parent[g])
    c = int(data.wrap_col[g])
    core = Word() if c < 0 else Word([column_letter(c, data.table)])
    left = Word(wraps)
    return left + core + reverse_word(left)


@dataclass
class WidthReport:
    """Layered product BFS ``W_0 = {e}``, ``W_{i+1} = W_i * P``.

    ``width`` is None when the layers stall before covering the group.
    ``layer_sizes`` are the cumulative sizes ``|W_i|``.
    """

    width: int | None
    layer_sizes: list[int]
    layer: np.ndarray
    link_prev: np.ndarray
    link_factor: np.ndarray
    data: PalindromeData


def palindromic_width(gens: GeneratingSet, table: GroupTable, data: PalindromeData | None = None) -> WidthReport:
    if data is None:
        data = palindrome_set(gens, table)
    layer, prev, fac, sizes = table.product_layers([0], data.members.indices())
    width = len(sizes) - 1 if sizes[-1] == table.order else None
    return WidthReport(width, sizes, layer, prev, fac, data)


def element_width(g: int, report: WidthReport) -> int:
    w = int(report.layer[g])
    if w < 0:
        raise PalinwidthError(f"element {g} was not reached")
    return w


def factorization(g: int, report: WidthReport) -> list[int]:
    """Palindrome factors (element indices) whose product, left to right, is ``g``."""
    element_width(g, report)
    factors = []
    while report.layer[g] > 0:
        factors.append(int(report.link_factor[g]))
        g = int(report.link_prev[g])
    factors.reverse()
    return factors


# -- the reversal subgroup ---------------------------------------------------


def _reverse_tree_images(table: GroupTable) -> np.ndarray:
    """For each element u, the image of the reversed spanning-tree word of u."""
    rho = np.zeros(table.order, dtype=np.int32)
    # children have larger index than parents, so one pass per depth suffices
    for d in range(1, table.diameter + 1):
        idx = np.flatnonzero(table.depth == d)
        rho[idx] = table.left_letter(rho[table.parent[idx]], table.parent_col[idx])
    return rho


def _relator_lengths(table: GroupTable, u: np.ndarray, col: int) -> np.ndarray:
    """Freely reduced length of ``c(u) l c(u l)^-1`` for letter column ``col``."""
    inv_col = int(table.inv_col[col])
    self_inverse = inv_col == col
    a = u.copy()
    b = table.trans[u, col].astype(np.int32)
    pend = np.ones(len(u), dtype=bool)
    if not self_inverse:
        # c(u) ending in l^-1 cancels the pending letter
        back = (a != 0) & (table.parent_col[a] == inv_col)
        a[back] = table.parent[a[back]]
        pend[back] = False
    while True:
        last_a = np.where(pend, col, np.where(a != 0, table.parent_col[a], -1))
        last_b = np.where(b != 0, table.parent_col[b], -2)
        hit = last_a == last_b
        if not hit.any():
            break
        strip_a = hit & ~pend
        pend = pend & ~hit
        a[strip_a] = table.parent[a[strip_a]]
        b[hit] = table.parent[b[hit]]
    return table.depth[a] + pend + table.depth[b]


def schreier_relator(u: int, gen: int, table: GroupTable) -> Word:
    l = Letter(gen, 1)
    v = int(table.trans[u, table.col_of[(gen, 1)]])
    return free_reduce(canonical_word(u, table) + Word([l]) + invert_word(canonical_word(v, table)))


@dataclass
class RelatorImages:
    """Spanning-tree relators (positive letters) and their reversal images.

    Arrays are flattened over (element u, generator index).
    """

    u: np.ndarray
    gen: np.ndarray
    length: np.ndarray
    reversal: np.ndarray

    def __len__(self):
        return len(self.u)


def relator_images(gens: GeneratingSet, table: GroupTable) -> RelatorImages:
    """All non-empty spanning-tree relators with the images of their reversals.

    For ``s = c(u) x c(u x)^-1`` the reversal evaluates to
    ``rho(u x)^-1 * x * rho(u)`` where ``rho`` maps an element to the image of
    its reversed tree word.  These relators generate the whole relation
    module as a subgroup, so their reversal images generate N.
    """
    _check_alphabet(gens, table)
    rho = _reverse_tree_images(table)
    us, gs, lens, revs = [], [], [], []
    allu = np.arange(table.order, dtype=np.int32)
    for g in range(len(gens)):
        col = table.col_of[(g, 1)]
        lengths = _relator_lengths(table, allu, col)
        keep = lengths > 0
        u = allu[keep]
        v = table.trans[u, col]
        left = table.trans[table.inv[rho[v]], col]
        rev = table.multiply(left, rho[u])
        us.append(u)
        gs.append(np.full(len(u), g, dtype=np.int32))
        lens.append(lengths[keep])
        revs.append(rev)
    return RelatorImages(np.concatenate(us), np.concatenate(gs), np.concatenate(lens), np.concatenate(revs))


@dataclass
class NSubgroupResult:
    members: ElementSet
    exact: bool
    relators_used: int
    relators_total: int
    normal: bool
    max_relation_len: int | None

    def __len__(self):
        return len(self.members)


def n_subgroup(gens: GeneratingSet, table: GroupTable, max_relation_len: int | None = 12,
               relators: RelatorImages | None = None) -> NSubgroupResult:
    """Subgroup generated by the images of ``reverse(w) * w`` over relations w.

    Relations are the spanning-tree relators of reduced length at most
    ``max_relation_len`` (None: no cap).  With every relator included the
    result is exactly N and is required to be normal.
    """
    if max_relation_len is not None and max_relation_len < 2:
        raise ValueError("max_relation_len must be >= 2")
    if relators is None:
        relators = relator_images(gens, table)
    keep = np.ones(len(relators), dtype=bool)
    if max_relation_len is not None:
        keep = relators.length <= max_relation_len
    seed = table.set_of([0])
    seed.bits[relators.reversal[keep]] = True
    sub = subgroup_generated(seed)
    exact = bool(keep.all())
    normal = is_normal(sub)
    if exact and not normal:
        raise InvariantViolation("reversal subgroup N is not normal")
    return NSubgroupResult(sub, exact, int(keep.sum()), len(relators), normal, max_relation_len)


# -- verification engines ----------------------------------------------------


@dataclass
class CheckReport:
    name: str
    checks: int = 0
    failures: int = 0
    inconclusive: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "pass" if self.failures == 0 else "fail"


def verify_prop_normal(gens: GeneratingSet, table: GroupTable, sample_count: int = 1000,
                       seed: int = 0, max_relation_len: int | None = None) -> CheckReport:
    """Check the closure identities behind normality of N on sampled data.

    For relations s, t and a group element g (as its tree word):
    (i)  pi(rev(t) t) * pi(rev(s) s) == pi(rev(st) st);
    (ii) g^-1 pi(rev(t) t) g == pi(rev(u) u) with u = rev(g) t rev(g^-1),
         and u is again a relation.
    Each sample contributes three checks.
    """
    rep = CheckReport("prop-normal")
    if table.order == 1:
        rep.inconclusive = True
        rep.notes.append("trivial group: nothing to verify")
        return rep
    rel = relator_images(gens, table)
    idx = np.arange(len(rel))
    if max_relation_len is not None:
        idx = idx[rel.length <= max_relation_len]
    if len(idx) == 0:
        rep.inconclusive = True
        rep.notes.append("no relations within the cap")
        return rep

    rng = random.Random(seed)
    ev = lambda w: evaluate(w, gens, table)
    cache: dict[int, Word] = {}

    def relation(k):
        if k not in cache:
            cache[k] = schreier_relator(int(rel.u[k]), int(rel.gen[k]), table)
        return cache[k]

    while rep.checks < sample_count:
        s = relation(int(idx[rng.randrange(len(idx))]))
        t = relation(int(idx[rng.randrange(len(idx))]))
        g = rng.randrange(table.order)
        lhs = table.mul(ev(reverse_word(t) + t), ev(reverse_word(s) + s))
        st = s + t
        rep.failures += lhs != ev(reverse_word(st) + st)

        gw = canonical_word(g, table)
        u = reverse_word(gw) + t + reverse_word(invert_word(gw))
        conj = table.mul(table.mul(int(table.inv[g]), ev(reverse_word(t) + t)), g)
        rep.failures += conj != ev(reverse_word(u) + u)
        rep.failures += ev(u) != 0
        rep.checks += 3
    return rep


def product_set(a: ElementSet, b: ElementSet) -> ElementSet:
    table = a.table
    layer, *_ = table.product_layers(a.indices(), b.indices(), max_layers=1)
    return ElementSet(table, layer >= 0)


def conjugates_in_p2(gens: GeneratingSet, table: GroupTable, data: PalindromeData | None = None) -> bool:
    """Whether every conjugate of every palindrome lies in P*P."""
    if data is None:
        data = palindrome_set(gens, table)
    p2 = product_set(data.members, data.members)
    return conjugation_closure(data.members).issubset(p2)


def covering_number(class_set: ElementSet, table: GroupTable | None = None) -> int:
    """Least m with (C u {e})^m = G."""
    table = class_set.table
    sub = subgroup_generated(class_set)
    if not sub.is_full():
        raise InapplicableError(f"proper subgroup: the class generates a subgroup of order {len(sub)}")
    factors = class_set.indices()
    if not class_set.bits[0]:
        factors = np.concatenate([[0], factors]).astype(np.int32)
    layer, _, _, sizes = table.product_layers([0], factors)
    return len(sizes) - 1


def width_upper_bound_via_subgroup(sub: ElementSet, data: PalindromeData) -> int:
    """Shortest-coset-representative bound: every g is r*n, r a word of letters, n in sub."""
    if not is_subgroup(sub):
        raise NotASubgroupError("not a subgroup")
    if not sub.issubset(data.members):
        raise InapplicableError("subgroup not palindromic")
    return coset_rep_bound(sub) + 1


def involution_step(gens: GeneratingSet, table: GroupTable) -> int:
    """Points moved by each generator when the alphabet is one class of involutions."""
    if not gens.perms:
        raise InapplicableError("bound inapplicable: empty generating set")
    idx = [table.index_of(p) for p in gens.perms]
    if any(p.is_identity() or not (p * p).is_identity() for p in gens.perms):
        raise InapplicableError("bound inapplicable: generators are not all involutions")
    cls = conjugation_closure(table.set_of(idx[:1]))
    if not all(cls.bits[i] for i in idx):
        raise InapplicableError("bound inapplicable: generators are not in one conjugacy class")
    return gens.perms[0].moved_points()


def involution_lower_bound(g: int, gens: GeneratingSet, table: GroupTable, step: int | None = None) -> int:
    """ceil(moved(g) / s): each palindrome is a conjugate of a generator and moves s points."""
    if step is None:
        step = involution_step(gens, table)
    return math.ceil(table.element(g).moved_points() / step)


def moved_points(table: GroupTable) -> np.ndarray:
    return (table.images != np.arange(table.degree, dtype=np.uint8)).sum(axis=1)
