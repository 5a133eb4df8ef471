"""Generating-set constructors, the augmentation procedure, and the catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from palinwidth.errors import InapplicableError, InvariantViolation, ParseError
from palinwidth.group import GroupTable, closure, conjugacy_class, is_simple, normal_closure
from palinwidth.perm import Permutation, compose, from_cycles, parse_cycles
from palinwidth.words import GeneratingSet, Word, enumerate_relations, evaluate, reverse_word


def find_noncommuting_pair(gens: GeneratingSet) -> tuple[int, int] | None:
    """Lowest (i, j), i < j, whose generators do not commute."""
    perms = gens.perms
    for i in range(len(perms)):
        for j in range(i + 1, len(perms)):
            if compose(perms[i], perms[j]) != compose(perms[j], perms[i]):
                return i, j
    return None


def find_reversal_witness(gens: GeneratingSet, table: GroupTable, max_len: int) -> Word | None:
    """First relation (length-lex) of length <= max_len whose reversal is not a relation."""
    # an alphabet of involutions reverses every word to its inverse's image
    if all((p * p).is_identity() for p in gens.perms):
        return None
    from palinwidth.palindromes import relator_images

    # no relator with nontrivial reversal means N is trivial: nothing to find
    if not (relator_images(gens, table).reversal != 0).any():
        return None
    for w in enumerate_relations(gens, table, max_len):
        if evaluate(reverse_word(w), gens, table) != 0:
            return w
    return None


@dataclass
class AugmentationResult:
    gens_out: GeneratingSet
    table_out: GroupTable
    added: str | None
    witness_relation: Word | None
    pair: tuple[int, int] | None = None

    @property
    def witness_found(self) -> bool:
        return self.witness_relation is not None


def _fresh_label(labels, base="c"):
    if base not in labels:
        return base
    k = 1
    while f"{base}{k}" in labels:
        k += 1
    return f"{base}{k}"


def lemma_augment(gens: GeneratingSet, table: GroupTable, max_relation_len: int = 12,
                  max_order: int | None = None) -> AugmentationResult:
    """Adjoin at most one generator so that some relation reverses to a non-relation.

    Phase 1 keeps the generating set if such a relation already exists within
    the cap.  Phase 2 adjoins ``c = x*y`` for the first non-commuting pair
    and searches again over the extended alphabet.
    """
    pair = find_noncommuting_pair(gens)
    if pair is None:
        raise InapplicableError("lemma inapplicable: generators commute pairwise (abelian group)")
    q = find_reversal_witness(gens, table, max_relation_len)
    if q is not None:
        return AugmentationResult(gens, table, None, q, pair)

    x, y = pair
    label = _fresh_label(gens.labels)
    c = compose(gens.perms[x], gens.perms[y])
    gens2 = gens.extended(label, c)
    table2 = closure(list(gens2.perms), max_order=max_order)
    if table2.order != table.order:
        raise InvariantViolation("adjoining a product of generators changed the group")
    q = find_reversal_witness(gens2, table2, max_relation_len)
    if q is not None and (evaluate(q, gens2, table2) != 0 or evaluate(reverse_word(q), gens2, table2) == 0):
        raise InvariantViolation("witness relation failed its own check")
    return AugmentationResult(gens2, table2, label, q, pair)


def class_genset(cls, table: GroupTable, prefix: str = "x") -> GeneratingSet:
    """One generator per class member, in element index order."""
    members = cls.indices().tolist()
    return GeneratingSet([f"{prefix}{k + 1}" for k in range(len(members))],
                         [table.element(i) for i in members], table.degree)


def first_involution(table: GroupTable) -> int | None:
    sq = table.multiply(range(table.order), range(table.order))
    for i in range(1, table.order):
        if sq[i] == 0:
            return i
    return None


def involution_class_genset(table: GroupTable) -> GeneratingSet:
    """The conjugacy class of the first involution, as a generating set."""
    g = first_involution(table)
    if g is None:
        raise InapplicableError("no involution in the group")
    if table.order < 2 or not is_simple(table):
        raise InapplicableError("not simple or not generating: the group is not simple")
    cls = conjugacy_class(g, table)
    if not normal_closure(cls).is_full():
        raise InapplicableError("not simple or not generating")
    return class_genset(cls, table)


def sigma_class_genset(n: int, max_order: int | None = None) -> tuple[GeneratingSet, GroupTable]:
    """Conjugacy class of (1 2)(3 4) in A_n and the table it generates."""
    if n < 5:
        raise InapplicableError("sigma-class generating sets need n >= 5")
    _, table = catalog_group(f"A{n}", max_order=max_order)
    sigma = from_cycles([(0, 1), (2, 3)], n)
    cls = conjugacy_class(table.index_of(sigma), table)
    gens = class_genset(cls, table)
    return gens, closure(list(gens.perms), max_order=max_order)


# -- catalog -----------------------------------------------------------------


def _cycle(points, degree):
    return from_cycles([list(points)], degree)


def _psl2(p):
    # points 0..p-1 plus infinity as index p
    inf = p
    t = [(x + 1) % p for x in range(p)] + [inf]
    s = []
    for x in range(p):
        s.append(inf if x == 0 else (-pow(x, -1, p)) % p)
    s.append(0)
    return [Permutation(t), Permutation(s)]


_NAME = re.compile(r"^\s*(?:(A|S|C|D)_?(\d+)|PSL\(\s*2\s*,\s*(\d+)\s*\))\s*$", re.IGNORECASE)

PSL_PRIMES = (5, 7, 11, 13)


def catalog_generators(name: str) -> GeneratingSet:
    """Standard generators for ``A<n>``, ``S<n>``, ``C<n>``, ``D<2n>``, ``PSL(2,p)``."""
    m = _NAME.match(name)
    if not m:
        raise ParseError(f"unknown group name {name!r}")
    kind, num, prime = m.groups()
    if prime is not None:
        p = int(prime)
        if p not in PSL_PRIMES:
            raise ParseError(f"PSL(2,p) supported for p in {PSL_PRIMES}")
        return GeneratingSet(["t", "s"], _psl2(p))
    kind = kind.upper()
    n = int(num)
    if kind in "AS" and not 2 <= n <= 10:
        raise ParseError(f"{kind}{n}: n must be in 2..10")
    if kind == "S":
        if n == 2:
            return GeneratingSet(["a"], [_cycle((0, 1), 2)])
        return GeneratingSet(["a", "b"], [_cycle((0, 1), n), _cycle(range(n), n)])
    if kind == "A":
        if n < 3:
            return GeneratingSet(["a"], [Permutation.identity(n)])
        if n == 3:
            return GeneratingSet(["a"], [_cycle((0, 1, 2), 3)])
        tail = range(n) if n % 2 else range(1, n)
        return GeneratingSet(["a", "b"], [_cycle((0, 1, 2), n), _cycle(tail, n)])
    if kind == "C":
        if not 1 <= n <= 64:
            raise ParseError("C<n>: n must be in 1..64")
        return GeneratingSet(["a"], [_cycle(range(n), n) if n > 1 else Permutation.identity(1)])
    # dihedral of order n on n/2 points
    if n % 2 or not 6 <= n <= 64:
        raise ParseError("D<n>: n must be even and in 6..64 (order n)")
    k = n // 2
    refl = Permutation([(-i) % k for i in range(k)])
    return GeneratingSet(["r", "f"], [_cycle(range(k), k), refl])


def catalog_group(name: str, max_order: int | None = None) -> tuple[GeneratingSet, GroupTable]:
    gens = catalog_generators(name)
    return gens, closure(list(gens.perms), max_order=max_order)


def read_genset_file(path) -> GeneratingSet:
    """Parse a generating-set file.

    Line 1 is ``degree N``; every other non-comment line is
    ``label = cycles``.  ``#`` starts a comment.
    """
    text = Path(path).read_text(encoding="utf-8")
    return parse_genset_text(text)


def parse_genset_text(text: str) -> GeneratingSet:
    degree = None
    labels, perms = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'degree N'")
            degree = int(m.group(1))
            if degree < 1:
                raise ParseError(f"line {lineno}: degree must be positive")
            continue
        label, sep, cycles = line.partition("=")
        label = label.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", label):
            raise ParseError(f"line {lineno}: expected 'label = cycles'")
        if label in labels:
            raise ParseError(f"line {lineno}: duplicate label {label!r}")
        try:
            perms.append(parse_cycles(cycles, degree))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        labels.append(label)
    if degree is None:
        raise ParseError("missing 'degree N' line")
    if not perms:
        raise ParseError("no generators given")
    return GeneratingSet(labels, perms, degree)
