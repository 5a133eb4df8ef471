"""Fully enumerated permutation groups.

A :class:`GroupTable` is the closure of a generator list under right
multiplication by the generators and their inverses.  Elements are indexed
densely in breadth-first order (ties broken by letter index), index 0 being
the identity.  :class:`ElementSet` is a boolean mask over those indices.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Sequence

import numpy as np

from palinwidth import kernels
from palinwidth.errors import NotASubgroupError, TableMismatchError
from palinwidth.perm import Permutation

DEFAULT_MAX_ORDER = 2_000_000


def default_max_order() -> int:
    env = os.environ.get("PALINWIDTH_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


_table_ids = itertools.count(1)


class GroupTable:
    """Dense index of a finite permutation group with its Cayley transitions.

    Letters (transition columns) are the generators in order, each followed
    by its inverse unless the generator is an involution or the identity.
    ``columns[c]`` is the ``(generator index, sign)`` pair of column ``c``.

    Attributes are numpy arrays: ``images`` (order x degree), ``trans``
    (order x letters), ``depth``, ``parent``, ``parent_col``, ``inv``.
    """

    def __init__(self, generators, images, trans, depth, parent, parent_col, index, columns, backend):
        self.table_id = next(_table_ids)
        self.generators = list(generators)
        self.degree = images.shape[1]
        self.images = images
        self.trans = trans
        self.depth = depth
        self.parent = parent
        self.parent_col = parent_col
        self.columns = columns
        self.col_of = {}
        for c, (g, s) in enumerate(columns):
            self.col_of[(g, s)] = c
        for c, (g, s) in enumerate(columns):
            self.col_of.setdefault((g, -s), c)  # self-inverse letters share a column
        self.inv_col = np.array([self.col_of[(g, -s)] for g, s in columns], dtype=np.int32)
        self._index = index
        self.backend = backend
        # argsort of a permutation row is its inverse
        inv_rows = np.argsort(images, axis=1).astype(np.uint8)
        self.inv = index.lookup_many(inv_rows)

    def __len__(self):
        return self.images.shape[0]

    @property
    def order(self) -> int:
        return self.images.shape[0]

    @property
    def n_letters(self) -> int:
        return len(self.columns)

    @property
    def diameter(self) -> int:
        return int(self.depth.max())

    def element(self, i: int) -> Permutation:
        return Permutation(self.images[i].tolist())

    @property
    def elements(self) -> list[Permutation]:
        return [Permutation(r) for r in self.images.tolist()]

    def index_of(self, perm: Permutation) -> int:
        if perm.degree != self.degree:
            raise TableMismatchError(f"degree {perm.degree} does not match table degree {self.degree}")
        j = int(self._index.lookup_many(np.array([perm.images], dtype=np.uint8))[0])
        if j < 0:
            raise KeyError(f"{perm!r} is not in the group")
        return j

    def indices_of_images(self, rows) -> np.ndarray:
        return self._index.lookup_many(rows)

    def letter_perm(self, col: int) -> Permutation:
        return self.element(int(self.trans[0, col]))

    def multiply(self, a, b):
        """Indices of ``elements[a] * elements[b]`` (vectorised over arrays)."""
        a = np.atleast_1d(np.asarray(a))
        b = np.atleast_1d(np.asarray(b))
        rows = np.take_along_axis(self.images[b], self.images[a].astype(np.intp), axis=1)
        return self._index.lookup_many(rows)

    def mul(self, a: int, b: int) -> int:
        return int(self.multiply(a, b)[0])

    def left_letter(self, x, col):
        """Indices of ``letter(col) * elements[x]``."""
        return self.inv[self.trans[self.inv[x], self.inv_col[col]]]

    def conjugate_by_letter(self, x, col):
        """Indices of ``letter^-1 * elements[x] * letter``."""
        return self.trans[self.inv[self.trans[self.inv[x], col]], col]

    def canonical_letters(self, i: int) -> list[int]:
        """Columns along the BFS spanning tree path from the identity to ``i``."""
        cols = []
        while i != 0:
            cols.append(int(self.parent_col[i]))
            i = int(self.parent[i])
        cols.reverse()
        return cols

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def product_layers(self, start, factors, max_layers=-1):
        return self.backend.product_layers(self.images, self._index, start, factors, max_layers)

    def full(self) -> ElementSet:
        return ElementSet(self, np.ones(self.order, dtype=bool))

    def empty(self) -> ElementSet:
        return ElementSet(self, np.zeros(self.order, dtype=bool))

    def set_of(self, indices: Iterable[int]) -> ElementSet:
        s = self.empty()
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        s.bits[idx] = True
        return s

    def __repr__(self):
        return f"GroupTable(order={self.order}, degree={self.degree}, letters={self.n_letters})"


class ElementSet:
    """Subset of a :class:`GroupTable`, stored as a boolean mask."""

    __slots__ = ("table", "bits")

    def __init__(self, table: GroupTable, bits: np.ndarray):
        if bits.shape != (table.order,):
            raise ValueError("bit length must equal the table order")
        self.table = table
        self.bits = bits

    @property
    def table_id(self) -> int:
        return self.table.table_id

    def _check(self, other: ElementSet):
        if other.table_id != self.table_id:
            raise TableMismatchError("element sets belong to different tables")

    def __len__(self):
        return int(self.bits.sum())

    def __contains__(self, i):
        return bool(self.bits[i])

    def __iter__(self):
        return iter(np.flatnonzero(self.bits).tolist())

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bits).astype(np.int32)

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        self._check(other)
        return bool(np.array_equal(self.bits, other.bits))

    def __or__(self, other):
        self._check(other)
        return ElementSet(self.table, self.bits | other.bits)

    def __and__(self, other):
        self._check(other)
        return ElementSet(self.table, self.bits & other.bits)

    def __sub__(self, other):
        self._check(other)
        return ElementSet(self.table, self.bits & ~other.bits)

    def issubset(self, other) -> bool:
        self._check(other)
        return not bool((self.bits & ~other.bits).any())

    def is_full(self) -> bool:
        return bool(self.bits.all())

    def __repr__(self):
        return f"ElementSet(size={len(self)}, order={self.table.order})"


def _letter_rows(generators: Sequence[Permutation]):
    columns = []
    rows = []
    for g, perm in enumerate(generators):
        columns.append((g, 1))
        rows.append(perm.images)
        inv = [0] * perm.degree
        for i, v in enumerate(perm.images):
            inv[v] = i
        if tuple(inv) != perm.images:
            columns.append((g, -1))
            rows.append(inv)
    return columns, np.array(rows, dtype=np.uint8)


def closure(generators: Sequence[Permutation], max_order: int | None = None, backend=None) -> GroupTable:
    """Enumerate the group generated by ``generators``.

    Raises :class:`~palinwidth.errors.CapacityError` when more than
    ``max_order`` elements would be needed.
    """
    if not generators:
        raise ValueError("closure needs at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise ValueError("generators must share one degree")
    if max_order is None:
        max_order = default_max_order()
    columns, rows = _letter_rows(generators)
    mod = kernels.backend_for(degree, backend)
    images, trans, depth, parent, parent_col, index = mod.closure_bfs(rows, max_order)
    return GroupTable(generators, images, trans, depth, parent, parent_col, index, columns, mod)


def conjugation_closure(seed: ElementSet) -> ElementSet:
    """Smallest superset of ``seed`` closed under conjugation by the letters."""
    table = seed.table
    bits = seed.bits.copy()
    frontier = np.flatnonzero(bits)
    while frontier.size:
        cand = np.concatenate([table.conjugate_by_letter(frontier, c) for c in range(table.n_letters)])
        cand = np.unique(cand)
        cand = cand[~bits[cand]]
        bits[cand] = True
        frontier = cand
    return ElementSet(table, bits)


def conjugacy_class(g: int, table: GroupTable) -> ElementSet:
    return conjugation_closure(table.set_of([g]))


def class_labels(table: GroupTable) -> np.ndarray:
    """Conjugacy-class label per element; classes numbered by least member."""
    labels = np.full(table.order, -1, dtype=np.int32)
    k = 0
    for i in range(table.order):
        if labels[i] >= 0:
            continue
        labels[conjugacy_class(i, table).bits] = k
        k += 1
    return labels


def class_representatives(table: GroupTable) -> list[int]:
    labels = class_labels(table)
    _, first = np.unique(labels, return_index=True)
    return sorted(first.tolist())


def subgroup_generated(seed: ElementSet) -> ElementSet:
    """Subgroup generated by ``seed``.

    Seed elements are scanned in index order; each one not yet covered is
    added as a generator and the subgroup is re-enumerated by product BFS.
    Each addition at least doubles the subgroup, so few passes are needed.
    """
    table = seed.table
    gens: list[int] = []
    bits = np.zeros(table.order, dtype=bool)
    bits[0] = True
    for s in seed.indices():
        if bits[s]:
            continue
        gens.append(int(s))
        layer, *_ = table.product_layers([0], gens)
        bits = layer >= 0
    return ElementSet(table, bits)


def is_subgroup(sub: ElementSet) -> bool:
    return len(sub) > 0 and subgroup_generated(sub) == sub


def normal_closure(seed: ElementSet) -> ElementSet:
    """Smallest normal subgroup containing ``seed``.

    Alternates conjugation closure and subgroup closure until neither adds
    anything.
    """
    current = seed
    while True:
        conj = conjugation_closure(current)
        sub = subgroup_generated(conj)
        if sub == current:
            return sub
        current = sub


def _require_subgroup(sub: ElementSet):
    if not is_subgroup(sub):
        raise NotASubgroupError("not a subgroup: set is not closed under product and inverse")


def is_normal(sub: ElementSet) -> bool:
    """True iff the subgroup is invariant under conjugation by every letter."""
    _require_subgroup(sub)
    table = sub.table
    members = sub.indices()
    for c in range(table.n_letters):
        if not sub.bits[table.conjugate_by_letter(members, c)].all():
            return False
    return True


def is_simple(table: GroupTable) -> bool:
    """True iff every non-identity element has normal closure equal to G."""
    if table.order < 2:
        raise ValueError("simplicity is undefined for the trivial group")
    for g in class_representatives(table):
        if g == 0:
            continue
        if not normal_closure(table.set_of([g])).is_full():
            return False
    return True


def is_abelian(table: GroupTable) -> bool:
    gens = [table.index_of(p) for p in table.generators]
    return all(table.mul(a, b) == table.mul(b, a) for a, b in itertools.combinations(gens, 2))


def left_coset_labels(sub: ElementSet) -> np.ndarray:
    """Label each element by its left coset ``g*sub``; label = coset's least index."""
    table = sub.table
    members = sub.indices()
    labels = np.full(table.order, -1, dtype=np.int32)
    sub_rows = table.images[members]
    for g in range(table.order):
        if labels[g] >= 0:
            continue
        # g*n has images n[g[i]]
        rows = sub_rows[:, table.images[g].astype(np.intp)]
        labels[table.indices_of_images(rows)] = g
    return labels


def coset_rep_bound(sub: ElementSet) -> int:
    """Largest, over left cosets of ``sub``, of the shortest member word length."""
    _require_subgroup(sub)
    table = sub.table
    labels = left_coset_labels(sub)
    # indices are in BFS order, so a coset's least index has its minimum depth
    reps = np.unique(labels)
    return int(table.depth[reps].max())
