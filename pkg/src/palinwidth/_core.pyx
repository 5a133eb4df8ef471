# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: permutation hashing, group closure, product BFS.

Rows are packed four bits per point into a 64-bit key, so degree <= 16.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t, int32_t

from palinwidth.errors import CapacityError

cnp.import_array()

MAX_DEGREE = 16


cdef inline uint64_t _mix(uint64_t x) nogil:
    x ^= x >> 33
    x *= 0xff51afd7ed558ccdULL
    x ^= x >> 33
    x *= 0xc4ceb9fe1a85ec53ULL
    x ^= x >> 33
    return x


cdef inline uint64_t _pack(const uint8_t* row, int n) nogil:
    cdef uint64_t key = 0
    cdef int i
    for i in range(n):
        key |= (<uint64_t>row[i]) << (4 * i)
    return key


cdef class PermIndex:
    """Open-addressing hash table from packed rows to element indices."""

    cdef public int degree
    cdef uint64_t[::1] keys
    cdef int32_t[::1] vals
    cdef uint64_t mask
    cdef Py_ssize_t count

    def __init__(self, int degree, rows=None, Py_ssize_t capacity=64):
        if degree > MAX_DEGREE:
            raise ValueError(f"degree {degree} exceeds packed-key limit {MAX_DEGREE}")
        self.degree = degree
        self.count = 0
        self._alloc(capacity)
        if rows is not None:
            self._add_rows(np.ascontiguousarray(rows, dtype=np.uint8))

    cdef void _alloc(self, Py_ssize_t capacity):
        cdef Py_ssize_t size = 64
        while size < 2 * capacity:
            size *= 2
        self.keys = np.zeros(size, dtype=np.uint64)
        self.vals = np.full(size, -1, dtype=np.int32)
        self.mask = size - 1

    def _add_rows(self, const uint8_t[:, ::1] rows):
        cdef Py_ssize_t i
        for i in range(rows.shape[0]):
            self.insert(_pack(&rows[i, 0], self.degree), <int32_t>i)

    def __len__(self):
        return self.count

    cdef inline int32_t find(self, uint64_t key) nogil:
        cdef uint64_t slot = _mix(key) & self.mask
        while self.vals[slot] >= 0:
            if self.keys[slot] == key:
                return self.vals[slot]
            slot = (slot + 1) & self.mask
        return -1

    cdef void insert(self, uint64_t key, int32_t val):
        cdef uint64_t slot
        if 2 * (self.count + 1) > <Py_ssize_t>(self.mask + 1):
            self._grow()
        slot = _mix(key) & self.mask
        while self.vals[slot] >= 0:
            slot = (slot + 1) & self.mask
        self.keys[slot] = key
        self.vals[slot] = val
        self.count += 1

    cdef void _grow(self):
        cdef uint64_t[::1] old_keys = self.keys
        cdef int32_t[::1] old_vals = self.vals
        cdef Py_ssize_t i, old_size = old_vals.shape[0]
        cdef uint64_t slot
        self._alloc(old_size)
        for i in range(old_size):
            if old_vals[i] >= 0:
                slot = _mix(old_keys[i]) & self.mask
                while self.vals[slot] >= 0:
                    slot = (slot + 1) & self.mask
                self.keys[slot] = old_keys[i]
                self.vals[slot] = old_vals[i]

    def lookup_many(self, images):
        cdef const uint8_t[:, ::1] rows = np.ascontiguousarray(images, dtype=np.uint8)
        cdef Py_ssize_t i, k = rows.shape[0]
        out = np.empty(k, dtype=np.int32)
        cdef int32_t[::1] o = out
        for i in range(k):
            o[i] = self.find(_pack(&rows[i, 0], self.degree))
        return out


def closure_bfs(letter_images, Py_ssize_t max_order):
    """Breadth-first enumeration of the group generated by the letter rows.

    Returns ``(images, trans, depth, parent, parent_col, index)``.
    """
    cdef const uint8_t[:, ::1] lim = np.ascontiguousarray(letter_images, dtype=np.uint8)
    cdef int n_letters = lim.shape[0]
    cdef int n = lim.shape[1]
    cdef Py_ssize_t cap = min(max_order, 4096)
    cdef PermIndex index = PermIndex(n, capacity=cap)

    images_a = np.empty((cap, n), dtype=np.uint8)
    trans_a = np.empty((cap, n_letters), dtype=np.int32)
    depth_a = np.empty(cap, dtype=np.int32)
    parent_a = np.empty(cap, dtype=np.int32)
    pcol_a = np.empty(cap, dtype=np.int32)
    cdef uint8_t[:, ::1] images = images_a
    cdef int32_t[:, ::1] trans = trans_a
    cdef int32_t[::1] depth = depth_a
    cdef int32_t[::1] parent = parent_a
    cdef int32_t[::1] pcol = pcol_a

    cdef uint8_t buf[16]
    cdef Py_ssize_t head = 0, count = 1
    cdef int c, k
    cdef int32_t j
    cdef uint64_t key

    for k in range(n):
        images[0, k] = k
    depth[0] = 0
    parent[0] = -1
    pcol[0] = -1
    index.insert(_pack(&images[0, 0], n), 0)

    while head < count:
        for c in range(n_letters):
            for k in range(n):
                buf[k] = lim[c, images[head, k]]
            key = _pack(buf, n)
            j = index.find(key)
            if j < 0:
                if count >= max_order:
                    raise CapacityError(count, max_order)
                if count == cap:
                    cap = min(2 * cap, max_order)
                    images_a = np.resize(images_a, (cap, n))
                    trans_a = np.resize(trans_a, (cap, n_letters))
                    depth_a = np.resize(depth_a, cap)
                    parent_a = np.resize(parent_a, cap)
                    pcol_a = np.resize(pcol_a, cap)
                    images = images_a
                    trans = trans_a
                    depth = depth_a
                    parent = parent_a
                    pcol = pcol_a
                j = <int32_t>count
                for k in range(n):
                    images[count, k] = buf[k]
                depth[count] = depth[head] + 1
                parent[count] = <int32_t>head
                pcol[count] = c
                index.insert(key, j)
                count += 1
            trans[head, c] = j
        head += 1

    return (
        images_a[:count].copy(),
        trans_a[:count].copy(),
        depth_a[:count].copy(),
        parent_a[:count].copy(),
        pcol_a[:count].copy(),
        index,
    )


def product_layers(images_in, PermIndex index, start, factors, int max_layers=-1):
    """Layered product BFS: W_0 = start, W_{k+1} = W_k * factors.

    Frontier in ascending index order, factors in the given order, first
    discovery wins.  Returns ``(layer, link_prev, link_factor, sizes)``.
    """
    cdef const uint8_t[:, ::1] images = np.ascontiguousarray(images_in, dtype=np.uint8)
    cdef Py_ssize_t n = images.shape[0]
    cdef int deg = images.shape[1]
    cdef int32_t[::1] fac = np.ascontiguousarray(factors, dtype=np.int32)
    cdef Py_ssize_t n_fac = fac.shape[0]

    layer_a = np.full(n, -1, dtype=np.int32)
    prev_a = np.full(n, -1, dtype=np.int32)
    lfac_a = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] layer = layer_a
    cdef int32_t[::1] lprev = prev_a
    cdef int32_t[::1] lfac = lfac_a

    front_a = np.unique(np.asarray(start, dtype=np.int32))
    cdef int32_t[::1] front = front_a
    next_a = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] nxt = next_a

    cdef Py_ssize_t i, f, n_front = front.shape[0], n_next, total
    cdef int32_t w, p, j
    cdef int k = 0, t
    cdef uint8_t buf[16]

    for i in range(n_front):
        layer[front[i]] = 0
    total = n_front
    sizes = [int(total)]

    while n_front > 0 and total < n and (max_layers < 0 or k < max_layers):
        k += 1
        n_next = 0
        for i in range(n_front):
            w = front[i]
            for f in range(n_fac):
                p = fac[f]
                for t in range(deg):
                    buf[t] = images[p, images[w, t]]
                j = index.find(_pack(buf, deg))
                if j < 0:
                    raise KeyError("product fell outside the table")
                if layer[j] < 0:
                    layer[j] = k
                    lprev[j] = w
                    lfac[j] = p
                    nxt[n_next] = j
                    n_next += 1
        if n_next == 0:
            break
        front_a = np.sort(next_a[:n_next])
        front = front_a
        n_front = n_next
        total += n_next
        sizes.append(int(total))
    return layer_a, prev_a, lfac_a, sizes


def wrap_closure(trans_in, inv_in, inv_col_in, seeds, seed_cols):
    """Least set containing the seeds and closed under m -> l*m*l.

    Returns ``(order, parent, parent_col)``; non-members keep parent -2.
    """
    cdef const int32_t[:, ::1] trans = np.ascontiguousarray(trans_in, dtype=np.int32)
    cdef const int32_t[::1] inv = np.ascontiguousarray(inv_in, dtype=np.int32)
    cdef const int32_t[::1] inv_col = np.ascontiguousarray(inv_col_in, dtype=np.int32)
    cdef Py_ssize_t n = trans.shape[0]
    cdef int n_cols = trans.shape[1]

    parent_a = np.full(n, -2, dtype=np.int32)
    pcol_a = np.full(n, -1, dtype=np.int32)
    order_a = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] parent = parent_a
    cdef int32_t[::1] pcol = pcol_a
    cdef int32_t[::1] order = order_a
    cdef Py_ssize_t count = 0, head = 0
    cdef int32_t m, x, left, mi
    cdef int c

    for s, sc in zip(seeds, seed_cols):
        m = <int32_t>s
        if parent[m] == -2:
            parent[m] = -1
            pcol[m] = <int32_t>sc
            order[count] = m
            count += 1

    while head < count:
        m = order[head]
        mi = inv[m]
        for c in range(n_cols):
            left = inv[trans[mi, inv_col[c]]]
            x = trans[left, c]
            if parent[x] == -2:
                parent[x] = m
                pcol[x] = c
                order[count] = x
                count += 1
        head += 1
    return order_a[:count].copy(), parent_a, pcol_a
