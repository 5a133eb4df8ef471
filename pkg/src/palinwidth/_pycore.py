"""Pure-Python kernels.

Same API as the compiled ``_core`` module.  Permutation rows are held as
``bytes`` so that composition is a single ``bytes.translate`` call.
"""

import numpy as np

from palinwidth.errors import CapacityError

MAX_DEGREE = 255


def _table(row):
    # translate() wants a 256-byte lookup table
    return bytes(row) + bytes(range(len(row), 256))


class PermIndex:
    """Exact map from permutation rows to element indices."""

    def __init__(self, degree, rows=()):
        self.degree = degree
        self._map = {}
        for i, row in enumerate(rows):
            self._map[bytes(row)] = i

    def __len__(self):
        return len(self._map)

    def lookup_many(self, images):
        images = np.ascontiguousarray(images, dtype=np.uint8)
        get = self._map.get
        return np.fromiter(
            (get(bytes(r), -1) for r in images), dtype=np.int32, count=len(images)
        )


def closure_bfs(letter_images, max_order):
    """Breadth-first enumeration of the group generated by the letter rows.

    Returns ``(images, trans, depth, parent, parent_col, index)``.
    """
    letter_images = np.ascontiguousarray(letter_images, dtype=np.uint8)
    n_letters, degree = letter_images.shape
    tables = [_table(r) for r in letter_images]
    ident = bytes(range(degree))
    rows = [ident]
    seen = {ident: 0}
    trans = []
    depth = [0]
    parent = [-1]
    parent_col = [-1]
    head = 0
    while head < len(rows):
        row = rows[head]
        d = depth[head] + 1
        out = []
        for c, tab in enumerate(tables):
            prod = row.translate(tab)
            j = seen.get(prod)
            if j is None:
                j = len(rows)
                if j >= max_order:
                    raise CapacityError(j, max_order)
                seen[prod] = j
                rows.append(prod)
                depth.append(d)
                parent.append(head)
                parent_col.append(c)
            out.append(j)
        trans.append(out)
        head += 1

    n = len(rows)
    images = np.frombuffer(b"".join(rows), dtype=np.uint8).reshape(n, degree).copy()
    index = PermIndex(degree)
    index._map = seen
    return (
        images,
        np.asarray(trans, dtype=np.int32).reshape(n, n_letters),
        np.asarray(depth, dtype=np.int32),
        np.asarray(parent, dtype=np.int32),
        np.asarray(parent_col, dtype=np.int32),
        index,
    )


def product_layers(images, index, start, factors, max_layers=-1):
    """Layered product BFS: W_0 = start, W_{k+1} = W_k * factors.

    Frontier elements are processed in ascending index order and factors in
    the given order; the first product reaching an element records the link.
    Returns ``(layer, link_prev, link_factor, sizes)`` with ``sizes`` the
    cumulative reached counts per layer.
    """
    images = np.ascontiguousarray(images, dtype=np.uint8)
    n = images.shape[0]
    rows = [bytes(r) for r in images]
    fac = [int(f) for f in factors]
    fac_tabs = [_table(rows[f]) for f in fac]
    seen = index._map

    layer = [-1] * n
    link_prev = [-1] * n
    link_factor = [-1] * n
    frontier = sorted(set(int(s) for s in start))
    for s in frontier:
        layer[s] = 0
    sizes = [len(frontier)]
    total = len(frontier)
    k = 0
    while frontier and total < n and (max_layers < 0 or k < max_layers):
        k += 1
        new = []
        for w in frontier:
            row = rows[w]
            for f, tab in zip(fac, fac_tabs):
                j = seen[row.translate(tab)]
                if layer[j] < 0:
                    layer[j] = k
                    link_prev[j] = w
                    link_factor[j] = f
                    new.append(j)
        if not new:
            break
        new.sort()
        total += len(new)
        sizes.append(total)
        frontier = new
    return (
        np.asarray(layer, dtype=np.int32),
        np.asarray(link_prev, dtype=np.int32),
        np.asarray(link_factor, dtype=np.int32),
        sizes,
    )


def wrap_closure(trans, inv, inv_col, seeds, seed_cols):
    """Least set containing the seeds and closed under m -> l*m*l.

    ``l*m`` is computed as ``inv[trans[inv[m], inv_col[l]]]``.  Returns
    ``(order, parent, parent_col)``; ``order`` lists members in discovery
    order, ``parent``/``parent_col`` are -1 for seeds (``parent_col`` of a
    seed holds its seed column, -1 for the empty word).
    """
    trans = np.asarray(trans)
    n, n_cols = trans.shape
    tl = trans.tolist()
    iv = [int(v) for v in inv]
    ic = [int(v) for v in inv_col]
    parent = [-2] * n
    parent_col = [-1] * n
    order = []
    for s, c in zip(seeds, seed_cols):
        s = int(s)
        if parent[s] == -2:
            parent[s] = -1
            parent_col[s] = int(c)
            order.append(s)
    head = 0
    while head < len(order):
        m = order[head]
        row_inv = tl[iv[m]]
        for c in range(n_cols):
            left = iv[row_inv[ic[c]]]
            x = tl[left][c]
            if parent[x] == -2:
                parent[x] = m
                parent_col[x] = c
                order.append(x)
        head += 1
    return (
        np.asarray(order, dtype=np.int32),
        np.asarray(parent, dtype=np.int32),
        np.asarray(parent_col, dtype=np.int32),
    )
