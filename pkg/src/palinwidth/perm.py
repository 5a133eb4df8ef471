"""Permutations on {0, ..., n-1} and the cycle-notation codec.

Products follow the "apply left factor first" convention::

    compose(p, q).images[i] == q.images[p.images[i]]

so evaluating a word left to right is a plain fold.  Cycle notation uses
1-based point labels, e.g. ``(1 2)(3 4)``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from palinwidth.errors import ParseError


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n == 0:
            raise ValueError("permutation degree must be positive")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a bijection on 0..{n - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({print_cycles(self)!r}, degree={self.degree})"

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else inverse(self)
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def moved_points(self) -> int:
        """Size of the support."""
        return sum(1 for i, v in enumerate(self.images) if i != v)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point (0-based)."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order, fixed points included."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type())

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation([qi[v] for v in p.images])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Permutation(inv)


def from_cycles(cycles: Iterable[Iterable[int]], degree: int) -> Permutation:
    """Build from 0-based disjoint cycles."""
    images = list(range(degree))
    for cyc in cycles:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return Permutation(images)


_TOKEN = re.compile(r"\s*(\(|\)|\d+|,|\S)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``"(1 2)(3 4)"``.

    Points inside a cycle may be separated by whitespace or commas.  ``"()"``,
    ``"id"`` and the empty string denote the identity.  Errors carry the
    character offset of the offending token.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    stripped = text.strip()
    if stripped in ("", "id", "()"):
        return Permutation.identity(degree)

    images = list(range(degree))
    used: set[int] = set()
    current: list[int] | None = None
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace left
        tok = m.group(1)
        tok_pos = m.start(1)
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise ParseError("nested '('", tok_pos)
            current = []
        elif tok == ")":
            if current is None:
                raise ParseError("unbalanced ')'", tok_pos)
            for a, b in zip(current, current[1:] + current[:1]):
                images[a] = b
            current = None
        elif tok.isdigit():
            if current is None:
                raise ParseError("point outside parentheses", tok_pos)
            point = int(tok)
            if point < 1 or point > degree:
                raise ParseError(f"point {point} out of range 1..{degree}", tok_pos)
            if point - 1 in used:
                raise ParseError(f"repeated point {point}", tok_pos)
            used.add(point - 1)
            current.append(point - 1)
        elif tok == ",":
            if current is None:
                raise ParseError("stray ','", tok_pos)
        else:
            raise ParseError(f"unexpected character {tok!r}", tok_pos)
    if current is not None:
        raise ParseError("unclosed '('", len(text))
    return Permutation(images)


def print_cycles(p: Permutation) -> str:
    """1-based cycle notation; the identity prints as ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)
