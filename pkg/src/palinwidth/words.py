"""Formal words over a labelled generating alphabet.

Words are never reduced implicitly: palindromicity is a property of the
literal letter sequence.  Letters order by generator index, positive before
negative; words order by length, then lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from palinwidth.errors import ParseError, TableMismatchError
from palinwidth.perm import Permutation


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)

    def sort_key(self):
        return (self.gen, 0 if self.sign > 0 else 1)


class Word(tuple):
    """Immutable sequence of :class:`Letter`."""

    def __new__(cls, letters=()):
        return super().__new__(cls, (Letter(*l) for l in letters))

    def __add__(self, other):
        return Word(tuple.__add__(self, other))

    def __getitem__(self, item):
        out = tuple.__getitem__(self, item)
        return Word(out) if isinstance(item, slice) else out

    def __repr__(self):
        return f"Word({list(self)!r})"

    def sort_key(self):
        return (len(self), tuple(l.sort_key() for l in self))


@dataclass(frozen=True)
class GeneratingSet:
    labels: tuple[str, ...]
    perms: tuple[Permutation, ...]
    degree: int

    def __init__(self, labels: Sequence[str], perms: Sequence[Permutation], degree: int | None = None):
        labels = tuple(labels)
        perms = tuple(perms)
        if len(labels) != len(perms):
            raise ValueError("one label per permutation")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        if degree is None:
            if not perms:
                raise ValueError("degree needed for an empty generating set")
            degree = perms[0].degree
        if any(p.degree != degree for p in perms):
            raise ValueError(f"all generators must have degree {degree}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "degree", degree)

    def __len__(self):
        return len(self.perms)

    def letters(self) -> list[Letter]:
        """All letters of X^{+-1}, in letter order."""
        return [Letter(g, s) for g in range(len(self)) for s in (1, -1)]

    def extended(self, label: str, perm: Permutation) -> GeneratingSet:
        return GeneratingSet(self.labels + (label,), self.perms + (perm,), self.degree)


def reverse_word(w: Word) -> Word:
    """Letters in reverse order, signs untouched."""
    return Word(reversed(w))


def invert_word(w: Word) -> Word:
    return Word(l.inverse() for l in reversed(w))


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for l in w:
        if stack and stack[-1] == l.inverse():
            stack.pop()
        else:
            stack.append(l)
    return Word(stack)


def is_reduced(w: Word) -> bool:
    return all(a != b.inverse() for a, b in zip(w, w[1:]))


def is_palindrome(w: Word) -> bool:
    return tuple(w) == tuple(reversed(w))


def _check_alphabet(gens: GeneratingSet, table):
    if tuple(table.generators) != gens.perms:
        raise TableMismatchError("table was not generated by this generating set")


def letter_column(l: Letter, table) -> int:
    try:
        return table.col_of[(l.gen, l.sign)]
    except KeyError:
        raise TableMismatchError(f"letter {l} not in the table's alphabet") from None


def evaluate(w: Word, gens: GeneratingSet, table) -> int:
    """Element index of the word's image, folding transitions left to right."""
    _check_alphabet(gens, table)
    trans = table.trans
    i = 0
    for l in w:
        i = int(trans[i, letter_column(l, table)])
    return i


def column_letter(col: int, table) -> Letter:
    return Letter(*table.columns[col])


def canonical_word(i: int, table) -> Word:
    """BFS spanning-tree word of element ``i`` (a shortest word)."""
    return Word(column_letter(c, table) for c in table.canonical_letters(i))


def schreier_relators(gens: GeneratingSet, table) -> Iterator[Word]:
    """Spanning-tree relators ``c(u) l c(u*l)^-1``, freely reduced, non-empty.

    Together they generate the full kernel of the evaluation map as a
    subgroup of the free group.  Yielded in (element index, letter) order,
    duplicates removed.
    """
    _check_alphabet(gens, table)
    seen = set()
    for u in range(table.order):
        cu = canonical_word(u, table)
        for l in gens.letters():
            v = int(table.trans[u, letter_column(l, table)])
            w = free_reduce(cu + Word([l]) + invert_word(canonical_word(v, table)))
            if w and w not in seen:
                seen.add(w)
                yield w


def enumerate_relations(gens: GeneratingSet, table, max_len: int) -> Iterator[Word]:
    """All freely reduced non-empty relations of length <= ``max_len``.

    Length-then-lexicographic order, no duplicates.  A prefix ``u`` of a
    length-``L`` candidate is abandoned once the shortest word for
    ``u``'s image exceeds the remaining length, since the suffix has to
    spell that image's inverse.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    _check_alphabet(gens, table)
    letters = sorted(gens.letters(), key=Letter.sort_key)
    cols = [letter_column(l, table) for l in letters]
    inv_pos = [letters.index(l.inverse()) for l in letters]
    trans = table.trans.tolist()
    depth = table.depth.tolist()
    n_letters = len(letters)

    for length in range(1, max_len + 1):
        # iterative DFS in lexicographic order
        path: list[int] = []
        elems = [0]
        choice = [0]
        while choice:
            k = len(path)
            pos = choice[-1]
            if pos >= n_letters or k == length:
                if k == length and elems[-1] == 0:
                    yield Word(letters[p] for p in path)
                choice.pop()
                if path:
                    path.pop()
                    elems.pop()
                    choice[-1] += 1
                continue
            if path and inv_pos[path[-1]] == pos:
                choice[-1] += 1
                continue
            e = trans[elems[-1]][cols[pos]]
            if depth[e] > length - k - 1:
                choice[-1] += 1
                continue
            path.append(pos)
            elems.append(e)
            choice.append(0)


def format_word(w: Word, gens: GeneratingSet) -> str:
    """Text syntax: ``x y^-1 x``; the empty word prints as ``1``."""
    if not w:
        return "1"
    return " ".join(gens.labels[l.gen] + ("^-1" if l.sign < 0 else "") for l in w)


def parse_word(text: str, gens: GeneratingSet) -> Word:
    lookup = {lab: i for i, lab in enumerate(gens.labels)}
    out = []
    offset = 0
    for tok in text.split():
        pos = text.index(tok, offset)
        offset = pos + len(tok)
        if tok == "1" and "1" not in lookup:
            continue
        sign = 1
        name = tok
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        elif tok.endswith("^1"):
            name = tok[:-2]
        if name not in lookup:
            raise ParseError(f"unknown generator label {name!r}", pos)
        out.append(Letter(lookup[name], sign))
    return Word(out)


def word_permutation(w: Word, gens: GeneratingSet) -> Permutation:
    """Evaluate a word by direct composition, without any table."""
    from palinwidth.perm import compose, inverse

    result = Permutation.identity(gens.degree)
    for l in w:
        p = gens.perms[l.gen]
        result = compose(result, p if l.sign > 0 else inverse(p))
    return result
