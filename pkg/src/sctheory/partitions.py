"""Set partitions of ``range(n)`` in restricted-growth canonical form."""

from __future__ import annotations

import functools
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "SetPartition",
    "bell",
    "enumerate_refinement_coarsenings",
    "join",
    "meet",
    "partition_matrix",
    "refines",
    "rgs_iter",
]


def _canonical_labels(labels: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


class SetPartition:
    """A partition of ``{0, ..., n-1}``.

    ``labels[i]`` is the block id of ``i``; block ids appear in first-use
    order, so blocks are sorted by their smallest element and equal
    partitions have equal label tuples.
    """

    __slots__ = ("labels", "_blocks", "_hash")

    def __init__(self, labels: Iterable):
        self.labels = _canonical_labels(list(labels))
        self._blocks = None
        self._hash = None

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> SetPartition:
        blocks = [list(b) for b in blocks]
        if n is None:
            n = sum(len(b) for b in blocks)
        labels = [-1] * n
        for k, b in enumerate(blocks):
            if not b:
                raise ValueError("empty block")
            for i in b:
                if not 0 <= i < n:
                    raise ValueError(f"index {i} outside ground set of size {n}")
                if labels[i] != -1:
                    raise ValueError(f"index {i} appears in two blocks")
                labels[i] = k
        if -1 in labels:
            raise ValueError(f"index {labels.index(-1)} is not covered")
        return cls(labels)

    @classmethod
    def singletons(cls, n: int) -> SetPartition:
        return cls(range(n))

    @classmethod
    def one_block(cls, n: int) -> SetPartition:
        return cls([0] * n)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(len(self))]
            for i, b in enumerate(self.labels):
                out[b].append(i)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    def __len__(self):
        return max(self.labels) + 1 if self.labels else 0

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.labels == other.labels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.labels)
        return self._hash

    def __repr__(self):
        return "SetPartition(" + "|".join(
            ",".join(map(str, b)) for b in self.blocks) + ")"

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.labels[i]]

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> SetPartition:
        return cls.from_blocks(data, n)


def _check_sizes(p: SetPartition, q: SetPartition):
    if p.n != q.n:
        raise ValueError(f"ground-set size mismatch: {p.n} vs {q.n}")


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Finest partition coarser than both (transitive closure of overlaps)."""
    _check_sizes(p, q)
    parent = list(range(p.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        for b in part.blocks:
            r = find(b[0])
            for x in b[1:]:
                s = find(x)
                if s != r:
                    parent[s] = r
    return SetPartition(find(i) for i in range(p.n))


def meet(p: SetPartition, q: SetPartition) -> SetPartition:
    """Blockwise intersections."""
    _check_sizes(p, q)
    return SetPartition(zip(p.labels, q.labels))


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of p lies inside a block of q."""
    _check_sizes(p, q)
    image: dict[int, int] = {}
    for a, b in zip(p.labels, q.labels):
        if image.setdefault(a, b) != b:
            return False
    return True


def partition_matrix(p: SetPartition) -> np.ndarray:
    """0/1 block-membership matrix of shape (blocks, n)."""
    out = np.zeros((len(p), p.n), dtype=np.int64)
    out[list(p.labels), np.arange(p.n)] = 1
    return out


@functools.lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Number of set partitions of an n-set (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def rgs_iter(n: int, prefix: Sequence[int] = ()) -> Iterator[list[int]]:
    """Restricted-growth strings of length n in lexicographic order.

    The same list object is yielded each time and mutated in place; copy it
    if it must outlive the next step.  ``prefix`` fixes the first entries
    (it must itself be a valid restricted-growth prefix), which lets callers
    split the search space into disjoint subtrees.
    """
    k = max(len(prefix), 1)
    if n == 0:
        if not prefix:
            yield []
        return
    a = list(prefix) + [0] * (n - len(prefix))
    # mx[i] = max(a[:i]); position i may hold at most mx[i] + 1
    mx = [-1] * n
    for i in range(1, n):
        mx[i] = max(mx[i - 1], a[i - 1])
    while True:
        yield a
        j = n - 1
        while j >= k and a[j] > mx[j]:
            j -= 1
        if j < k:
            return
        a[j] += 1
        top = max(mx[j], a[j])
        for i in range(j + 1, n):
            a[i] = 0
            mx[i] = top


def enumerate_refinement_coarsenings(base: SetPartition, pinned: int) -> Iterator[SetPartition]:
    """All coarsenings of ``base`` in which the block holding ``pinned`` stays alone.

    Coarsenings are produced as partitions of the set of base blocks in
    restricted-growth order, so the count is Bell(#blocks - 1).
    """
    if not 0 <= pinned < base.n:
        raise ValueError("pinned index outside the ground set")
    blocks = base.blocks
    pin = base.labels[pinned]
    others = [i for i in range(len(blocks)) if i != pin]
    for rgs in rgs_iter(len(others)):
        block_label = [0] * len(blocks)
        block_label[pin] = 0
        for i, r in zip(others, rgs):
            block_label[i] = r + 1
        yield SetPartition(block_label[base.labels[x]] for x in range(base.n))
