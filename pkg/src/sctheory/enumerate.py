"""Exhaustive enumeration of all supercharacter theories of a small group.

Candidates are the coarsenings of the conjugacy-class partition that keep
the identity class alone; each is filtered by the integer subalgebra test
(no character values needed), and the character side is attached
afterwards when a table is available.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import SuperTheory, _admissible_blocks, theory_from_classes, x_from_k
from .groups import FiniteGroup
from .partitions import SetPartition, bell, refines, rgs_iter

__all__ = [
    "DEFAULT_CAP",
    "EnumerationCapError",
    "EnumerationResult",
    "admissible_class_partitions",
    "enumerate_sup",
    "hasse_edges",
    "lattice",
]

DEFAULT_CAP = 5_000_000


class EnumerationCapError(ValueError):
    def __init__(self, classes: int, candidates: int, cap: int):
        self.classes = classes
        self.candidates = candidates
        self.cap = cap
        super().__init__(f"{classes} classes give Bell({classes - 1}) = {candidates} "
                         f"candidates, above the cap {cap}")


@dataclass
class EnumerationResult:
    group: FiniteGroup
    theories: list[SuperTheory]
    stats: dict = field(default_factory=dict)
    _edges: list | None = None

    def __len__(self):
        return len(self.theories)

    @property
    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = hasse_edges(self.theories)
        return self._edges

    def jsonl(self):
        """Theory records followed by one summary record."""
        for T in self.theories:
            yield T.to_json()
        yield {"summary": dict(self.stats, theories=len(self.theories))}


def _cap_from_env(cap):
    if cap is not None:
        return int(cap)
    env = os.environ.get("SCT_CAP")
    return int(env) if env else DEFAULT_CAP


def _scan(args):
    """Worker body: accepted class-label tuples below one RGS prefix."""
    consts, c, prefix = args
    accepted = []
    tested = 0
    for r in rgs_iter(c - 1, prefix):
        tested += 1
        nblocks = max(r, default=-1) + 2
        blocks = [[0]] + [[] for _ in range(nblocks - 1)]
        for k, b in enumerate(r, start=1):
            blocks[b + 1].append(k)
        if _admissible_blocks(consts, blocks, c):
            accepted.append((0,) + tuple(b + 1 for b in r))
    return tested, accepted


def _prefixes(length: int, depth: int):
    depth = min(depth, length)
    if depth == 0:
        return [()]
    return [tuple(p) for p in rgs_iter(depth)]


def admissible_class_partitions(G: FiniteGroup, cap=None, jobs: int = 1):
    """Class-level labelings (identity class alone) passing the subalgebra
    test, in restricted-growth order, plus the number of candidates."""
    c = G.num_classes
    cap = _cap_from_env(cap)
    total = bell(c - 1)
    if total > cap:
        raise EnumerationCapError(c, total, cap)
    consts = G.structure_constants
    if c == 1:
        return [(0,)], 1
    if jobs <= 1:
        tested, acc = _scan((consts, c, ()))
        return acc, tested
    work = [(consts, c, p) for p in _prefixes(c - 1, 4)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_scan, work))
    tested = sum(t for t, _ in parts)
    acc = sorted(a for _, found in parts for a in found)
    return acc, tested


def enumerate_sup(G: FiniteGroup, table=None, cap=None, jobs: int = 1,
                  with_characters: bool = True) -> EnumerationResult:
    """All supercharacter theories of G, ordered by class partition."""
    t0 = time.perf_counter()
    labels, tested = admissible_class_partitions(G, cap, jobs)
    if table is None and with_characters:
        table = G.character_table
    cls = G.class_of
    theories = []
    for lab in labels:
        K = SetPartition(lab[cls[g]] for g in range(G.order))
        if with_characters and table is not None:
            theories.append(x_from_k(G, table, K))
        else:
            theories.append(theory_from_classes(G, K, None) if table is None
                            else SuperTheory(G, None, None, K))
    stats = {"candidates": tested, "accepted": len(labels),
             "rejected": tested - len(labels),
             "seconds": round(time.perf_counter() - t0, 3)}
    return EnumerationResult(G, theories, stats)


def hasse_edges(theories) -> list[tuple[int, int]]:
    """Covering pairs (i, j): theory i lies strictly below theory j with
    nothing in between."""
    n = len(theories)
    parts = [T.class_part for T in theories]
    below = [[i != j and refines(parts[i], parts[j]) for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(n)):
                edges.append((i, j))
    return edges


def _digest(T: SuperTheory) -> str:
    text = json.dumps(T.class_part.to_json(), separators=(",", ":"))
    return hashlib.sha1(text.encode()).hexdigest()[:8]


def lattice(result: EnumerationResult) -> str:
    """Hasse diagram of the theories in DOT; edges point upward."""
    name = result.group.name or "G"
    lines = [f'digraph "Sup({name})" {{', "  rankdir=BT;"]
    for i, T in enumerate(result.theories):
        lines.append(f'  n{i} [label="{len(T)} | {_digest(T)}"];')
    for i, j in result.edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
