"""Shared fixtures-in-code for the test suite."""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from sctheory import SetPartition, build_abelian, enumerate_sup, quotient
from sctheory.core import transport

GOLDEN_DIR = Path(__file__).with_name("golden")

ABELIAN_UP_TO_8 = {
    "Z1": [1], "Z2": [2], "Z3": [3], "Z4": [4], "Z5": [5], "Z6": [6], "Z7": [7], "Z8": [8],
    "Z2xZ2": [2, 2], "Z2xZ3": [2, 3], "Z2xZ4": [2, 4], "Z2xZ2xZ2": [2, 2, 2],
}


def golden():
    return json.loads((GOLDEN_DIR / "sup_counts.json").read_text())


@lru_cache(maxsize=None)
def sup(G):
    """Cached enumeration (groups are cached objects, so id-keying is safe)."""
    return tuple(enumerate_sup(G).theories)


def z8_chain():
    G = build_abelian([8])
    return G, G.subgroup([0, 4]), G.subgroup([0, 2, 4, 6])


def inner_quotient_to_outer_subgroup(G, N1, N2):
    """Element map (N2 as a group) / N1  ->  the subgroup N2/N1 of G/N1."""
    q_inner = quotient(N2.group, N2.group.subgroup(N2.local_ids(N1.elements)))
    q1 = quotient(G, N1)
    image = q1.group.subgroup({q1.projection[g] for g in N2.elements})
    emap = []
    for s in q_inner.section:
        emap.append(image.local_ids([q1.projection[N2.elements[s]]])[0])
    return q_inner.group, image, emap


def quotient_to_iterated(G, N1, N2):
    """Element map G/N2 -> (G/N1)/(N2/N1)."""
    q1 = quotient(G, N1)
    q2 = quotient(G, N2)
    image = q1.group.subgroup({q1.projection[g] for g in N2.elements})
    q12 = quotient(q1.group, image)
    emap = [q12.projection[q1.projection[g]] for g in q2.section]
    return q2.group, q12.group, emap


def move(C, H, emap):
    return transport(C, H, emap)


def cycle_type(perm):
    seen, lengths = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        if n > 1:
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


# cycle types written as in the usual exponent notation, e.g. 3^1 2^1 = (3, 2)
S6_K = [[()], [(2,), (2, 2, 2), (4,)], [(6,), (3, 2)], [(2, 2)], [(3,), (3, 3)],
        [(4, 2)], [(5,)]]
S6_L = [[()], [(2,), (2, 2, 2), (4,), (6,), (3, 2)], [(2, 2)], [(3,)], [(3, 3)],
        [(4, 2)], [(5,)]]


def s6_partition(G, types):
    where = {t: b for b, ts in enumerate(types) for t in ts}
    return SetPartition(where[cycle_type(G.labels[g])] for g in range(G.order))
