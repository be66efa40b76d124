"""Two admissible superclass partitions of S6 whose meet is not admissible.

Run:  python demos/s6_meet.py
"""

import json
import time
from importlib import resources

from sctheory import (NotATheory, SetPartition, build_from_permutations, join,
                      load_char_table, superclass_admissible, x_from_k)

# blocks by cycle type, (3, 2) meaning a 3-cycle times a disjoint transposition
K_TYPES = [[()], [(2,), (2, 2, 2), (4,)], [(6,), (3, 2)], [(2, 2)], [(3,), (3, 3)],
           [(4, 2)], [(5,)]]
L_TYPES = [[()], [(2,), (2, 2, 2), (4,), (6,), (3, 2)], [(2, 2)], [(3,)], [(3, 3)],
           [(4, 2)], [(5,)]]


def cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        if n > 1:
            out.append(n)
    return tuple(sorted(out, reverse=True))


def partition(G, types):
    where = {t: b for b, ts in enumerate(types) for t in ts}
    return SetPartition(where[cycle_type(G.labels[g])] for g in range(G.order))


def main():
    t0 = time.perf_counter()
    G = build_from_permutations([[1, 0, 2, 3, 4, 5], [1, 2, 3, 4, 5, 0]])
    print(f"S6: order {G.order}, {G.num_classes} classes")
    K, L = partition(G, K_TYPES), partition(G, L_TYPES)
    meet = SetPartition((K.labels[g], L.labels[g]) for g in range(G.order))
    for name, P in [("K", K), ("L", L), ("K meet L", meet), ("K join L", join(K, L))]:
        print(f"  {name:9s} {len(P)} blocks  admissible: {superclass_admissible(G, P)}")

    data = json.loads(resources.files("sctheory.data").joinpath("s6.json").read_text())
    T = load_char_table(data, group=G)
    for name, P in [("K", K), ("L", L)]:
        C = x_from_k(G, T, P)
        print(f"  {name}: supercharacter blocks {C.char_part.to_json()}")
    try:
        x_from_k(G, T, meet)
    except NotATheory as exc:
        print(f"  meet rejected: {exc.reason}")
    print(f"done in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
