"""Regenerate the bundled character-table files in src/sctheory/data.

Symmetric groups use the Murnaghan-Nakayama rule on beta-sets.  D4 and Q8
get their four linear characters from the abelianization and the remaining
degree-2 character from its values (2 at 1, -2 at the central involution,
0 elsewhere).  Every file is re-validated on load.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sctheory.chartab import inflation_map, load_char_table  # noqa: E402
from sctheory.cyclotomic import CycNumber  # noqa: E402
from sctheory.groups import (  # noqa: E402
    build_from_cayley, build_from_permutations, quotient, subgroup_closure)

OUT = Path(__file__).resolve().parents[1] / "src" / "sctheory" / "data"


def partitions_of(n, top=None):
    top = n if top is None else top
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in partitions_of(n - k, k):
            yield (k,) + rest


def mn_character(lam, mu):
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = {lam[i] + (k - 1 - i) for i in range(k)}
    total = 0
    for b in sorted(beta):
        c = b - r
        if c < 0 or c in beta:
            continue
        height = sum(1 for x in beta if c < x < b)
        nb = sorted((beta - {b}) | {c}, reverse=True)
        new = tuple(x - (k - 1 - i) for i, x in enumerate(nb))
        new = tuple(p for p in new if p > 0)
        total += (-1) ** height * mn_character(new, rest)
    return total


def cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def rational_entry(m, v):
    return CycNumber.rational(m, v).to_json()


def symmetric_table(n):
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    G = build_from_permutations(gens)
    m = G.exponent
    types = [cycle_type(G.labels[b[0]]) for b in G.classes.blocks]
    rows = [[mn_character(lam, mu) for mu in types] for lam in partitions_of(n)]
    return G, m, rows


def dicyclic_like(G):
    """Linear characters via G/[G,G] plus the degree-2 character."""
    comms = {G.mult(G.mult(a, b), G.mult(G.inverse[a], G.inverse[b]))
             for a in range(G.order) for b in range(G.order)}
    D = subgroup_closure(G, comms)
    D = G.subgroup(D.elements)
    qd = quotient(G, D)
    qt = qd.group.character_table
    m = G.exponent
    reps = [b[0] for b in G.classes.blocks]
    rows = []
    for psi in range(qt.num_chars):
        rows.append([qt.value(psi, qd.projection[g]).lift(m) for g in reps])
    z = next(g for g in D.elements if g != 0)
    rows.append([CycNumber.rational(m, 2 if g == 0 else -2 if g == z else 0) for g in reps])
    return m, rows


def quaternion_group():
    # elements (sign, unit) with unit in 1, i, j, k
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    index = {e: i for i, e in enumerate(elems)}
    table = []
    for sa, ua in elems:
        row = []
        for sb, ub in elems:
            s, u = unit_mul[(ua, ub)]
            row.append(index[(sa * sb * s, u)])
        table.append(row)
    return build_from_cayley(table, name="Q8")


def dump(name, G, m, rows):
    data = {
        "group": G.to_json(),
        "conductor": m,
        "degrees": [int(r[0]) if isinstance(r[0], int) else int(r[0].coeffs[0]) for r in rows],
        "class_sizes": list(G.class_sizes),
        "entries": [[v.to_json() if isinstance(v, CycNumber) else rational_entry(m, v)
                     for v in r] for r in rows],
    }
    load_char_table(data, group=G)  # validates
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
    print(f"wrote {path} ({len(rows)} characters)")


def main():
    for n, name in ((3, "s3"), (6, "s6")):
        G, m, rows = symmetric_table(n)
        dump(name, G, m, rows)
    D4 = build_from_permutations([[1, 2, 3, 0], [0, 3, 2, 1]])
    dump("d4", D4, *dicyclic_like(D4))
    Q8 = quaternion_group()
    dump("q8", Q8, *dicyclic_like(Q8))


if __name__ == "__main__":
    main()
