"""Duality on Z2 x Z4: each theory and its dual, with the partitions swapped.

Run:  python demos/duality.py
"""

from sctheory import build_abelian, dual_bijection_check, dual_theory, enumerate_sup
from sctheory.duality import dual_group_of


def main():
    G = build_abelian([2, 4])
    theories = enumerate_sup(G).theories
    print(f"Z2 x Z4: {len(theories)} theories; dual group is G itself: {dual_group_of(G) is G}")
    self_dual = 0
    for C in theories:
        d = dual_theory(C)
        self_dual += d == C
        print(f"  K={C.class_part.to_json()}  X={C.char_part.to_json()}")
    print(f"self-dual theories: {self_dual}")
    print(f"bijection and involution: {dual_bijection_check(G, theories)}")


if __name__ == "__main__":
    main()
