"""Star products, factoring and the two-subgroup product on Z8.

Run:  python demos/z8_products.py
"""

from sctheory import (build_abelian, enumerate_sup, factor_over, quotient, star_product,
                      unique_factorization, wtp_product)
from sctheory.products import ProductError


def show(label, T):
    print(f"  {label}: {T.class_part.to_json()}")


def main():
    G = build_abelian([8])
    N, M = G.subgroup([0, 4]), G.subgroup([0, 2, 4, 6])
    sup_g = enumerate_sup(G).theories
    print(f"Z8 has {len(sup_g)} supercharacter theories")

    print("star products over {0,4}:")
    Q = quotient(G, N).group
    for C in enumerate_sup(N.group).theories:
        for D in enumerate_sup(Q).theories:
            E = star_product(C, D)
            assert factor_over(E, N) == (C, D)
            show(f"|C|={len(C)} |D|={len(D)} -> |E|={len(E)}", E)

    print("products over {0,4} <= {0,2,4,6}:")
    for C in enumerate_sup(M.group).theories:
        for D in enumerate_sup(Q).theories:
            try:
                E = wtp_product(C, D)
            except ProductError:
                continue
            show(f"|C|={len(C)} |D|={len(D)} -> |E|={len(E)}", E)

    print("factorization chains:")
    for E in sup_g:
        fc = unique_factorization(E)
        sizes = [len(c) for c in fc.chain]
        print(f"  {E.class_part.to_json()}  chain orders {sizes}")


if __name__ == "__main__":
    main()
