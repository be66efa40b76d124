"""Duality of supercharacter theories of abelian groups.

For abelian G the characters form a group Irr(G) whose table is the
transpose of the table of G.  Swapping the two partitions of a theory gives
a theory of Irr(G); element ids of the dual group are character ids of G,
so the swap is literal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chartab import dual_group, inflation_map, iota, match_characters
from .core import SuperTheory, verify_definition
from .groups import FiniteGroup, GroupError, Subgroup, quotient
from .partitions import SetPartition
from .products import ProductError, is_c_normal, star_product, wtp_product, wtp_recognize

__all__ = [
    "DualLawReport",
    "block_sums",
    "dual_bijection_check",
    "dual_cnormal_check",
    "dual_group_of",
    "dual_product_laws",
    "dual_theory",
    "inflate_dual",
    "iota_transport",
    "irr_quotient",
]


def _require_abelian(G: FiniteGroup):
    if not G.is_abelian:
        raise GroupError("duality is only defined for abelian groups")


def dual_group_of(G: FiniteGroup) -> FiniteGroup:
    _require_abelian(G)
    return dual_group(G).dual


def dual_theory(C: SuperTheory) -> SuperTheory:
    """(K~, X) on Irr(G): the superclasses of C become supercharacter
    blocks and vice versa; verified against the dual group's table."""
    G = C.group
    _require_abelian(G)
    D = dual_group(G).dual
    return verify_definition(D, D.character_table, C.class_part, C.char_part)


def irr_quotient(G: FiniteGroup, N: Subgroup) -> Subgroup:
    """Irr(G/N) as a subgroup of the dual group: characters trivial on N."""
    _require_abelian(G)
    D = dual_group(G).dual
    return D.subgroup(G.character_table.chars_over_quotient(N))


def dual_bijection_check(G: FiniteGroup, theories=None, dual_theories=None) -> bool:
    """Duality is a bijection Sup(G) -> Sup(Irr(G)) and an involution."""
    from .enumerate import enumerate_sup

    _require_abelian(G)
    if theories is None:
        theories = enumerate_sup(G).theories
    D = dual_group_of(G)
    if dual_theories is None:
        dual_theories = theories if D is G else enumerate_sup(D).theories
    duals = [dual_theory(C) for C in theories]
    if len(set(duals)) != len(duals):
        return False
    if len(theories) != len(dual_theories) or set(duals) != set(dual_theories):
        return False
    return all(dual_theory(E) == C for C, E in zip(theories, duals))


def dual_cnormal_check(C: SuperTheory, N: Subgroup) -> bool:
    """N is C-normal exactly when Irr(G/N) is normal for the dual theory."""
    G = C.group
    _require_abelian(G)
    lhs = is_c_normal(C, N.elements)
    rhs = is_c_normal(dual_theory(C), irr_quotient(G, N).elements)
    return lhs == rhs


def block_sums(C: SuperTheory):
    """Row and column sums of each (X, K) block of the character table.

    ``rows[i][k][chi]`` is sum_{g in K_k} chi(g) for chi in X_i, and
    ``cols[i][k][g]`` is sum_{chi in X_i} chi(g) for g in K_k.
    """
    G = C.group
    _require_abelian(G)
    T = C.table
    rows, cols = [], []
    for X in C.char_part.blocks:
        r_i, c_i = [], []
        for K in C.class_part.blocks:
            r_i.append({chi: sum((T.value(chi, g) for g in K[1:]), T.value(chi, K[0]))
                        for chi in X})
            c_i.append({g: sum((T.value(chi, g) for chi in X[1:]), T.value(X[0], g))
                        for g in K})
        rows.append(r_i)
        cols.append(c_i)
    return rows, cols


# ---------------------------------------------------------------------------
# transport along iota and inflation
# ---------------------------------------------------------------------------


def iota_transport(C: SuperTheory) -> SuperTheory:
    """The dual of C on M <= G, moved to Irr(G)/Irr(G/M) along
    theta -> Irr(G | theta)."""
    G, M = _ambient(C)
    _require_abelian(G)
    Ghat = dual_group_of(G)
    A = irr_quotient(G, M)
    qd = quotient(Ghat, A)
    Q = qd.group
    Mhat = dual_group_of(M.group)
    # iota as a map of element ids: Irr(M) -> Irr(G)/Irr(G/M)
    image = []
    for theta in range(M.order):
        coset = iota(G, M, theta)
        image.append(qd.projection[min(coset)])
    chars = match_characters(Mhat.character_table, Q.character_table, image)
    K = SetPartition.from_blocks(
        [[image[t] for t in block] for block in C.char_part.blocks], Q.order)
    X = SetPartition.from_blocks(
        [[chars[x] for x in block] for block in C.class_part.blocks], Q.order)
    return verify_definition(Q, Q.character_table, X, K)


def inflate_dual(D: SuperTheory) -> SuperTheory:
    """The dual of D on G/N, placed on the subgroup Irr(G/N) of Irr(G)."""
    qd = D.group.quotient_of
    if qd is None:
        raise ProductError("placement", "theory does not live on a quotient group")
    G, N = qd.parent, qd.subgroup
    _require_abelian(G)
    A = irr_quotient(G, N)
    H = A.group
    inf = inflation_map(G.character_table, qd)
    local = [A.local_ids([chi])[0] for chi in inf]
    Qhat = dual_group_of(qd.group)
    chars = match_characters(Qhat.character_table, H.character_table, local)
    K = SetPartition.from_blocks(
        [[local[p] for p in block] for block in D.char_part.blocks], H.order)
    X = SetPartition.from_blocks(
        [[chars[c] for c in block] for block in D.class_part.blocks], H.order)
    return verify_definition(H, H.character_table, X, K)


def _ambient(C: SuperTheory):
    amb = C.group.ambient
    if amb is None:
        raise ProductError("placement", "theory does not live on a subgroup-group")
    return amb


# ---------------------------------------------------------------------------
# the product laws
# ---------------------------------------------------------------------------


@dataclass
class DualLawReport:
    products_checked: int = 0
    stars_checked: int = 0
    recognitions_checked: int = 0
    cnormal_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"products_checked": self.products_checked,
                "stars_checked": self.stars_checked,
                "recognitions_checked": self.recognitions_checked,
                "cnormal_checked": self.cnormal_checked,
                "violations": self.violations}


def dual_product_laws(G: FiniteGroup, N: Subgroup, M: Subgroup,
                      sup_g=None, sup_m=None, sup_q=None) -> DualLawReport:
    """Check the dual-product laws over N <= M <= G exhaustively.

    * for each product E = C (over N, M) D: dual(E) is the product of
      inflate_dual(D) and iota_transport(C) over (Irr(G/M), Irr(G/N));
    * when N = M the same identity is checked with star products;
    * for every E in Sup(G): E is a product over (N, M) iff dual(E) is one
      over (Irr(G/M), Irr(G/N));
    * for every E and every normal subgroup L: L is E-normal iff Irr(G/L)
      is dual(E)-normal.
    """
    from .enumerate import enumerate_sup
    from .groups import normal_subgroups

    _require_abelian(G)
    if not N <= M:
        raise GroupError("N is not contained in M")
    rep = DualLawReport()
    qd = quotient(G, N)
    if sup_g is None:
        sup_g = enumerate_sup(G).theories
    if sup_m is None:
        sup_m = enumerate_sup(M.group).theories
    if sup_q is None:
        sup_q = enumerate_sup(qd.group).theories
    A_M, A_N = irr_quotient(G, M), irr_quotient(G, N)
    for C in sup_m:
        for D in sup_q:
            try:
                E = wtp_product(C, D)
            except ProductError:
                continue
            left = dual_theory(E)
            right = wtp_product(inflate_dual(D), iota_transport(C))
            rep.products_checked += 1
            if left != right:
                rep.violations.append({"law": "dual of product", "C": C.to_json(),
                                       "D": D.to_json()})
            if N == M:
                star = star_product(inflate_dual(D), iota_transport(C))
                rep.stars_checked += 1
                if left != star or star_product(C, D) != E:
                    rep.violations.append({"law": "dual of star product",
                                           "C": C.to_json(), "D": D.to_json()})
    for E in sup_g:
        a = wtp_recognize(E, N, M)
        b = wtp_recognize(dual_theory(E), A_M, A_N)
        rep.recognitions_checked += 1
        if a != b:
            rep.violations.append({"law": "product iff dual product", "E": E.to_json()})
        for L in normal_subgroups(G):
            rep.cnormal_checked += 1
            if not dual_cnormal_check(E, L):
                rep.violations.append({"law": "normality duality", "E": E.to_json(),
                                       "subgroup": list(L.elements)})
    return rep
