"""Gluing theories along normal subgroups: star products, the two-subgroup
generalization, restriction/deflation, factoring and unique factorization.

A theory "on N" lives on ``N.group`` (the subgroup as a group in its own
right, ids = positions in ``N.elements``) and a theory "on G/N" lives on
``quotient(G, N).group``.  Both objects are cached on G, so identity of
groups identifies where a theory lives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chartab import CharacterTableError, inflation_map, restriction_constituents
from .core import SuperTheory, join_theories, mm_and_MM, theory_from_classes, verify_definition
from .groups import FiniteGroup, GroupError, QuotientData, Subgroup, quotient, subgroup_closure
from .partitions import SetPartition

__all__ = [
    "FactorizationChain",
    "FactorizationError",
    "ProductError",
    "c_normal_subgroups",
    "factor_over",
    "factors_over",
    "is_c_normal",
    "is_g_invariant",
    "is_indecomposable",
    "restrict_deflate",
    "star_product",
    "unique_factorization",
    "wtp_product",
    "wtp_recognize",
]


class ProductError(ValueError):
    """A product whose hypotheses fail; ``condition`` names the failure."""

    def __init__(self, condition: str, message: str, witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(message)

    def to_json(self) -> dict:
        return {"error": "product hypotheses fail", "condition": self.condition,
                "witness": _jsonable(self.witness), "message": str(self)}


class FactorizationError(ValueError):
    """E does not factor over N.

    ``condition`` is ``"not_normal"``, ``"not_e_normal"`` or
    ``"not_coset_union"``; ``witness`` is the offending superclass.
    """

    def __init__(self, condition: str, message: str, witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(message)

    def to_json(self) -> dict:
        return {"error": "does not factor", "condition": self.condition,
                "witness": _jsonable(self.witness), "message": str(self)}


def _jsonable(w):
    if isinstance(w, (tuple, list, frozenset, set)):
        return [_jsonable(x) for x in (sorted(w) if isinstance(w, (set, frozenset)) else w)]
    return w


# ---------------------------------------------------------------------------
# where theories live
# ---------------------------------------------------------------------------


def _on_subgroup(C: SuperTheory) -> tuple[FiniteGroup, Subgroup]:
    amb = C.group.ambient
    if amb is None:
        raise ProductError("placement", "theory does not live on a subgroup-group")
    return amb


def _on_quotient(D: SuperTheory) -> QuotientData:
    qd = D.group.quotient_of
    if qd is None:
        raise ProductError("placement", "theory does not live on a quotient group")
    return qd


def _in_parent(C: SuperTheory, N: Subgroup) -> list[frozenset[int]]:
    """Superclasses of a theory on N, in parent ids."""
    emb = N.elements
    return [frozenset(emb[x] for x in block) for block in C.class_part.blocks]


def _induced_blocks(G: FiniteGroup, N: Subgroup, C: SuperTheory) -> list[frozenset[int]]:
    """For each supercharacter block X of C, the set X^G of characters of G
    whose restriction to N has all constituents in X."""
    if C.char_part is None or G.character_table is None:
        raise CharacterTableError("character side unavailable")
    cons = restriction_constituents(G.character_table, C.table, N.elements)
    out = []
    for block in C.char_part.blocks:
        X = frozenset(block)
        out.append(frozenset(chi for chi, c in enumerate(cons) if c <= X))
    return out


def _inflated_chars(G: FiniteGroup, qd: QuotientData, D: SuperTheory) -> list[frozenset[int]]:
    inf = inflation_map(G.character_table, qd)
    return [frozenset(inf[psi] for psi in block) for block in D.char_part.blocks]


def _partition_from_sets(n: int, blocks) -> SetPartition:
    labels = [-1] * n
    for b, s in enumerate(blocks):
        for x in s:
            if labels[x] != -1:
                raise ProductError("overlap", f"point {x} lies in two parts")
            labels[x] = b
    if -1 in labels:
        raise ProductError("cover", f"point {labels.index(-1)} is not covered")
    return SetPartition(labels)


def _finish(G: FiniteGroup, char_sets, class_sets) -> SuperTheory:
    K = _partition_from_sets(G.order, class_sets)
    if char_sets is None:
        return theory_from_classes(G, K, None)
    X = _partition_from_sets(G.character_table.num_chars, char_sets)
    return verify_definition(G, G.character_table, X, K)


def _chars_available(G: FiniteGroup, *theories) -> bool:
    return G.character_table is not None and all(t.char_part is not None for t in theories)


# ---------------------------------------------------------------------------
# normality notions
# ---------------------------------------------------------------------------


def is_c_normal(C: SuperTheory, elements) -> bool:
    """True iff ``elements`` is a subgroup that is a union of superclasses."""
    s = set(elements)
    labels = C.class_part.labels
    if any(x not in s for g in s for x in C.class_part.blocks[labels[g]]):
        return False
    G = C.group
    return 0 in s and all(G.mult(a, b) in s for a in s for b in s)


def c_normal_subgroups(C: SuperTheory) -> list[Subgroup]:
    """Subgroups that are unions of superclasses of C, sorted by order."""
    G = C.group
    blocks = C.class_part.blocks
    labels = C.class_part.labels

    def saturate(elems):
        cur = set(elems)
        while True:
            grown = set()
            for g in cur:
                grown.update(blocks[labels[g]])
            if grown == cur:
                closed = subgroup_closure(G, cur).element_set
                if closed == cur:
                    return tuple(sorted(cur))
                cur = set(closed)
            else:
                cur = grown

    start = (0,)
    found = {start}
    queue = [start]
    while queue:
        elems = queue.pop()
        have = set(elems)
        for b in blocks:
            if b[0] in have:
                continue
            nxt = saturate(have | set(b))
            if nxt not in found:
                found.add(nxt)
                queue.append(nxt)
    return sorted((G.subgroup(e) for e in found), key=lambda N: (N.order, N.elements))


def is_g_invariant(G: FiniteGroup, N: Subgroup, C: SuperTheory) -> bool:
    """True iff conjugation by every g in G fixes each superclass of C setwise."""
    if N.parent is not G or not N.is_normal:
        raise GroupError("N must be a normal subgroup of G")
    if C.group is not N.group:
        raise ProductError("placement", "theory does not live on N")
    if G.is_abelian:
        return True
    for block in _in_parent(C, N):
        for g in range(G.order):
            if any(G.conjugate(x, g) not in block for x in block):
                return False
    return True


# ---------------------------------------------------------------------------
# star product
# ---------------------------------------------------------------------------


def star_product(C: SuperTheory, D: SuperTheory) -> SuperTheory:
    """Glue a G-invariant theory C on N with a theory D on G/N.

    Superclasses: those of C together with the inflations of the
    nontrivial superclasses of D.  Supercharacters: the inflations of the
    blocks of D together with X^G for the nonprincipal blocks X of C.
    """
    G, N = _on_subgroup(C)
    qd = _on_quotient(D)
    if qd.parent is not G or qd.subgroup != N:
        raise ProductError("quotient_mismatch", "D does not live on G/N for the N of C")
    if not is_g_invariant(G, N, C):
        raise ProductError("invariance", "C is not G-invariant")
    class_sets = _in_parent(C, N)
    for block in D.class_part.blocks:
        if block != (0,):
            class_sets.append(frozenset(qd.preimage(block)))
    char_sets = None
    if _chars_available(G, C, D):
        char_sets = _inflated_chars(G, qd, D)
        induced = _induced_blocks(G, N, C)
        for block, XG in zip(C.char_part.blocks, induced):
            if block != (0,):
                char_sets.append(XG)
    E = _finish(G, char_sets, class_sets)
    assert len(E) == len(C) + len(D) - 1
    return E


# ---------------------------------------------------------------------------
# restriction and deflation
# ---------------------------------------------------------------------------


def _check_e_normal(E: SuperTheory, N: Subgroup):
    inside = N.element_set
    for b, block in enumerate(E.class_part.blocks):
        hit = [g in inside for g in block]
        if any(hit) and not all(hit):
            raise FactorizationError("not_e_normal",
                                     f"superclass {b} meets N without lying inside it",
                                     list(block))


def restrict_deflate(E: SuperTheory, N: Subgroup) -> tuple[SuperTheory, SuperTheory]:
    """(E_N, E^{G/N}) for an E-normal subgroup N.

    Both are read off B = E joined with m_N^G: E_N keeps the superclasses
    of B inside N, E^{G/N} the images of the others plus {N}.
    """
    G = E.group
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal:
        raise FactorizationError("not_normal", "N is not normal in G")
    _check_e_normal(E, N)
    mN = mm_and_MM(G, N, "m", E.table)
    B = join_theories(E, mN)
    qd = quotient(G, N)
    inside = N.element_set
    local = {g: i for i, g in enumerate(N.elements)}
    res_classes, def_classes = [], [frozenset([0])]
    for block in B.class_part.blocks:
        if block[0] in inside:
            res_classes.append(frozenset(local[g] for g in block))
        else:
            def_classes.append(frozenset(qd.projection[g] for g in block))
    H, Q = N.group, qd.group
    res_chars = def_chars = None
    if _chars_available(G, B) and H.character_table is not None and Q.character_table is not None:
        cons = restriction_constituents(G.character_table, H.character_table, N.elements)
        quo = G.character_table.chars_over_quotient(N)
        inf = inflation_map(G.character_table, qd)
        back = {chi: psi for psi, chi in enumerate(inf)}
        res_chars, def_chars = [frozenset([0])], []
        for block in B.char_part.blocks:
            if all(chi in quo for chi in block):
                def_chars.append(frozenset(back[chi] for chi in block))
            else:
                res_chars.append(frozenset().union(*(cons[chi] for chi in block)))
    EN = _finish(H, res_chars, res_classes)
    EQ = _finish(Q, def_chars, def_classes)
    return EN, EQ


# ---------------------------------------------------------------------------
# factoring
# ---------------------------------------------------------------------------


def _check_coset_unions(E: SuperTheory, N: Subgroup, outside_of: frozenset, cond: str):
    G = E.group
    qd = quotient(G, N)
    for b, block in enumerate(E.class_part.blocks):
        if block[0] in outside_of:
            continue
        s = set(block)
        for g in block:
            if any(x not in s for x in qd.cosets[qd.projection[g]]):
                raise FactorizationError(cond, f"superclass {b} is not a union of N-cosets",
                                         list(block))


def factor_over(E: SuperTheory, N: Subgroup) -> tuple[SuperTheory, SuperTheory]:
    """(C, D) with C * D = E over N, or :class:`FactorizationError`.

    E factors over N iff N is a union of superclasses and every superclass
    outside N is a union of N-cosets.
    """
    G = E.group
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal:
        raise FactorizationError("not_normal", "N is not normal in G")
    _check_e_normal(E, N)
    _check_coset_unions(E, N, N.element_set, "not_coset_union")
    C, D = restrict_deflate(E, N)
    if star_product(C, D) != E:
        raise RuntimeError("star product of the factors does not reproduce E")
    return C, D


def factors_over(E: SuperTheory, N: Subgroup) -> bool:
    try:
        factor_over(E, N)
    except FactorizationError:
        return False
    return True


def _factoring_subgroups(E: SuperTheory) -> list[Subgroup]:
    """Nontrivial subgroups over which E factors, smallest first."""
    out = []
    for N in c_normal_subgroups(E):
        if N.order == 1 or not N.is_normal:
            continue
        try:
            _check_coset_unions(E, N, N.element_set, "not_coset_union")
        except FactorizationError:
            continue
        out.append(N)
    return out


def is_indecomposable(E: SuperTheory) -> bool:
    """No proper nontrivial subgroup admits a factorization of E."""
    return all(N.order == E.group.order for N in _factoring_subgroups(E))


@dataclass
class FactorizationChain:
    """1 = N_0 < N_1 < ... < N_r = G with factors on N_i / N_{i-1}.

    ``factors[i]`` lives on a subgroup-group of the i-th successive
    quotient (the last one on that quotient itself); ``reassemble`` folds
    them back with right-nested star products.
    """

    theory: SuperTheory
    chain: list[tuple[int, ...]]
    factors: list[SuperTheory]
    indecomposable: list[bool] = field(default_factory=list)

    def reassemble(self) -> SuperTheory:
        acc = self.factors[-1]
        for F in reversed(self.factors[:-1]):
            acc = star_product(F, acc)
        return acc

    def to_json(self) -> dict:
        return {"chain": [list(c) for c in self.chain],
                "factors": [F.to_json() for F in self.factors],
                "indecomposable": list(self.indecomposable)}


def unique_factorization(E: SuperTheory) -> FactorizationChain:
    """Factor E greedily over the smallest subgroup available at each step."""
    G = E.group
    if G.order == 1:
        raise GroupError("the trivial group has no factorization")
    chain = [(0,)]
    factors = []
    to_current = list(range(G.order))  # G id -> id in the current quotient
    F = E
    while True:
        H = F.group
        subs = [N for N in _factoring_subgroups(F) if N.order < H.order]
        if not subs:
            factors.append(F)
            chain.append(tuple(range(G.order)))
            break
        N = subs[0]
        C, D = factor_over(F, N)
        factors.append(C)
        inside = N.element_set
        chain.append(tuple(g for g in range(G.order) if to_current[g] in inside))
        qd = quotient(H, N)
        to_current = [qd.projection[x] for x in to_current]
        F = D
    flags = [is_indecomposable(f) for f in factors]
    result = FactorizationChain(E, chain, factors, flags)
    if result.reassemble() != E:
        raise RuntimeError("reassembled factorization differs from the input")
    return result


# ---------------------------------------------------------------------------
# the two-subgroup product
# ---------------------------------------------------------------------------


def _image_subgroup(qd: QuotientData, M: Subgroup) -> Subgroup:
    return qd.group.subgroup({qd.projection[g] for g in M.elements})


def _local_subgroup(M: Subgroup, N: Subgroup) -> Subgroup:
    return M.group.subgroup(M.local_ids(N.elements))


def _superclasses_in_g(T: SuperTheory, to_g_sets) -> frozenset:
    return frozenset(frozenset(to_g_sets(block)) for block in T.class_part.blocks)


def wtp_product(C: SuperTheory, D: SuperTheory, N: Subgroup | None = None,
                M: Subgroup | None = None) -> SuperTheory:
    """Glue C on M with D on G/N along the overlap M/N (N <= M normal).

    Needs C G-invariant, N C-normal, M/N D-normal and C^{M/N} = D_{M/N}.
    Superclasses: those of C plus inflations of the superclasses of D
    outside M/N.  Supercharacters: inflations of the blocks of D plus X^G
    for the blocks X of C outside Irr(M/N).
    """
    G, Mc = _on_subgroup(C)
    qd = _on_quotient(D)
    Nc = qd.subgroup
    if M is not None and M != Mc:
        raise ProductError("placement", "C does not live on M")
    if N is not None and N != Nc:
        raise ProductError("placement", "D does not live on G/N")
    N, M = Nc, Mc
    if qd.parent is not G:
        raise ProductError("placement", "C and D live over different groups")
    if not N <= M:
        raise ProductError("containment", "N is not contained in M")
    if not (N.is_normal and M.is_normal):
        raise ProductError("normality", "N and M must be normal in G")
    if not is_g_invariant(G, M, C):
        raise ProductError("invariance", "C is not G-invariant")
    N_loc = _local_subgroup(M, N)
    if not is_c_normal(C, N_loc.elements):
        raise ProductError("n_not_c_normal", "N is not C-normal")
    Mbar = _image_subgroup(qd, M)
    if not is_c_normal(D, Mbar.elements):
        raise ProductError("m_not_d_normal", "M/N is not D-normal")
    upper = restrict_deflate(C, N_loc)[1]
    lower = restrict_deflate(D, Mbar)[0]
    loc_qd = quotient(M.group, N_loc)
    up_sets = _superclasses_in_g(
        upper, lambda blk: (M.elements[x] for c in blk for x in loc_qd.cosets[c]))
    low_sets = _superclasses_in_g(
        lower, lambda blk: (g for x in blk for g in qd.cosets[Mbar.elements[x]]))
    if up_sets != low_sets:
        raise ProductError("compatibility", "C^{M/N} and D_{M/N} differ")
    inside_bar = Mbar.element_set
    class_sets = _in_parent(C, M)
    for block in D.class_part.blocks:
        if block[0] not in inside_bar:
            class_sets.append(frozenset(qd.preimage(block)))
    char_sets = None
    if _chars_available(G, C, D):
        char_sets = _inflated_chars(G, qd, D)
        over = C.table.chars_over_quotient(N_loc)
        for block, XG in zip(C.char_part.blocks, _induced_blocks(G, M, C)):
            if not all(chi in over for chi in block):
                char_sets.append(XG)
    E = _finish(G, char_sets, class_sets)
    assert len(E) == len(C) + len(D) - len(lower)
    return E


def wtp_recognize(E: SuperTheory, N: Subgroup, M: Subgroup) -> bool:
    """True iff E is a product over (N, M): both E-normal and every
    superclass outside M a union of N-cosets."""
    G = E.group
    if not N <= M:
        raise GroupError("N is not contained in M")
    if not (N.is_normal and M.is_normal):
        raise GroupError("N and M must be normal in G")
    try:
        _check_e_normal(E, N)
        _check_e_normal(E, M)
        _check_coset_unions(E, N, M.element_set, "not_coset_union")
    except FactorizationError:
        return False
    EM = restrict_deflate(E, M)[0]
    EQ = restrict_deflate(E, N)[1]
    if wtp_product(EM, EQ) != E:
        raise RuntimeError("recognized product does not reproduce E")
    return True
