"""Supercharacter theories: verification, recovery of one side from the
other, canned and orbit theories, joins, the order, and direct products."""

from __future__ import annotations

import math

import numpy as np

from .chartab import CharacterTable, CharacterTableError
from .cyclotomic import CycMatrix, CycNumber, RowSpace
from .groups import FiniteGroup, GroupError, Subgroup, direct_product_group, quotient
from .partitions import SetPartition, join, refines

__all__ = [
    "NotATheory",
    "SuperTheory",
    "canned",
    "direct_product",
    "galois_orbit_theory",
    "is_theory",
    "join_theories",
    "k_from_x",
    "leq",
    "matrix_condition",
    "mm_and_MM",
    "orbit_theory",
    "product_table",
    "superclass_admissible",
    "superclass_admissible_unpruned",
    "theory_from_classes",
    "theory_from_json",
    "transport",
    "verify_definition",
    "x_from_k",
]


class NotATheory(ValueError):
    """A rejected candidate pair.

    ``reason`` is one of ``"size"``, ``"class_split"``, ``"non_constant"``,
    ``"identity_block"``, ``"inadmissible"``, ``"inconsistent"``; ``witness``
    holds the offending indices.
    """

    def __init__(self, reason: str, witness=None, message: str | None = None):
        self.reason = reason
        self.witness = witness
        super().__init__(message or f"{reason}: {witness}")

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"error": "not a supercharacter theory", "reason": self.reason,
                "witness": w, "message": str(self)}


class SuperTheory:
    """A verified pair (X, K): X partitions character ids, K element ids.

    Instances come out of :func:`verify_definition` (or constructions that
    end in it).  ``char_part`` is ``None`` only for groups without a
    character table, where just the superclass side is known.
    """

    __slots__ = ("group", "table", "char_part", "class_part", "_values", "_class_blocks")

    def __init__(self, group: FiniteGroup, table, char_part, class_part):
        self.group = group
        self.table = table
        self.char_part = char_part
        self.class_part = class_part
        self._values = None
        self._class_blocks = None

    def __len__(self):
        return len(self.class_part)

    @property
    def size(self) -> int:
        return len(self.class_part)

    def __eq__(self, other):
        return (isinstance(other, SuperTheory) and other.group is self.group
                and other.class_part == self.class_part
                and other.char_part == self.char_part)

    def __hash__(self):
        return hash((id(self.group), self.class_part))

    def __repr__(self):
        return f"SuperTheory({self.group.name or '?'}, K={self.class_part!r})"

    @property
    def superclasses(self) -> tuple[tuple[int, ...], ...]:
        return self.class_part.blocks

    @property
    def supercharacters(self) -> tuple[tuple[int, ...], ...]:
        if self.char_part is None:
            raise CharacterTableError("character side unavailable for this group")
        return self.char_part.blocks

    @property
    def class_blocks(self) -> SetPartition:
        """The superclass partition seen on conjugacy-class indices."""
        if self._class_blocks is None:
            cls = self.group.classes.blocks
            self._class_blocks = SetPartition(self.class_part.labels[b[0]] for b in cls)
        return self._class_blocks

    @property
    def values(self) -> list[list[CycNumber]]:
        """``values[i][k]``: sigma of character block i on superclass k."""
        if self._values is None:
            if self.char_part is None:
                raise CharacterTableError("character side unavailable for this group")
            cls = self.group.class_of
            out = []
            for X in self.char_part.blocks:
                s = self.table.sigma(X)
                out.append([s[cls[K[0]]] for K in self.class_part.blocks])
            self._values = out
        return self._values

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "char_part": self.char_part.to_json() if self.char_part is not None else None,
            "class_part": self.class_part.to_json(),
        }


def _table_of(G: FiniteGroup, table):
    if table is None:
        table = G.character_table
    if table is None:
        raise CharacterTableError(f"no character table available for {G!r}")
    if table.group is not G:
        raise CharacterTableError("table belongs to a different group")
    return table


def _class_sets(G: FiniteGroup, K: SetPartition):
    """Per block of K, the class ids it meets; raises on a split class."""
    if K.n != G.order:
        raise ValueError(f"class partition has {K.n} points, group has {G.order}")
    cls = G.class_of
    sizes = G.class_sizes
    out = []
    for bi, block in enumerate(K.blocks):
        ids = sorted({cls[g] for g in block})
        if sum(sizes[c] for c in ids) != len(block):
            inside = set(block)
            for g in block:
                for h in G.classes.block_of(g):
                    if h not in inside:
                        raise NotATheory("class_split", (bi, g, h),
                                         f"superclass {bi} contains {g} but not its conjugate {h}")
        out.append(ids)
    return out


def verify_definition(G: FiniteGroup, table, X: SetPartition, K: SetPartition) -> SuperTheory:
    """Check a pair against the definition and return the theory.

    Accepts iff |X| = |K|, each block of K is a union of conjugacy classes,
    and each sigma_X = sum_{psi in X} psi(1) psi is constant on each block
    of K.  Otherwise raises :class:`NotATheory` naming the first failure.
    """
    table = _table_of(G, table)
    if X.n != table.num_chars:
        raise ValueError(f"character partition has {X.n} points, table has {table.num_chars}")
    if len(X) != len(K):
        raise NotATheory("size", (len(X), len(K)), f"|X| = {len(X)} but |K| = {len(K)}")
    ksets = _class_sets(G, K)
    for xi, xb in enumerate(X.blocks):
        s = table.sigma(xb)
        for ki, ids in enumerate(ksets):
            v = s[ids[0]]
            for c in ids[1:]:
                if s[c] != v:
                    g = G.classes.blocks[ids[0]][0]
                    h = G.classes.blocks[c][0]
                    raise NotATheory("non_constant", (xi, ki, g, h),
                                     f"sigma of character block {xi} differs at {g} and {h}"
                                     f" inside superclass {ki}")
    return SuperTheory(G, table, X, K)


def is_theory(G: FiniteGroup, table, X: SetPartition, K: SetPartition) -> bool:
    try:
        verify_definition(G, table, X, K)
    except NotATheory:
        return False
    return True


# ---------------------------------------------------------------------------
# the class-algebra test
# ---------------------------------------------------------------------------


def _class_level(G: FiniteGroup, K: SetPartition) -> list[list[int]]:
    blocks = _class_sets(G, K)
    if blocks[K.labels[0]] != [0] or len(K.block_of(0)) != 1:
        raise NotATheory("identity_block", 0, "the identity must form its own superclass")
    return blocks


def superclass_admissible(G: FiniteGroup, K: SetPartition) -> bool:
    """True iff the superclass sums of K span a subalgebra of Z(C[G]).

    Pure integer test: each product of two superclass sums is expanded with
    the class structure constants and its coefficient function must be
    constant on every block.  Raises :class:`NotATheory` when K splits a
    class or does not isolate the identity.
    """
    blocks = _class_level(G, K)
    return _admissible_blocks(G.structure_constants, blocks, G.num_classes)


def _admissible_blocks(consts, blocks, c) -> bool:
    label = [0] * c
    for b, ids in enumerate(blocks):
        for k in ids:
            label[k] = b
    nontrivial = [ids for ids in blocks if ids != [0]]
    multi = [ids for ids in blocks if len(ids) > 1]
    for a, A in enumerate(nontrivial):
        for B in nontrivial[a:]:
            acc = [0] * c
            for i in A:
                row = consts[i]
                for j in B:
                    for k, v in enumerate(row[j]):
                        if v:
                            acc[k] += v
            for ids in multi:
                v = acc[ids[0]]
                for k in ids[1:]:
                    if acc[k] != v:
                        return False
    return True


def superclass_admissible_unpruned(G: FiniteGroup, K: SetPartition) -> bool:
    """Same decision as :func:`superclass_admissible`, computed in full.

    Forms every product of superclass sums at once as a dense integer
    tensor and compares coefficients blockwise; kept as an independent
    route for differential testing of the pruned filter.
    """
    blocks = _class_level(G, K)
    c = G.num_classes
    S = np.array(G.structure_constants, dtype=np.int64)  # (c, c, c)
    P = np.zeros((len(blocks), c), dtype=np.int64)
    for b, ids in enumerate(blocks):
        P[b, ids] = 1
    W = np.einsum("ai,bj,ijk->abk", P, P, S)
    label = np.zeros(c, dtype=np.int64)
    for b, ids in enumerate(blocks):
        label[ids] = b
    first = np.array([ids[0] for ids in blocks])[label]
    return bool((W == W[:, :, first]).all())


# ---------------------------------------------------------------------------
# recovering one side from the other
# ---------------------------------------------------------------------------


def x_from_k(G: FiniteGroup, table, K: SetPartition) -> SuperTheory:
    """The unique character partition pairing with an admissible K.

    Characters are grouped by their central-character fingerprint
    (sum over g in K of chi(g) / chi(1), for each superclass K).
    """
    table = _table_of(G, table)
    if not superclass_admissible(G, K):
        raise NotATheory("inadmissible", None, "superclass sums do not span a subalgebra")
    ksets = _class_sets(G, K)
    sizes = G.class_sizes
    keys = []
    for chi, row in enumerate(table.values):
        fp = []
        for ids in ksets:
            acc = CycNumber(table.conductor)
            for c in ids:
                acc = acc + row[c] * sizes[c]
            fp.append(acc / table.degrees[chi])
        keys.append(tuple(fp))
    X = SetPartition(keys)
    try:
        return verify_definition(G, table, X, K)
    except NotATheory as exc:
        raise NotATheory("inconsistent", exc.witness,
                         f"recovered character partition fails verification ({exc})") from exc


def k_from_x(G: FiniteGroup, table, X: SetPartition) -> SuperTheory:
    """Group elements by the vector of sigma values and re-verify."""
    table = _table_of(G, table)
    sigmas = [table.sigma(b) for b in X.blocks]
    cls = G.class_of
    K = SetPartition(tuple(s[cls[g]] for s in sigmas) for g in range(G.order))
    return verify_definition(G, table, X, K)


def theory_from_classes(G: FiniteGroup, K: SetPartition, table=None) -> SuperTheory:
    """Theory with superclasses K; class side only when no table exists."""
    if table is None:
        table = G.character_table
    if table is not None:
        return x_from_k(G, table, K)
    if not superclass_admissible(G, K):
        raise NotATheory("inadmissible", None, "superclass sums do not span a subalgebra")
    return SuperTheory(G, None, None, K)


# ---------------------------------------------------------------------------
# the rowspace criterion for abelian groups
# ---------------------------------------------------------------------------


def _xmt_space(table: CharacterTable, X: SetPartition) -> RowSpace:
    key = ("xmt", X.labels)
    rs = table._caches.get(key)
    if rs is None:
        G = table.group
        m = table.conductor
        rows = []
        for block in X.blocks:
            acc = [CycNumber(m)] * G.order
            for chi in block:
                acc = [a + table.value(chi, g).conj() for a, g in zip(acc, range(G.order))]
            rows.append(acc)
        rs = RowSpace(CycMatrix(rows, m))
        table._caches[key] = rs
    return rs


def _km_space(table: CharacterTable, K: SetPartition) -> RowSpace:
    key = ("km", K.labels)
    rs = table._caches.get(key)
    if rs is None:
        m = table.conductor
        rows = [[1 if K.labels[g] == b else 0 for g in range(K.n)] for b in range(len(K))]
        rs = RowSpace(CycMatrix(rows, m))
        table._caches[key] = rs
    return rs


def matrix_condition(G: FiniteGroup, table, X: SetPartition, K: SetPartition) -> bool:
    """rowspace(K_m) == rowspace(X_m T) with T = conj(C) / |G|.

    The factor 1/|G| is dropped since scaling leaves the row space alone.
    Row spaces are cached per partition and compared through their reduced
    echelon forms.
    """
    if not G.is_abelian:
        raise GroupError("the rowspace criterion needs an abelian group")
    table = _table_of(G, table)
    if X.n != table.num_chars or K.n != G.order:
        raise ValueError("partition sizes do not match the group")
    a = _xmt_space(table, X)
    b = _km_space(table, K)
    if a.rank != b.rank:
        return False
    return a.canonical() == b.canonical()


# ---------------------------------------------------------------------------
# canned theories
# ---------------------------------------------------------------------------


def canned(G: FiniteGroup, which: str, table=None) -> SuperTheory:
    """The minimal (classes) or maximal ({1}, G - 1) theory."""
    if table is None:
        table = G.character_table
    if which == "minimal":
        K = G.classes
        X = SetPartition.singletons(table.num_chars) if table is not None else None
    elif which == "maximal":
        K = SetPartition([0] + [1] * (G.order - 1))
        X = SetPartition([0] + [1] * (table.num_chars - 1)) if table is not None else None
    else:
        raise ValueError(f"unknown canned theory {which!r}")
    if table is None:
        return theory_from_classes(G, K, None)
    return verify_definition(G, table, X, K)


def mm_and_MM(G: FiniteGroup, N: Subgroup, which: str, table=None) -> SuperTheory:
    """The theories m_N^G (``"m"``) and M_N^G (``"M"``) attached to N.

    M_N^G has superclasses 1, N - 1, G - N; m_N^G has the conjugacy classes
    inside N plus the preimages of the nontrivial classes of G/N.  Empty
    parts (N = 1 or N = G) are dropped.
    """
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal:
        raise GroupError("N must be normal")
    if table is None:
        table = G.character_table
    inside = N.element_set
    if which in ("M", "M_NG"):
        K = SetPartition(0 if g == 0 else 1 if g in inside else 2 for g in range(G.order))
        if table is None:
            return theory_from_classes(G, K, None)
        quo = table.chars_over_quotient(N)
        X = SetPartition(0 if chi == 0 else 1 if chi in quo else 2
                         for chi in range(table.num_chars))
        return verify_definition(G, table, X, K)
    if which in ("m", "m_NG"):
        qd = quotient(G, N)
        Q = qd.group
        labels = []
        for g in range(G.order):
            if g in inside:
                labels.append(("in", G.class_of[g]))
            else:
                labels.append(("out", Q.class_of[qd.projection[g]]))
        return theory_from_classes(G, SetPartition(labels), table)
    raise ValueError(f"unknown variant {which!r}")


# ---------------------------------------------------------------------------
# orbit theories
# ---------------------------------------------------------------------------


def _orbit_partition(n: int, perms) -> SetPartition:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return SetPartition(find(i) for i in range(n))


def _check_automorphism(G: FiniteGroup, a) -> None:
    a = [int(x) for x in a]
    if sorted(a) != list(range(G.order)):
        raise GroupError("automorphism is not a permutation of the elements")
    for g in range(G.order):
        for h in range(G.order):
            if a[G.mult(g, h)] != G.mult(a[g], a[h]):
                raise GroupError(f"map is not a homomorphism at ({g}, {h})")


def _char_permutation(table: CharacterTable, image_of_class) -> list[int]:
    """Permutation of characters sending chi to the row whose class k value
    is chi at class ``image_of_class[k]``."""
    lookup = {row: i for i, row in enumerate(table.values)}
    out = []
    for row in table.values:
        new = tuple(row[image_of_class[k]] for k in range(len(row)))
        if new not in lookup:
            raise CharacterTableError("permuted row is not a character")
        out.append(lookup[new])
    return out


def orbit_theory(G: FiniteGroup, table, automorphisms) -> SuperTheory:
    """Theory from a group A of automorphisms: A-orbits on classes and on
    characters, where chi^a(g) = chi(a^-1(g))."""
    table = _table_of(G, table)
    auts = [[int(x) for x in a] for a in automorphisms]
    for a in auts:
        _check_automorphism(G, a)
    perms = [list(a) for a in auts]
    # conjugacy classes are fused in as well
    class_perm = []
    for block in G.classes.blocks:
        if len(block) > 1:
            p = list(range(G.order))
            for x, y in zip(block, block[1:] + block[:1]):
                p[x] = y
            class_perm.append(p)
    K = _orbit_partition(G.order, perms + class_perm)
    char_perms = []
    reps = [b[0] for b in G.classes.blocks]
    for a in auts:
        inv = [0] * G.order
        for g, x in enumerate(a):
            inv[x] = g
        image = [G.class_of[inv[r]] for r in reps]
        char_perms.append(_char_permutation(table, image))
    X = _orbit_partition(table.num_chars, char_perms)
    return verify_definition(G, table, X, K)


def galois_orbit_theory(G: FiniteGroup, table, powers) -> SuperTheory:
    """Theory from a subgroup H of (Z/m)^*: zeta -> zeta^k on the
    characters and g -> g^k on the classes, for k in H."""
    table = _table_of(G, table)
    m = table.conductor
    H = sorted({int(k) % m for k in powers} | {1 % m if m > 1 else 0})
    for k in H:
        if math.gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit mod {m}")
    Hs = set(H)
    for a in H:
        for b in H:
            if (a * b) % m not in Hs:
                raise ValueError(f"powers are not closed under multiplication mod {m}")
    elem_perms = [[G.power(g, k) for g in range(G.order)] for k in H]
    cls_perm = []
    for block in G.classes.blocks:
        if len(block) > 1:
            p = list(range(G.order))
            for x, y in zip(block, block[1:] + block[:1]):
                p[x] = y
            cls_perm.append(p)
    K = _orbit_partition(G.order, elem_perms + cls_perm)
    lookup = {row: i for i, row in enumerate(table.values)}
    char_perms = []
    for k in H:
        perm = []
        for row in table.values:
            new = tuple(v.galois(k) for v in row)
            if new not in lookup:
                raise CharacterTableError("Galois image of a row is not a character")
            perm.append(lookup[new])
        char_perms.append(perm)
    X = _orbit_partition(table.num_chars, char_perms)
    return verify_definition(G, table, X, K)


# ---------------------------------------------------------------------------
# lattice operations and direct products
# ---------------------------------------------------------------------------


def _same_group(C: SuperTheory, D: SuperTheory):
    if C.group is not D.group:
        raise GroupError("theories live on different groups")


def join_theories(C: SuperTheory, D: SuperTheory) -> SuperTheory:
    _same_group(C, D)
    K = join(C.class_part, D.class_part)
    if C.char_part is None or D.char_part is None:
        return theory_from_classes(C.group, K, None)
    X = join(C.char_part, D.char_part)
    return verify_definition(C.group, C.table, X, K)


def leq(C: SuperTheory, D: SuperTheory) -> bool:
    """C below D: every supercharacter block of C lies inside one of D."""
    _same_group(C, D)
    if C.char_part is None or D.char_part is None:
        return refines(C.class_part, D.class_part)
    return refines(C.char_part, D.char_part)


def product_table(M: FiniteGroup, N: FiniteGroup) -> CharacterTable:
    """Table of M x N; character (i, j) has id i * r_N + j."""
    G = direct_product_group(M, N)
    if G.character_table is not None:
        return G.character_table
    TM, TN = M.character_table, N.character_table
    if TM is None or TN is None:
        raise CharacterTableError("factor tables are required for the product table")
    m = G.exponent
    rows = []
    for a in TM.values:
        for b in TN.values:
            rows.append([x.lift(m) * y.lift(m) for x in a for y in b])
    table = CharacterTable(G, rows, m)
    G.attach_table(table)
    return table


def direct_product(C: SuperTheory, D: SuperTheory) -> SuperTheory:
    """Blocks X x Y and K x L on M x N (element (m, n) has id m*|N| + n)."""
    M, N = C.group, D.group
    G = direct_product_group(M, N)
    nN = N.order
    K = SetPartition((C.class_part.labels[g // nN], D.class_part.labels[g % nN])
                     for g in range(G.order))
    if C.char_part is None or D.char_part is None:
        return theory_from_classes(G, K, None)
    table = product_table(M, N)
    rN = D.char_part.n
    X = SetPartition((C.char_part.labels[i // rN], D.char_part.labels[i % rN])
                     for i in range(table.num_chars))
    return verify_definition(G, table, X, K)


def transport(C: SuperTheory, H: FiniteGroup, element_map) -> SuperTheory:
    """Move C along an isomorphism; ``element_map[g]`` is the image of g in H."""
    from .chartab import match_characters

    G = C.group
    element_map = [int(x) for x in element_map]
    if sorted(element_map) != list(range(H.order)) or G.order != H.order:
        raise GroupError("element map is not a bijection")
    for g in range(G.order):
        for h in range(G.order):
            if element_map[G.mult(g, h)] != H.mult(element_map[g], element_map[h]):
                raise GroupError(f"element map is not a homomorphism at ({g}, {h})")
    K = SetPartition.from_blocks(
        [[element_map[g] for g in block] for block in C.class_part.blocks], H.order)
    if C.char_part is None or H.character_table is None:
        return theory_from_classes(H, K, None)
    chars = match_characters(C.table, H.character_table, element_map)
    X = SetPartition.from_blocks(
        [[chars[c] for c in block] for block in C.char_part.blocks], len(chars))
    return verify_definition(H, H.character_table, X, K)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def theory_from_json(data, group: FiniteGroup | None = None, table=None) -> SuperTheory:
    """Rebuild and verify a theory from its JSON form."""
    from .groups import group_from_json

    if group is None:
        group = group_from_json(data["group"])
    K = SetPartition.from_json(data["class_part"], group.order)
    if data.get("char_part") is None:
        return theory_from_classes(group, K, table)
    table = _table_of(group, table)
    X = SetPartition.from_json(data["char_part"], table.num_chars)
    return verify_definition(group, table, X, K)
