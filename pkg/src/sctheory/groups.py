"""Finite groups given by Cayley tables.

Elements are the integers ``0..n-1`` with 0 the identity.  Conjugacy classes
are stored as a :class:`SetPartition` of element ids, so class 0 is always
``{0}`` and classes are ordered by their smallest element.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .partitions import SetPartition

__all__ = [
    "DEFAULT_ORDER_CAP",
    "FiniteGroup",
    "GroupError",
    "QuotientData",
    "Subgroup",
    "build_abelian",
    "build_from_cayley",
    "build_from_permutations",
    "class_structure_constants",
    "direct_product_group",
    "group_from_json",
    "normal_subgroups",
    "permutation_group",
    "quotient",
    "subgroup_closure",
]

DEFAULT_ORDER_CAP = 10080


class GroupError(ValueError):
    """Invalid group data or an operation on an unsuitable subgroup."""


class FiniteGroup:
    """A finite group on element ids ``0..n-1`` with identity 0.

    Instances are immutable once built.  Subgroup-groups and quotient groups
    are cached on their parent so that repeated requests return the same
    object, which is what theory equality relies on.
    """

    def __init__(self, table, *, labels=None, orders=None, name=None, spec=None,
                 validate=True):
        table = np.asarray(table, dtype=np.int64)
        if validate:
            _validate_table(table)
        self.mul = table
        self.order = int(table.shape[0])
        self._rows = [list(map(int, r)) for r in table]
        inv = np.argmin(table, axis=1)  # position of the identity id 0
        self.inverse = [int(x) for x in inv]
        self.labels = list(labels) if labels is not None else list(range(self.order))
        self.orders = tuple(orders) if orders is not None else None
        self.name = name
        self.spec = spec
        self.exponent = math.lcm(*(self.element_order(g) for g in range(self.order)))
        self.classes = self._conjugacy_classes()
        self.class_of = list(self.classes.labels)
        self._character_table = None
        self._subgroup_groups: dict = {}
        self._quotients: dict = {}
        self.ambient = None  # (parent, Subgroup) for subgroup-groups
        self.quotient_of = None  # QuotientData for quotient groups
        self.dual_data = None

    def __repr__(self):
        return f"<FiniteGroup {self.name or ''} order={self.order}>"

    # -- basic structure --------------------------------------------------

    def mult(self, g: int, h: int) -> int:
        return self._rows[g][h]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self._rows[x][g]
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        x = 0
        for _ in range(k):
            x = self._rows[x][g]
        return x

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self._rows[self._rows[h][g]][self.inverse[h]]

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def _conjugacy_classes(self) -> SetPartition:
        labels = [-1] * self.order
        k = 0
        for g in range(self.order):
            if labels[g] == -1:
                for h in range(self.order):
                    labels[self.conjugate(g, h)] = k
                k += 1
        return SetPartition(labels)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @functools.cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.classes.blocks)

    @functools.cached_property
    def structure_constants(self) -> list[list[tuple[int, ...]]]:
        """``a[i][j][k]``: coefficient of each element of class k in K_i K_j."""
        blocks = self.classes.blocks
        cls = self.class_of
        inv = self.inverse
        rows = self._rows
        c = len(blocks)
        out = []
        for i in range(c):
            row = []
            for j in range(c):
                counts = [0] * c
                for k in range(c):
                    z = blocks[k][0]
                    n = 0
                    for x in blocks[i]:
                        if cls[rows[inv[x]][z]] == j:
                            n += 1
                    counts[k] = n
                row.append(tuple(counts))
            out.append(row)
        return out

    # -- characters -------------------------------------------------------

    @property
    def character_table(self):
        """The attached character table; auto-generated for abelian groups."""
        if self._character_table is None and self.is_abelian:
            from .chartab import abelian_char_table

            self._character_table = abelian_char_table(self)
        return self._character_table

    def attach_table(self, table) -> None:
        if table.group is not self:
            raise GroupError("table belongs to a different group")
        self._character_table = table

    @property
    def has_table(self) -> bool:
        return self.character_table is not None

    # -- subgroups --------------------------------------------------------

    def subgroup(self, elements) -> Subgroup:
        elems = tuple(sorted(set(int(e) for e in elements)))
        if not _is_subgroup(self, elems):
            raise GroupError(f"{list(elems)} is not a subgroup")
        return Subgroup(self, elems, _is_normal(self, elems))

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)), True)

    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,), True)

    def to_json(self):
        return self.spec if self.spec is not None else {
            "kind": "cayley", "table": self.mul.tolist()}


def _validate_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupError("Cayley table entries out of range")
    ids = np.arange(n)
    if not (table[0] == ids).all() or not (table[:, 0] == ids).all():
        raise GroupError("row and column 0 must be the identity permutation")
    srt = np.sort(table, axis=1)
    if not (srt == ids).all() or not (np.sort(table, axis=0) == ids[:, None]).all():
        raise GroupError("Cayley table is not a Latin square")
    if n <= 200:
        left = table[table]  # left[a, b, c] = (a*b)*c via fancy indexing
        right = table[:, table]  # right[a, b, c] = a*(b*c)
        if not (left == right).all():
            raise GroupError("multiplication is not associative")
    else:
        rng = random.Random(0)
        for _ in range(20000):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if table[table[a, b], c] != table[a, table[b, c]]:
                raise GroupError(f"multiplication is not associative at {(a, b, c)}")


def _is_subgroup(G: FiniteGroup, elems: Sequence[int]) -> bool:
    s = set(elems)
    if 0 not in s:
        return False
    return all(G.mult(a, b) in s for a in elems for b in elems)


def _is_normal(G: FiniteGroup, elems: Sequence[int]) -> bool:
    s = set(elems)
    return all(x in s for e in elems for x in G.classes.block_of(e))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup given by its sorted element ids inside ``parent``."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    is_normal: bool = field(default=False)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.elements == self.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __le__(self, other: Subgroup) -> bool:
        return self.element_set <= other.element_set

    def __lt__(self, other: Subgroup) -> bool:
        return self.element_set < other.element_set

    @functools.cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def group(self) -> FiniteGroup:
        """This subgroup as a group in its own right (ids = positions)."""
        cache = self.parent._subgroup_groups
        if self.elements not in cache:
            pos = {e: i for i, e in enumerate(self.elements)}
            table = [[pos[self.parent.mult(a, b)] for b in self.elements]
                     for a in self.elements]
            H = FiniteGroup(table, labels=[self.parent.labels[e] for e in self.elements],
                            name=f"sub({self.parent.name or '?'},{len(self.elements)})",
                            validate=False,
                            spec={"kind": "subgroup", "parent": self.parent.to_json(),
                                  "elements": list(self.elements)})
            H.ambient = (self.parent, self)
            cache[self.elements] = H
        return cache[self.elements]

    @property
    def embedding(self) -> tuple[int, ...]:
        """Local id -> parent id."""
        return self.elements

    def local_ids(self, parent_ids) -> list[int]:
        pos = {e: i for i, e in enumerate(self.elements)}
        return [pos[g] for g in parent_ids]

    def cosets(self) -> list[tuple[int, ...]]:
        """Left cosets gN ordered by smallest member."""
        return quotient(self.parent, self).cosets


@dataclass(eq=False)
class QuotientData:
    """G/N with its projection and section maps.

    Cosets are labeled in order of their smallest member, so coset 0 is N
    and ``section[c]`` is the smallest element of coset c.
    """

    parent: FiniteGroup
    subgroup: Subgroup
    group: FiniteGroup
    projection: tuple[int, ...]
    section: tuple[int, ...]
    cosets: list[tuple[int, ...]]

    def preimage(self, coset_ids) -> list[int]:
        return sorted(g for c in coset_ids for g in self.cosets[c])


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientData:
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal:
        raise GroupError("quotient by a non-normal subgroup")
    if N.elements in G._quotients:
        return G._quotients[N.elements]
    proj = [-1] * G.order
    section = []
    cosets = []
    for g in range(G.order):
        if proj[g] == -1:
            c = len(section)
            members = sorted(G.mult(g, n) for n in N.elements)
            for x in members:
                proj[x] = c
            section.append(g)
            cosets.append(tuple(members))
    table = [[proj[G.mult(a, b)] for b in section] for a in section]
    Q = FiniteGroup(table, labels=[G.labels[g] for g in section],
                    name=f"{G.name or '?'}/{N.order}", validate=False,
                    spec={"kind": "quotient", "parent": G.to_json(),
                          "subgroup": list(N.elements)})
    data = QuotientData(G, N, Q, tuple(proj), tuple(section), cosets)
    Q.quotient_of = data
    G._quotients[N.elements] = data
    return data


def subgroup_closure(G: FiniteGroup, seed) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    elems = {0}
    frontier = deque([0])
    gens = sorted(set(int(s) for s in seed))
    while frontier:
        x = frontier.popleft()
        for s in gens:
            y = G.mult(x, s)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return G.subgroup(elems)


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, found by closing unions of conjugacy classes.

    Every normal subgroup is generated by the classes it contains, so
    starting from 1 and repeatedly adjoining one class reaches all of them.
    Sorted by order, then by element ids.
    """
    found = {(0,): G.trivial()}
    queue = deque([(0,)])
    while queue:
        elems = queue.popleft()
        have = set(elems)
        for block in G.classes.blocks[1:]:
            if block[0] in have:
                continue
            N = subgroup_closure(G, list(elems) + list(block))
            if N.elements not in found:
                found[N.elements] = N
                queue.append(N.elements)
    return sorted(found.values(), key=lambda N: (N.order, N.elements))


def class_structure_constants(G: FiniteGroup, i: int, j: int) -> tuple[int, ...]:
    """Coefficients a with K_i K_j = sum_k a[k] K_k (class sums)."""
    c = G.num_classes
    if not (0 <= i < c and 0 <= j < c):
        raise IndexError("class index out of range")
    return G.structure_constants[i][j]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def build_abelian(orders: Sequence[int]) -> FiniteGroup:
    """Z_{d1} x ... x Z_{dr} with elements in mixed-radix (lexicographic) order."""
    orders = [int(d) for d in orders]
    if any(d < 1 for d in orders):
        raise GroupError("cyclic orders must be >= 1")
    key = tuple(orders)
    if key in _ABELIAN_CACHE:
        return _ABELIAN_CACHE[key]
    tuples = list(itertools.product(*(range(d) for d in orders)))
    n = len(tuples)
    idx = np.arange(n).reshape(orders or ())
    coords = np.array(tuples, dtype=np.int64).reshape(n, len(orders))
    mods = np.array(orders, dtype=np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % mods if orders else None
    if orders:
        table = idx[tuple(summed[..., t] for t in range(len(orders)))]
    else:
        table = np.zeros((1, 1), dtype=np.int64)
    name = "x".join(f"Z{d}" for d in orders) or "Z1"
    G = FiniteGroup(table, labels=tuples, orders=orders, name=name,
                    spec={"kind": "abelian", "orders": orders}, validate=n <= 200)
    _ABELIAN_CACHE[key] = G
    return G


_ABELIAN_CACHE: dict = {}


def _spec_key(spec) -> str:
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


# groups built from equal descriptions are the same object, so theories read
# from separate files land on one group
_SPEC_CACHE: dict = {}


def build_from_cayley(table, name=None) -> FiniteGroup:
    table = np.asarray(table, dtype=np.int64)
    spec = {"kind": "cayley", "table": table.tolist()}
    key = _spec_key(spec)
    if key not in _SPEC_CACHE:
        _SPEC_CACHE[key] = FiniteGroup(table, name=name, spec=spec)
    return _SPEC_CACHE[key]


def build_from_permutations(generators, degree: int | None = None, cap: int = DEFAULT_ORDER_CAP,
                            name=None) -> FiniteGroup:
    """Close a set of permutations of ``{0..k-1}`` under composition.

    The product ``g*h`` applies ``h`` first, then ``g``.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = max((len(g) for g in gens), default=1)
    spec = {"kind": "perm", "degree": degree, "generators": [list(g) for g in gens]}
    key = _spec_key(spec)
    if key not in _SPEC_CACHE:
        _SPEC_CACHE[key] = permutation_group(gens, degree, cap, name)
    G = _SPEC_CACHE[key]
    if G.order > cap:
        raise GroupError(f"closure exceeds the order cap {cap}")
    return G


def permutation_group(gens, degree: int, cap: int = DEFAULT_ORDER_CAP, name=None) -> FiniteGroup:
    """Uncached form of :func:`build_from_permutations`."""
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = deque([ident])
    while frontier:
        x = frontier.popleft()
        for s in gens:
            y = tuple(x[s[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= cap:
                    raise GroupError(f"closure exceeds the order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                frontier.append(y)
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements]
             for a in elements]
    spec = {"kind": "perm", "degree": degree, "generators": [list(g) for g in gens]}
    return FiniteGroup(table, labels=elements, name=name, validate=len(elements) <= 200,
                       spec=spec)


def direct_product_group(M: FiniteGroup, N: FiniteGroup) -> FiniteGroup:
    """M x N with (m, n) stored at id m*|N| + n; cached per factor pair."""
    key = (id(M), id(N))
    if key in _PRODUCT_CACHE:
        return _PRODUCT_CACHE[key][2]
    if M.orders is not None and N.orders is not None:
        G = build_abelian(list(M.orders) + list(N.orders))
    else:
        a, b = M.order, N.order
        table = [[M.mult(x // b, y // b) * b + N.mult(x % b, y % b)
                  for y in range(a * b)] for x in range(a * b)]
        G = FiniteGroup(table, labels=[(p, q) for p in M.labels for q in N.labels],
                        name=f"{M.name}x{N.name}", validate=False,
                        spec={"kind": "product", "factors": [M.to_json(), N.to_json()]})
    _PRODUCT_CACHE[key] = (M, N, G)
    return G


_PRODUCT_CACHE: dict = {}


def group_from_json(data, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from its JSON description (see README for the schema).

    Besides the three base kinds, descriptions produced by the library for
    derived groups are understood: ``subgroup``, ``quotient``, ``product``,
    ``dual`` and ``named`` (a bundled group with its character table).
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise GroupError("group JSON needs a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "abelian":
            return build_abelian(data.get("orders", []))
        if kind == "cayley":
            return build_from_cayley(data["table"], name=data.get("name"))
        if kind == "perm":
            return build_from_permutations(data["generators"], degree=data.get("degree"),
                                           cap=cap, name=data.get("name"))
        if kind == "subgroup":
            parent = group_from_json(data["parent"], cap)
            return parent.subgroup(data["elements"]).group
        if kind == "quotient":
            parent = group_from_json(data["parent"], cap)
            return quotient(parent, parent.subgroup(data["subgroup"])).group
        if kind == "product":
            M, N = (group_from_json(f, cap) for f in data["factors"])
            return direct_product_group(M, N)
        if kind == "dual":
            from .chartab import dual_group

            return dual_group(group_from_json(data["of"], cap)).dual
        if kind == "named":
            from .chartab import bundled_group

            return bundled_group(data["name"])
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed {kind} group description: {exc}") from exc
    raise GroupError(f"unknown group kind {kind!r}")
