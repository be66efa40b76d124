"""Character tables, restriction/inflation between tables, and abelian duals.

Tables of abelian groups are generated; tables of other groups are read
from JSON and validated (orthogonality, degrees, principal row).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cyclotomic import CycNumber, root_of_unity
from .groups import (FiniteGroup, GroupError, QuotientData, Subgroup, group_from_json,
                     permutation_group)

__all__ = [
    "CharacterTable",
    "CharacterTableError",
    "DualGroupData",
    "abelian_char_table",
    "bundled_group",
    "dual_group",
    "inflation_map",
    "iota",
    "load_char_table",
    "match_characters",
    "restriction_constituents",
]


class CharacterTableError(ValueError):
    """Malformed or inconsistent character table."""


class CharacterTable:
    """Irreducible characters of ``group`` evaluated on its classes.

    ``values[i][j]`` is chi_i on class j; chi_0 is the principal character.
    """

    def __init__(self, group: FiniteGroup, values, conductor: int | None = None,
                 exponents=None):
        self.group = group
        self.conductor = conductor or group.exponent
        self.values = [tuple(r) for r in values]
        self.degrees = tuple(int(r[0].coeffs[0]) for r in self.values)
        self.class_sizes = group.class_sizes
        # abelian tables keep chi(g) = zeta_m ** exponents[chi][g]
        self.exponents = exponents
        self._sigma: dict = {}
        self._caches: dict = {}

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"<CharacterTable of {self.group!r}: {len(self)} characters>"

    @property
    def num_chars(self) -> int:
        return len(self.values)

    def value(self, chi: int, g: int) -> CycNumber:
        return self.values[chi][self.group.class_of[g]]

    def row_on_elements(self, chi: int) -> tuple[CycNumber, ...]:
        cls = self.group.class_of
        row = self.values[chi]
        return tuple(row[cls[g]] for g in range(self.group.order))

    def kernel(self, chi: int) -> frozenset[int]:
        row = self.values[chi]
        deg = row[0]
        return frozenset(g for g in range(self.group.order)
                         if row[self.group.class_of[g]] == deg)

    def chars_over_quotient(self, N: Subgroup) -> frozenset[int]:
        """Ids of the characters with N in their kernel (Irr(G/N))."""
        reps = {self.group.class_of[g] for g in N.elements}
        return frozenset(i for i, row in enumerate(self.values)
                         if all(row[k] == row[0] for k in reps))

    def sigma(self, block) -> tuple[CycNumber, ...]:
        """Class values of sum_{psi in block} psi(1) psi."""
        key = tuple(block)
        out = self._sigma.get(key)
        if out is None:
            acc = [CycNumber(self.conductor)] * self.group.num_classes
            for psi in key:
                d = self.degrees[psi]
                acc = [a + v * d if d != 1 else a + v for a, v in zip(acc, self.values[psi])]
            out = tuple(acc)
            self._sigma[key] = out
        return out

    def inner(self, f1, f2) -> Fraction:
        """<f1, f2> for class functions given as class-value sequences."""
        acc = CycNumber(self.conductor)
        for size, a, b in zip(self.class_sizes, f1, f2):
            acc = acc + a * b.conj() * size
        if not acc.is_rational():
            raise CharacterTableError("inner product is not rational")
        return Fraction(acc.coeffs[0]) / self.group.order

    def validate(self) -> None:
        G = self.group
        r = len(self.values)
        if any(len(row) != G.num_classes for row in self.values):
            raise CharacterTableError("row length differs from the class count")
        if r != G.num_classes:
            raise CharacterTableError(
                f"{r} characters but {G.num_classes} conjugacy classes")
        if self.conductor != G.exponent:
            raise CharacterTableError(
                f"conductor {self.conductor} differs from the exponent {G.exponent}")
        for row in self.values:
            for v in row:
                if v.conductor != self.conductor:
                    raise CharacterTableError("entry with a foreign conductor")
        if any(v != 1 for v in self.values[0]):
            raise CharacterTableError("row 0 must be the principal character")
        for i, row in enumerate(self.values):
            if not row[0].is_rational() or row[0].coeffs[0] < 1:
                raise CharacterTableError(f"degree of character {i} is not a positive integer")
        if sum(d * d for d in self.degrees) != G.order:
            raise CharacterTableError("squared degrees do not sum to |G|")
        conj = [[v.conj() for v in row] for row in self.values]
        for i in range(r):
            for j in range(i, r):
                acc = CycNumber(self.conductor)
                for size, a, b in zip(self.class_sizes, self.values[i], conj[j]):
                    acc = acc + a * b * size
                if acc != (G.order if i == j else 0):
                    raise CharacterTableError(
                        f"row orthogonality fails for characters {i}, {j}")
        for k in range(G.num_classes):
            for l in range(k, G.num_classes):
                acc = CycNumber(self.conductor)
                for i in range(r):
                    acc = acc + self.values[i][k] * conj[i][l]
                want = G.order // self.class_sizes[k] if k == l else 0
                if acc != want:
                    raise CharacterTableError(
                        f"column orthogonality fails for classes {k}, {l}")

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "conductor": self.conductor,
            "degrees": list(self.degrees),
            "class_sizes": list(self.class_sizes),
            "entries": [[v.to_json() for v in row] for row in self.values],
        }


# ---------------------------------------------------------------------------
# abelian tables
# ---------------------------------------------------------------------------


def abelian_char_table(G: FiniteGroup) -> CharacterTable:
    """Linear characters of an abelian group.

    With a cyclic descriptor (d_1, ..., d_r), character a sends g to
    prod_t zeta_{d_t}^{a_t g_t}, and characters share the element indexing,
    so the table is symmetric.  Groups without a descriptor get their
    characters by extending along a generating sequence.
    """
    if not G.is_abelian:
        raise CharacterTableError("abelian_char_table needs an abelian group")
    m = G.exponent
    if G.orders is not None:
        scale = [m // d for d in G.orders]
        coords = G.labels
        exps = [[sum(a * g * s for a, g, s in zip(ca, cg, scale)) % m for cg in coords]
                for ca in coords]
    else:
        exps = sorted(_extend_characters(G))
    values = [[root_of_unity(m, e) for e in row] for row in exps]
    return CharacterTable(G, values, m, exponents=[tuple(r) for r in exps])


def _extend_characters(G: FiniteGroup) -> list[tuple[int, ...]]:
    m = G.exponent
    members = [0]
    inside = {0}
    chars = [{0: 0}]
    while len(members) < G.order:
        g = next(x for x in range(G.order) if x not in inside)
        k, x = 1, g
        while x not in inside:
            x = G.mult(x, g)
            k += 1
        # g**k lies in the current subgroup; each character has k extensions
        gk = x
        powers = [0]
        for _ in range(1, k):
            powers.append(G.mult(powers[-1], g))
        new_members = [G.mult(h, p) for p in powers for h in members]
        new_chars = []
        for e in chars:
            a = e[gk]
            if a % k:
                raise CharacterTableError("character does not extend")
            base = a // k
            for t in range(k):
                x0 = (base + t * (m // k)) % m
                ext = {}
                for i, p in enumerate(powers):
                    for h in members:
                        ext[G.mult(h, p)] = (e[h] + i * x0) % m
                new_chars.append(ext)
        members = new_members
        inside = set(members)
        chars = new_chars
    return [tuple(e[g] for g in range(G.order)) for e in chars]


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def _parse_value(x, m: int) -> CycNumber:
    if isinstance(x, dict):
        v = CycNumber.from_json(x)
        return v.lift(m) if v.conductor != m and m % v.conductor == 0 else v
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return CycNumber.rational(m, Fraction(x))
    raise CharacterTableError(f"cannot read character value {x!r}")


def load_char_table(source, group: FiniteGroup | None = None) -> CharacterTable:
    """Read a character-table JSON (path or parsed dict) and validate it.

    When ``group`` is given the table is bound to it; otherwise the group is
    built from the file's ``group`` field.  The validated table is attached
    to the group.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    if group is None:
        g = data.get("group")
        if isinstance(g, str):
            group = bundled_group(g, with_table=False)
        elif isinstance(g, dict):
            group = group_from_json(g)
        else:
            raise CharacterTableError("table JSON names no group")
    m = int(data["conductor"])
    entries = data["entries"]
    if len(entries) and len(entries[0]) != group.num_classes:
        raise CharacterTableError(
            f"table has {len(entries[0])} classes, group has {group.num_classes}")
    if "class_sizes" in data and tuple(data["class_sizes"]) != group.class_sizes:
        raise CharacterTableError("class sizes do not match the group")
    try:
        values = [[_parse_value(x, m) for x in row] for row in entries]
    except (KeyError, ValueError, TypeError) as exc:
        raise CharacterTableError(str(exc)) from exc
    table = CharacterTable(group, values, m)
    if "degrees" in data and tuple(data["degrees"]) != table.degrees:
        raise CharacterTableError("listed degrees disagree with the identity column")
    table.validate()
    if not group.is_abelian or group._character_table is None:
        group._character_table = table
    return table


_BUNDLED: dict = {}


def bundled_group(name: str, with_table: bool = True) -> FiniteGroup:
    """One of the shipped nonabelian groups (S3, D4, Q8, S6) with its table."""
    key = name.upper()
    if key not in _BUNDLED:
        try:
            text = resources.files("sctheory.data").joinpath(f"{key.lower()}.json").read_text()
        except FileNotFoundError:
            raise GroupError(f"no bundled group named {name!r}") from None
        data = json.loads(text)
        spec = data["group"]
        # built outside the description cache so that a group assembled by
        # hand from the same generators stays a separate, table-less object
        if spec["kind"] == "perm":
            G = permutation_group(spec["generators"], spec["degree"])
        else:
            G = FiniteGroup(spec["table"])
        G.name = key
        G.spec = {"kind": "named", "name": key}
        load_char_table(data, group=G)
        _BUNDLED[key] = G
    return _BUNDLED[key]


# ---------------------------------------------------------------------------
# moving characters between groups
# ---------------------------------------------------------------------------


def _lifted(row, m):
    return tuple(v.lift(m) for v in row)


def restriction_constituents(big: CharacterTable, small: CharacterTable,
                             embedding) -> list[frozenset[int]]:
    """For each chi of the big group, the constituents of chi restricted.

    ``embedding[i]`` is the big-group id of small-group element i.
    """
    key = ("res", id(small), tuple(embedding))
    cached = big._caches.get(key)
    if cached is not None:
        return cached
    H = small.group
    m = math.lcm(big.conductor, small.conductor)
    reps = [b[0] for b in H.classes.blocks]
    small_rows = [_lifted(r, m) for r in small.values]
    lookup = {r: i for i, r in enumerate(small_rows)}
    out = []
    for chi in range(big.num_chars):
        res = tuple(big.value(chi, embedding[h]).lift(m) for h in reps)
        if big.degrees[chi] == 1:
            if res not in lookup:
                raise CharacterTableError("restriction of a linear character is not irreducible")
            out.append(frozenset([lookup[res]]))
            continue
        parts = set()
        for theta, row in enumerate(small_rows):
            acc = CycNumber(m)
            for size, a, b in zip(H.class_sizes, res, row):
                acc = acc + a * b.conj() * size
            if not acc.is_zero():
                parts.add(theta)
        out.append(frozenset(parts))
    big._caches[key] = out
    return out


def inflation_map(big: CharacterTable, qd: QuotientData) -> list[int]:
    """For each character of G/N, the id of its inflation in Irr(G)."""
    key = ("inf", id(qd))
    cached = big._caches.get(key)
    if cached is not None:
        return cached
    G = big.group
    qtable = qd.group.character_table
    if qtable is None:
        raise CharacterTableError("character table of the quotient is unavailable")
    m = math.lcm(big.conductor, qtable.conductor)
    lookup = {_lifted(r, m): i for i, r in enumerate(big.values)}
    reps = [b[0] for b in G.classes.blocks]
    out = []
    for psi in range(qtable.num_chars):
        row = tuple(qtable.value(psi, qd.projection[g]).lift(m) for g in reps)
        if row not in lookup:
            raise CharacterTableError("inflated character is missing from the table")
        out.append(lookup[row])
    big._caches[key] = out
    return out


def match_characters(src: CharacterTable, tgt: CharacterTable, element_map) -> list[int]:
    """Character correspondence induced by a group isomorphism.

    ``element_map[s]`` is the target element matching source element s; the
    result sends each source character to the target character that agrees
    with it along the map.
    """
    T = tgt.group
    m = math.lcm(src.conductor, tgt.conductor)
    inverse = [0] * T.order
    for s, t in enumerate(element_map):
        inverse[t] = s
    reps = [b[0] for b in T.classes.blocks]
    lookup = {_lifted(r, m): i for i, r in enumerate(tgt.values)}
    out = []
    for chi in range(src.num_chars):
        row = tuple(src.value(chi, inverse[t]).lift(m) for t in reps)
        if row not in lookup:
            raise CharacterTableError("element map is not an isomorphism of tables")
        out.append(lookup[row])
    return out


def iota(G: FiniteGroup, M: Subgroup, theta: int) -> frozenset[int]:
    """Irr(G | theta): the characters of abelian G restricting to theta on M."""
    if not G.is_abelian:
        raise CharacterTableError("iota is defined for abelian groups")
    small = M.group.character_table
    if not 0 <= theta < small.num_chars:
        raise CharacterTableError(f"{theta} is not a character of the subgroup")
    cons = restriction_constituents(G.character_table, small, M.embedding)
    return frozenset(chi for chi, c in enumerate(cons) if c == {theta})


# ---------------------------------------------------------------------------
# duality data
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class DualGroupData:
    """Irr(G) realized as a group whose element ids are the character ids.

    The dual group's table has rows indexed by elements of G (the
    evaluation characters g~), so the natural isomorphism to the double dual
    is the identity on ids.
    """

    group: FiniteGroup
    dual: FiniteGroup
    table: CharacterTable

    def eval(self, chi: int, g: int) -> CycNumber:
        return self.table.value(chi, g)

    def index_map(self, g: int) -> int:
        return g


def dual_group(G: FiniteGroup, T: CharacterTable | None = None) -> DualGroupData:
    if not G.is_abelian:
        raise CharacterTableError("dual groups are only defined for abelian groups")
    if G.dual_data is not None:
        return G.dual_data
    T = T or G.character_table
    if G.orders is not None:
        # characters carry the element indexing, so Irr(G) is G itself
        data = DualGroupData(G, G, T)
        G.dual_data = data
        return data
    m = T.conductor
    exps = T.exponents
    index = {e: i for i, e in enumerate(exps)}
    n = len(exps)
    table = [[index[tuple((x + y) % m for x, y in zip(exps[a], exps[b]))]
              for b in range(n)] for a in range(n)]
    D = FiniteGroup(table, name=f"Irr({G.name or '?'})", validate=False,
                    spec={"kind": "dual", "of": G.to_json()})
    # row g of the transpose is the evaluation character g~
    values = [tuple(T.values[chi][g] for chi in range(n)) for g in range(G.order)]
    texp = [tuple(exps[chi][g] for chi in range(n)) for g in range(G.order)]
    dtable = CharacterTable(D, values, m, exponents=texp)
    D._character_table = dtable
    data = DualGroupData(G, D, T)
    G.dual_data = data
    D.dual_data = DualGroupData(D, G, dtable)
    return data
