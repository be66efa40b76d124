"""Command-line interface: ``sct <verb> ...``.

Exit codes: 0 on success, 1 when the input is well formed but
mathematically rejected (the report names the failed condition and a
witness), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .chartab import CharacterTableError, bundled_group, load_char_table
from .core import (NotATheory, galois_orbit_theory, join_theories, orbit_theory,
                   superclass_admissible, theory_from_json, verify_definition)
from .duality import dual_theory
from .enumerate import EnumerationCapError, enumerate_sup, lattice
from .groups import (GroupError, build_abelian, build_from_cayley, build_from_permutations,
                     group_from_json)
from .partitions import SetPartition
from .products import (FactorizationError, ProductError, factor_over, star_product,
                       unique_factorization, wtp_product)

BUNDLED = ("S3", "D4", "Q8", "S6")


class InputError(Exception):
    """Malformed command-line input (exit code 2)."""


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def parse_group(spec: str, cap=None):
    """``Z8``, ``Z2xZ4``, a bundled name, ``cayley:<path>``, ``perm:<path>``
    or ``json:<path>``."""
    kw = {} if cap is None else {"cap": cap}
    if re.fullmatch(r"Z\d+(xZ\d+)*", spec):
        return build_abelian([int(x) for x in spec[1:].split("xZ")])
    if spec.upper() in BUNDLED:
        return bundled_group(spec)
    kind, _, path = spec.partition(":")
    if not path:
        raise InputError(f"unrecognized group spec {spec!r}")
    data = _read_json(path)
    if kind == "cayley":
        table = data["table"] if isinstance(data, dict) else data
        return build_from_cayley(table, name=Path(path).stem)
    if kind == "perm":
        if isinstance(data, dict):
            return build_from_permutations(data["generators"], degree=data.get("degree"),
                                           name=Path(path).stem, **kw)
        return build_from_permutations(data, name=Path(path).stem, **kw)
    if kind == "json":
        return group_from_json(data, **kw)
    raise InputError(f"unknown group spec kind {kind!r}")


def _group(args):
    if not getattr(args, "group", None):
        return None
    G = parse_group(args.group, getattr(args, "order_cap", None))
    if getattr(args, "table", None):
        load_char_table(args.table, group=G)
    return G


def _partition(path, n) -> SetPartition:
    data = _read_json(path)
    try:
        return SetPartition.from_json(data, n)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _theory(path, G=None):
    data = _read_json(path)
    if not isinstance(data, dict) or "class_part" not in data:
        raise InputError(f"{path} is not a theory file")
    if G is None and "group" not in data:
        raise InputError(f"{path} names no group; pass --group")
    return theory_from_json(data, group=G)


def _subgroup_ids(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad subgroup list {text!r}") from exc


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_enumerate(args, out):
    G = _group(args)
    res = enumerate_sup(G, cap=args.cap, jobs=args.jobs, with_characters=args.with_characters)
    for rec in res.jsonl():
        out.write(dumps(rec) + "\n")


def cmd_lattice(args, out):
    G = _group(args)
    out.write(lattice(enumerate_sup(G, cap=args.cap, jobs=args.jobs, with_characters=False)))


def cmd_verify(args, out):
    G = _group(args)
    if args.theory:
        T = _theory(args.theory, G)
        out.write(dumps({"theory": T.to_json(), "verdict": "theory"}) + "\n")
        return 0
    if G is None or not args.classes:
        raise InputError("verify needs --theory, or --group with --classes")
    K = _partition(args.classes, G.order)
    if args.chars:
        table = G.character_table
        if table is None:
            raise InputError("no character table for this group; pass --table")
        X = _partition(args.chars, table.num_chars)
        T = verify_definition(G, table, X, K)
        out.write(dumps({"theory": T.to_json(), "verdict": "theory"}) + "\n")
        return 0
    ok = superclass_admissible(G, K)
    out.write(dumps({"class_part": K.to_json(),
                     "verdict": "admissible" if ok else "inadmissible"}) + "\n")
    return 0 if ok else 1


def cmd_join(args, out):
    G = _group(args)
    if len(args.theory) != 2:
        raise InputError("join needs exactly two --theory files")
    A, B = (_theory(p, G) for p in args.theory)
    out.write(dumps(join_theories(A, B).to_json()) + "\n")


def cmd_dual(args, out):
    T = _theory(args.theory, _group(args))
    out.write(dumps(dual_theory(T).to_json()) + "\n")


def cmd_star(args, out):
    C, D = _theory(args.left), _theory(args.right)
    out.write(dumps(star_product(C, D).to_json()) + "\n")


def cmd_wtp(args, out):
    C, D = _theory(args.left), _theory(args.right)
    out.write(dumps(wtp_product(C, D).to_json()) + "\n")


def cmd_factor(args, out):
    E = _theory(args.theory, _group(args))
    if args.subgroup is not None:
        try:
            N = E.group.subgroup(_subgroup_ids(args.subgroup))
        except GroupError as exc:
            raise InputError(str(exc)) from exc
        C, D = factor_over(E, N)
        out.write(dumps({"left": C.to_json(), "right": D.to_json()}) + "\n")
    else:
        out.write(dumps(unique_factorization(E).to_json()) + "\n")


def cmd_orbit(args, out):
    G = _group(args)
    if G is None:
        raise InputError("orbit needs --group")
    if args.galois:
        T = galois_orbit_theory(G, None, _subgroup_ids(args.galois))
    else:
        auts = _read_json(args.automorphisms) if args.automorphisms else []
        T = orbit_theory(G, None, auts)
    out.write(dumps(T.to_json()) + "\n")


def cmd_table(args, out):
    G = _group(args)
    if G is None:
        raise InputError("table needs --group")
    table = G.character_table
    if table is None:
        raise InputError("no character table for this group; pass --table")
    out.write(dumps(table.to_json()) + "\n")


COMMANDS = {
    "enumerate": cmd_enumerate, "verify": cmd_verify, "join": cmd_join, "dual": cmd_dual,
    "star": cmd_star, "wtp": cmd_wtp, "factor": cmd_factor, "lattice": cmd_lattice,
    "orbit": cmd_orbit, "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sct", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help_text, group=True):
        sp = sub.add_parser(name, help=help_text)
        if group:
            sp.add_argument("--group", help="Z8, Z2xZ4, S3, cayley:<file>, perm:<file>, json:<file>")
            sp.add_argument("--table", help="character-table JSON to attach to the group")
            sp.add_argument("--order-cap", type=int, default=None,
                            help="order cap for permutation closure")
        sp.add_argument("--out", help="write the result here instead of stdout")
        return sp

    sp = add("enumerate", "list every theory of a group as JSON lines")
    sp.add_argument("--cap", type=int, default=None, help="maximum candidate count")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--with-characters", action="store_true",
                    help="attach the supercharacter side (needs a table)")
    sp = add("lattice", "Hasse diagram of the theories in DOT")
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("verify", "check a theory or a superclass partition")
    sp.add_argument("--classes", help="partition of element ids (JSON list of lists)")
    sp.add_argument("--chars", help="partition of character ids")
    sp.add_argument("--theory", help="theory JSON")
    sp = add("join", "join of two theories")
    sp.add_argument("--theory", action="append", default=[])
    sp = add("dual", "dual theory of an abelian theory")
    sp.add_argument("--theory", required=True)
    sp = add("star", "star product of a theory on N and one on G/N", group=False)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("wtp", "product over N <= M of a theory on M and one on G/N", group=False)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("factor", "factor over a subgroup, or the full factorization")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--subgroup", help="comma-separated element ids")
    sp = add("orbit", "theory from automorphism or Galois orbits")
    sp.add_argument("--automorphisms", help="JSON list of element permutations")
    sp.add_argument("--galois", help="comma-separated units mod the exponent")
    add("table", "print (and validate) a character table")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        code = COMMANDS[args.verb](args, out)
        return code or 0
    except (NotATheory, ProductError, FactorizationError) as exc:
        sys.stdout.write(dumps(exc.to_json()) + "\n")
        return 1
    except EnumerationCapError as exc:
        sys.stderr.write(dumps({"error": "cap exceeded", "classes": exc.classes,
                                "candidates": exc.candidates, "cap": exc.cap}) + "\n")
        return 2
    except (InputError, GroupError, CharacterTableError, ValueError, KeyError) as exc:
        sys.stderr.write(dumps({"error": "malformed input", "message": str(exc)}) + "\n")
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
