import json
import subprocess
import sys

import pytest

from sctheory import build_from_permutations, canned, quotient, theory_from_json, wtp_product
from sctheory.cli import InputError, dumps, parse_group, run

from helpers import GOLDEN_DIR, S6_K, golden, s6_partition, z8_chain

S6_GENS = [[1, 0, 2, 3, 4, 5], [1, 2, 3, 4, 5, 0]]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_enumerate_z8(capsys):
    code, out, _ = call(capsys, "enumerate", "--group", "Z8")
    recs = lines(out)
    assert code == 0
    assert recs[-1]["summary"]["theories"] == golden()["Z8"]["count"] == len(recs) - 1
    for rec in recs[:-1]:
        assert dumps(theory_from_json(rec).to_json()) == dumps(rec)


def test_enumerate_flags(capsys, monkeypatch):
    code, out, _ = call(capsys, "enumerate", "--group", "Z2xZ4", "--jobs", "2")
    assert code == 0 and len(lines(out)) == golden()["Z2xZ4"]["count"] + 1
    code, _, err = call(capsys, "enumerate", "--group", "Z8", "--cap", "10")
    assert code == 2 and json.loads(err)["error"] == "cap exceeded"
    monkeypatch.setenv("SCT_CAP", "10")
    code, _, _ = call(capsys, "enumerate", "--group", "Z8")
    assert code == 2
    code, out, _ = call(capsys, "enumerate", "--group", "S3", "--with-characters")
    assert code == 0 and all("char_part" in r for r in lines(out)[:-1])


def test_verify_s6_partition(tmp_path, capsys):
    perm = write(tmp_path, "s6.json", {"generators": S6_GENS, "degree": 6})
    G = build_from_permutations(S6_GENS)
    K = write(tmp_path, "k.json", s6_partition(G, S6_K).to_json())
    code, out, _ = call(capsys, "verify", "--group", f"perm:{perm}", "--classes", K)
    assert code == 0 and json.loads(out)["verdict"] == "admissible"


def test_verify_paths(tmp_path, capsys):
    good = write(tmp_path, "k.json", [[0], [1, 3], [2]])
    code, out, _ = call(capsys, "verify", "--group", "Z4", "--classes", good)
    assert code == 0
    bad = write(tmp_path, "bad.json", [[0], [1], [2, 3]])
    code, out, _ = call(capsys, "verify", "--group", "Z4", "--classes", bad)
    assert code == 1 and json.loads(out)["verdict"] == "inadmissible"
    chars = write(tmp_path, "x.json", [[0], [1, 3], [2]])
    code, out, _ = call(capsys, "verify", "--group", "Z4", "--classes", good, "--chars", chars)
    assert code == 0 and json.loads(out)["verdict"] == "theory"
    singles = write(tmp_path, "x1.json", [[0], [1], [2], [3]])
    code, out, _ = call(capsys, "verify", "--group", "Z4", "--classes", good, "--chars", singles)
    assert code == 1 and json.loads(out)["reason"] == "size"


def test_dual_rejects_non_theory(tmp_path, capsys):
    t = write(tmp_path, "t.json", {"char_part": [[0, 2], [1], [3]],
                                   "class_part": [[0], [1, 3], [2]]})
    code, out, _ = call(capsys, "dual", "--group", "Z4", "--theory", t)
    rep = json.loads(out)
    assert code == 1 and rep["reason"] == "non_constant" and rep["witness"]


def test_dual_and_join(tmp_path, capsys):
    t = write(tmp_path, "t.json", {"char_part": [[0], [1, 3], [2]],
                                   "class_part": [[0], [1, 3], [2]]})
    code, out, _ = call(capsys, "dual", "--group", "Z4", "--theory", t)
    assert code == 0 and json.loads(out)["class_part"] == [[0], [1, 3], [2]]
    top = write(tmp_path, "top.json", {"char_part": [[0], [1, 2, 3]],
                                       "class_part": [[0], [1, 2, 3]]})
    code, out, _ = call(capsys, "join", "--group", "Z4", "--theory", t, "--theory", top)
    assert code == 0 and json.loads(out)["class_part"] == [[0], [1, 2, 3]]
    code, _, _ = call(capsys, "join", "--group", "Z4", "--theory", t)
    assert code == 2


def test_star_factor_golden(tmp_path, capsys):
    left, right = GOLDEN_DIR / "star_left.json", GOLDEN_DIR / "star_right.json"
    expected = (GOLDEN_DIR / "star_out.json").read_text()
    code, out, _ = call(capsys, "star", "--left", str(left), "--right", str(right))
    assert code == 0 and out == expected
    assert json.loads(out)["class_part"] == [[0], [1, 3, 5, 7], [2, 6], [4]]
    star = tmp_path / "e.json"
    star.write_text(out)
    code, out, _ = call(capsys, "factor", "--theory", str(star), "--subgroup", "0,4")
    rec = json.loads(out)
    assert code == 0
    assert dumps(rec["left"]) + "\n" == left.read_text()
    assert dumps(rec["right"]) + "\n" == right.read_text()
    code, out, _ = call(capsys, "factor", "--theory", str(star))
    assert code == 0 and json.loads(out)["chain"][0] == [0]


def test_factor_rejection(tmp_path, capsys):
    m = write(tmp_path, "m.json", {"char_part": [[0], [1], [2], [3]],
                                   "class_part": [[0], [1], [2], [3]]})
    code, out, _ = call(capsys, "factor", "--group", "Z4", "--theory", m, "--subgroup", "0,2")
    assert code == 1 and json.loads(out)["condition"] == "not_coset_union"
    code, _, _ = call(capsys, "factor", "--group", "Z4", "--theory", m, "--subgroup", "0,1")
    assert code == 2


def test_wtp_verb(tmp_path, capsys):
    G, N, M = z8_chain()
    C = canned(M.group, "minimal")
    D = canned(quotient(G, N).group, "minimal")
    left = write(tmp_path, "c.json", C.to_json())
    right = write(tmp_path, "d.json", D.to_json())
    code, out, _ = call(capsys, "wtp", "--left", left, "--right", right)
    assert code == 0 and json.loads(out) == wtp_product(C, D).to_json()
    right = write(tmp_path, "d2.json", canned(quotient(G, N).group, "maximal").to_json())
    code, out, _ = call(capsys, "wtp", "--left", left, "--right", right)
    assert code == 1 and json.loads(out)["condition"] == "m_not_d_normal"


def test_lattice_orbit_table(tmp_path, capsys):
    code, out, _ = call(capsys, "lattice", "--group", "Z3")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 1
    auts = write(tmp_path, "a.json", [[(-g) % 5 for g in range(5)]])
    code, out, _ = call(capsys, "orbit", "--group", "Z5", "--automorphisms", auts)
    assert code == 0 and json.loads(out)["class_part"] == [[0], [1, 4], [2, 3]]
    code, out, _ = call(capsys, "orbit", "--group", "Z5", "--galois", "1,2,3,4")
    assert code == 0 and json.loads(out)["class_part"] == [[0], [1, 2, 3, 4]]
    code, out, _ = call(capsys, "table", "--group", "S3")
    assert code == 0 and json.loads(out)["conductor"] in (1, 3, 6)
    out_path = tmp_path / "t.json"
    code, _, _ = call(capsys, "table", "--group", "Z4", "--out", str(out_path))
    assert code == 0 and json.loads(out_path.read_text())["conductor"] == 4


def test_malformed_inputs(tmp_path, capsys):
    assert call(capsys, "enumerate", "--group", "nonsense")[0] == 2
    assert call(capsys, "verify", "--group", "Z4")[0] == 2
    assert call(capsys, "verify", "--group", "Z4", "--classes", str(tmp_path / "nope"))[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert call(capsys, "dual", "--group", "Z4", "--theory", str(broken))[0] == 2
    short = write(tmp_path, "short.json", [[0], [1]])
    assert call(capsys, "verify", "--group", "Z4", "--classes", short)[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    with pytest.raises(InputError):
        parse_group("cayley:")


def test_canonical_reemit(tmp_path, capsys):
    code, out, _ = call(capsys, "enumerate", "--group", "Z2xZ2")
    for rec in lines(out)[:-1]:
        path = write(tmp_path, "r.json", rec)
        code, again, _ = call(capsys, "verify", "--theory", path)
        assert code == 0 and json.loads(again)["theory"] == rec
        assert dumps(json.loads(again)["theory"]) == dumps(rec)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sctheory.cli", "enumerate", "--group", "Z3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 3
