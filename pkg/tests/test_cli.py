import json
import re
import subprocess
import sys

import pytest

from arclab.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_gens(path, degree, *gens):
    path.write_text(f"degree {degree}\n" + "\n".join(gens) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def s3_files(tmp_path):
    return (write_gens(tmp_path / "g.txt", 3, "(1,2)", "(1,2,3)"),
            write_gens(tmp_path / "l.txt", 3, "(1,2)"),
            write_gens(tmp_path / "r.txt", 3, "(1,2,3)"))


# ---------------------------------------------------------------- verify-preset


def test_s7_preset_with_graph(capsys):
    code, out, _ = run(capsys, "verify-preset", "s7-straight-twisted-amalgam", "--build-graph")
    assert code == EXIT_PASS
    assert '"valencies": [5, 3]' in out
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["verdict"] == "pass"
    g = doc["graph"]
    assert g["built"] and (g["left_count"], g["right_count"], g["edge_count"]) == (126, 210, 630)
    assert g["local"]["verdict"] is True and g["local"]["method"] == "direct"
    assert "timings" not in doc


def test_monster_exits_2(capsys):
    code, out, err = run(capsys, "verify-preset", "monster-twisted-twisted")
    assert code == EXIT_ERROR and out == ""
    assert "out of computational scope" in err


def test_unknown_preset_exits_2(capsys):
    code, _, err = run(capsys, "verify-preset", "nope")
    assert code == EXIT_ERROR and "unknown preset" in err


def test_a89_no_graph(capsys):
    code, out, _ = run(capsys, "verify-preset", "a89-twisted-twisted-amalgam", "--build-graph")
    assert code == EXIT_PASS
    doc = json.loads(out)
    assert doc["graph"] == {"built": False, "reason": "index over threshold"}


def test_missing_fixture_exits_2(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ARCLAB_DATA", str(tmp_path))
    code, _, err = run(capsys, "verify-preset", "j2-nondiag-nondiag")
    assert code == EXIT_ERROR and "missing fixture" in err


def test_timings_flag(capsys):
    code, out, _ = run(capsys, "verify-preset", "straight-nondiag-n3", "--timings")
    assert code == EXIT_PASS and "preset" in json.loads(out)["timings"]


# ---------------------------------------------------------------- verify-amalgam


def test_s3_toy_amalgam_fails(capsys, s3_files):
    # derived: <(1,2,3)> is normal in S_3, and on the 3 cosets of L∩R = 1 it acts as C_3,
    # which is not 2-transitive; a left vertex has 4 two-arcs but a stabilizer of order 2
    g, l, r = s3_files
    code, out, _ = run(capsys, "verify-amalgam", "--group", g, "--left", l, "--right", r)
    assert code == EXIT_FAIL
    doc = json.loads(out)
    failed = {c["name"] for c in doc["checks"] if not c["passed"]}
    assert failed == {"R core-free (faithful coset action)", "R 2-transitive on [R:L∩R]",
                      "locally 2-arc-transitive (direct)"}
    assert (doc["graph"]["left_count"], doc["graph"]["right_count"], doc["graph"]["edge_count"]) == (3, 2, 6)
    assert doc["graph"]["local"]["verdict"] is False


def test_s3_toy_s1_passes_direct_check(capsys, s3_files):
    g, l, r = s3_files
    _, out, _ = run(capsys, "verify-amalgam", "--group", g, "--left", l, "--right", r, "--s", "1")
    doc = json.loads(out)
    assert doc["graph"]["local"]["verdict"] is True


def test_disconnected_amalgam(capsys, tmp_path):
    g = write_gens(tmp_path / "g.txt", 4, "(1,2)", "(1,2,3,4)")
    l = write_gens(tmp_path / "l.txt", 4, "(1,2)")
    code, out, _ = run(capsys, "verify-amalgam", "--group", g, "--left", l, "--right", l)
    assert code == EXIT_FAIL
    checks = {c["name"]: c["passed"] for c in json.loads(out)["checks"]}
    assert checks["<L, R> = G (connected)"] is False


def test_unfaithful_amalgam(capsys, tmp_path):
    g = write_gens(tmp_path / "g.txt", 4, "(1,2)", "(1,2,3,4)")
    l = write_gens(tmp_path / "l.txt", 4, "(1,2)(3,4)", "(1,3)(2,4)")
    r = write_gens(tmp_path / "r.txt", 4, "(1,2,3)", "(1,2)")
    code, out, _ = run(capsys, "verify-amalgam", "--group", g, "--left", l, "--right", r)
    assert code == EXIT_FAIL
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["L core-free (faithful coset action)"]["passed"] is False
    assert checks["L core-free (faithful coset action)"]["detail"] == "kernel order 4"


def test_verify_amalgam_operational_errors(capsys, tmp_path):
    g = write_gens(tmp_path / "g.txt", 4, "(1,2,3)")
    l = write_gens(tmp_path / "l.txt", 4, "(1,2)")
    code, _, err = run(capsys, "verify-amalgam", "--group", g, "--left", l, "--right", l)
    assert code == EXIT_ERROR and "not contained" in err
    code, _, err = run(capsys, "verify-amalgam", "--group", str(tmp_path / "missing.txt"), "--left", l, "--right", l)
    assert code == EXIT_ERROR
    bad = tmp_path / "bad.txt"
    bad.write_text("degree 3\n(1,5)\n", encoding="utf-8")
    code, _, _ = run(capsys, "verify-amalgam", "--group", str(bad), "--left", l, "--right", l)
    assert code == EXIT_ERROR


# ---------------------------------------------------------------- determinism


def test_reports_byte_stable(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["verify-preset", "psl2-61-twisted-nondiag", "--out", str(path)]) == EXIT_PASS
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


# ---------------------------------------------------------------- build-graph and export


def test_build_and_export(capsys, tmp_path):
    gpath, dot, js = tmp_path / "g.json", tmp_path / "g.dot", tmp_path / "e.json"
    assert main(["build-graph", "--preset", "s7-straight-twisted-amalgam", "--out", str(gpath)]) == EXIT_PASS
    assert main(["export", "--graph", str(gpath), "--format", "dot", "--out", str(dot)]) == EXIT_PASS
    text = dot.read_text(encoding="utf-8")
    nodes = set(re.findall(r"\b[LR]\d+\b", text))
    assert len(nodes) == 336
    assert len(re.findall(r"\bL\d+;", text.split("subgraph right")[0])) == 126
    assert text.count(" -- ") == 630
    assert main(["export", "--graph", str(gpath), "--format", "json", "--out", str(js)]) == EXIT_PASS
    doc = json.loads(js.read_text(encoding="utf-8"))
    assert doc["valencies"] == [5, 3] and len(doc["edges"]) == 630
    # rebuilt document is byte-identical
    again = tmp_path / "g2.json"
    main(["build-graph", "--preset", "s7-straight-twisted-amalgam", "--out", str(again)])
    assert again.read_bytes() == gpath.read_bytes()


def test_build_graph_from_files(capsys, tmp_path, s3_files):
    g, l, r = s3_files
    out = tmp_path / "toy.json"
    assert main(["build-graph", "--group", g, "--left", l, "--right", r, "--out", str(out)]) == EXIT_PASS
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert len(doc["edges"]) == 6
    code, _, _ = run(capsys, "build-graph", "--group", g, "--out", str(out))
    assert code == EXIT_ERROR


def test_export_without_graph(capsys, tmp_path):
    code, _, err = run(capsys, "export", "--graph", str(tmp_path / "none.json"), "--out", str(tmp_path / "x.dot"))
    assert code == EXIT_ERROR and "build-graph" in err
    junk = tmp_path / "junk.json"
    junk.write_text("not json", encoding="utf-8")
    code, _, _ = run(capsys, "export", "--graph", str(junk), "--out", str(tmp_path / "x.dot"))
    assert code == EXIT_ERROR


def test_list_presets(capsys):
    code, out, _ = run(capsys, "list-presets")
    assert code == EXIT_PASS
    for name in ("s7-straight-twisted-amalgam", "psl2-59-straight-twisted", "psl2-61-straight-twisted",
                 "psl2-61-twisted-nondiag", "straight-nondiag-n<k>", "a89-twisted-twisted-amalgam",
                 "j2-nondiag-nondiag", "psl2-16-five-arc-components", "monster-twisted-twisted"):
        assert name in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "arclab.cli", "verify-preset", "monster-twisted-twisted"],
                         capture_output=True, text=True)
    assert res.returncode == EXIT_ERROR and "out of computational scope" in res.stderr
