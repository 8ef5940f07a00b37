import json
import subprocess
import sys

from charcod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table(capsys):
    code, out, _ = run(capsys, "table", "symmetric(3)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "chartab 1" and sum(l.startswith("row") for l in lines) == 3


def test_cod_by_label(capsys):
    code, out, _ = run(capsys, "cod", "SD_6_91_17")
    assert code == 0 and "cod 1 2 3 6 7 13 91" in out and "k 2" in out


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "alternating(5)", "--dot", "gk")
    assert code == 0 and out.startswith("graph gk {") and "--" not in out
    code, out, _ = run(capsys, "graph", "alternating(5)", "--dot", "codegree")
    assert "2 -- 3;" in out


def test_structure(capsys):
    code, out, _ = run(capsys, "structure", "degree 4; gens (1 2 3 4), (1 2)")
    assert code == 0
    assert "normal_subgroup_orders 1 4 12 24" in out and "derived_length 3" in out


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "semidirect_cyclic(3, 7, 2)")
    assert code == 0 and "orbit_sizes_on_IrrV 1 3 3" in out and "cd_over_V 3" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "cod", "nonsense(")
    assert code == 2 and "error" in err


def test_verify_json(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("codegree-corpus 1\nS3 = symmetric(3)\nA5 = alternating(5)\n")
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--corpus", str(corpus), "--json", str(out), "--checks", "theorem_d,theorem_c")
    assert code == 0 and "fail 0" in err
    doc = json.loads(out.read_text())
    assert doc["checks"] == ["theorem_d", "theorem_c"]
    a5 = doc["groups"][1]
    assert all(r["status"] == "skipped" for r in a5["records"] if r["check"] == "theorem_c")


def test_verify_usage_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", "--checks", "bogus")
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("codegree-corpus 1\nX = cyclic(\n")
    code, _, _ = run(capsys, "verify", "--corpus", str(bad))
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "charcod", "cod", "cyclic(4)"], capture_output=True, text=True)
    assert res.returncode == 0 and "cod 1 2 4" in res.stdout
