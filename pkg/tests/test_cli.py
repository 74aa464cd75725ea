import json

import pytest

from partctl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_c4(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    return str(p)


def test_exact_c4(tmp_path, capsys):
    code, out, _ = run(capsys, "exact", "--what", "P", "--k", "2",
                       "--input", write_c4(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "partctl/1"
    assert data["value"] == 2
    assert data["profile"] == [[3, 1], [2, 2]]


def test_family_then_exact(tmp_path, capsys):
    g = str(tmp_path / "g.txt")
    code, _, _ = run(capsys, "family", "--name", "nonmonotone_example",
                     "--out", g)
    assert code == 0
    code, out, _ = run(capsys, "exact", "--what", "P", "--k", "2",
                       "--input", g)
    assert code == 0
    assert json.loads(out)["value"] == 8


def test_family_roundtrip_identical(tmp_path, capsys):
    a, b = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    for f in (a, b):
        run(capsys, "family", "--name", "random_connected",
            "--n", "8", "--m", "12", "--seed", "5", "--out", f)
    with open(a) as fa, open(b) as fb:
        assert fa.read() == fb.read()


def test_tseq_csv(capsys):
    code, out, _ = run(capsys, "tseq", "--max", "20")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,t"
    assert "16,6" in lines


def test_tseq_intervals(capsys):
    code, out, _ = run(capsys, "tseq", "--max", "100", "--intervals")
    assert code == 0
    assert "6,12,16" in out.splitlines()


def test_splits_json(tmp_path, capsys):
    p = tmp_path / "p4.txt"
    p.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "splits", "--input", str(p), "--root", "0")
    assert code == 0
    data = json.loads(out)
    assert data["length"] == 4
    assert data["items"][0]["v"] == 0


def test_tree_p2_csv(tmp_path, capsys):
    p = tmp_path / "p5.txt"
    p.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n")
    code, out, _ = run(capsys, "tree-p2", "--input", str(p))
    assert code == 0
    assert out.strip().splitlines() == ["larger,smaller", "3,1", "2,2"]


def test_bounds_pathcut(tmp_path, capsys):
    code, out, _ = run(capsys, "bounds", "--method", "pathcut",
                       "--input", write_c4(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["report"]["emitted"] >= 1


def test_bounds_packing_infeasible(tmp_path, capsys):
    code, out, _ = run(capsys, "bounds", "--method", "packing", "--k", "2",
                       "--input", write_c4(tmp_path))
    assert code == 0  # infeasibility is a reported outcome, not an error
    assert json.loads(out)["feasible"] is False


def test_bounds_report_file(tmp_path, capsys):
    rep = str(tmp_path / "rep.json")
    code, _, _ = run(capsys, "bounds", "--method", "pi", "--k", "2",
                     "--input", write_c4(tmp_path), "--report", rep)
    assert code == 0
    with open(rep) as fh:
        data = json.load(fh)
    assert data["schema"] == "partctl/1"
    assert data["report"]["succeeded"] >= 1


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    code, _, err = run(capsys, "exact", "--what", "P", "--input", str(bad))
    assert code == 3


def test_exit_code_budget(tmp_path, capsys):
    k10 = tmp_path / "k10.txt"
    edges = [(i, j) for i in range(10) for j in range(i + 1, 10)]
    k10.write_text("10 45\n" + "".join(f"{u} {v}\n" for u, v in edges))
    code, _, _ = run(capsys, "exact", "--what", "P", "--k", "2",
                     "--input", str(k10))
    assert code == 4
    code, out, _ = run(capsys, "exact", "--what", "P", "--k", "2",
                       "--max-size", "45", "--input", str(k10))
    assert code == 0
    assert json.loads(out)["value"] == 22


def test_exit_code_usage(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "nope")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["exact"])  # missing required flags
    assert exc.value.code == 2


def test_verify_suites_pass(capsys, tmp_path):
    for suite in ("erdos-lehner", "trees"):
        out_file = str(tmp_path / f"{suite}.json")
        code, out, _ = run(capsys, "verify", "--suite", suite,
                           "--out", out_file)
        assert code == 0, suite
        assert "failures=0" in out
        with open(out_file) as fh:
            data = json.load(fh)
        assert data["failures"] == 0
        assert all(r["ok"] for r in data["records"])


def test_verify_deterministic(capsys):
    _, out1, _ = run(capsys, "verify", "--suite", "trees", "--seed", "3")
    _, out2, _ = run(capsys, "verify", "--suite", "trees", "--seed", "3")
    assert out1.splitlines()[:-1] == out2.splitlines()[:-1]  # all but timing
