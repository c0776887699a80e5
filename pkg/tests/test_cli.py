import json

import pytest

from loopgen.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prob_s3(capsys):
    code, out, _ = call(capsys, "prob", "--builtin", "s3", "--m", "2")
    assert code == 0
    assert "genCount 18" in out and "1/2 (0.500)" in out


def test_prob_all_types(capsys):
    code, out, _ = call(capsys, "prob", "--builtin", "paige2", "--all-types", "--m", "3")
    heads = [ln for ln in out.splitlines() if ln.startswith("type")]
    assert [h.split("(")[-1].rstrip(")") for h in heads] == ["0.028", "0.189", "0.252", "0.084"]


def test_prob_json(capsys):
    code, out, _ = call(capsys, "prob", "--builtin", "paige2", "--type", "3,2,2", "--json")
    d = json.loads(out)
    assert d["schema"] == "loopgen/1"
    (rep,) = d["reports"]
    assert rep["type"] == [2, 2, 3] and rep["genCount"] == 326592 and rep["decimal"] == "0.189"


def test_info(capsys):
    code, out, _ = call(capsys, "info", "--builtin", "paige2", "--json")
    d = json.loads(out)
    assert d["order"] == 120 and d["powerAssociative"] and not d["associative"] and d["moufang"]
    assert d["orderCounts"] == {"1": 1, "2": 63, "3": 56}


def test_info_non_power_associative(tmp_path, capsys):
    from test_loop import NON_PA_5

    path = tmp_path / "t.txt"
    path.write_text("5\n" + "\n".join(" ".join(map(str, r)) for r in NON_PA_5))
    code, out, _ = call(capsys, "info", "--file", str(path))
    assert code == 0 and "no (witness 2)" in out
    code, _, err = call(capsys, "nu", "--file", str(path))
    assert code == 1 and "does not generate a group" in err


def test_orbits_and_nu(capsys):
    code, out, _ = call(capsys, "orbits", "--builtin", "s3")
    assert out.splitlines()[0] == "# |Aut| = 6"
    assert "C2\t3\t2\t" in out
    code, out, _ = call(capsys, "nu", "--builtin", "s3")
    rows = {tuple(ln.split("\t")) for ln in out.splitlines()[1:]}
    assert ("C2", "3", "S3", "2") in rows and ("C2", "2", "S3", "2") in rows


def test_subloops(capsys):
    code, out, _ = call(capsys, "subloops", "--builtin", "cyclic:4", "--list")
    assert "subloops\t3" in out and "covering pairs\t2" in out


def test_dot_exports(capsys):
    code, out, _ = call(capsys, "export-dot", "--builtin", "paige2")
    assert out.startswith("digraph orbits {")
    assert '"S3" -> "C" [label="18:36", style=dashed]' in out
    assert '"M(A4)" -> "C" [label="48:48", style=bold]' in out
    assert '"E4-" -> "C" [label="8:24", style=dashed]' in out
    code, out2, _ = call(capsys, "nu", "--builtin", "paige2", "--dot")
    assert out2 == out
    code, out, _ = call(capsys, "export-dot", "--builtin", "s3", "--lattice")
    assert out.count("->") == 8


def test_verify_exhaustive_and_mc(capsys):
    code, out, _ = call(capsys, "verify", "--builtin", "paige2", "--m", "3")
    assert code == 0 and "oracle 955584 formula 955584" in out
    code, out, _ = call(capsys, "verify", "--builtin", "paige2", "--m", "3", "--mc", "100000", "--seed", "1")
    assert code == 0 and out.startswith("PASS\tmonte-carlo")


def test_verify_mismatch_exit_code(capsys):
    # a tolerance of zero standard errors cannot be met by a noisy estimate
    code, out, _ = call(capsys, "verify", "--builtin", "s3", "--m", "2", "--mc", "1001", "--seed", "0", "--sigmas", "0")
    assert code == 3 and out.startswith("FAIL")


def test_verify_properties(capsys):
    code, out, _ = call(capsys, "verify", "--builtin", "s3", "--properties")
    assert code == 0 and out.count("PASS") == 9


def test_budget_exit_code(capsys):
    code, _, err = call(capsys, "verify", "--builtin", "paige2", "--m", "4")
    assert code == 2 and "budget" in err
    code, _, _ = call(capsys, "subloops", "--builtin", "paige2", "--max-subloops", "10")
    assert code == 2


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 1\n1 1\n")
    assert call(capsys, "info", "--file", str(bad))[0] == 1
    assert call(capsys, "info", "--file", str(tmp_path / "missing"))[0] == 1
    assert call(capsys, "info", "--builtin", "nope")[0] == 1
    assert call(capsys, "prob", "--builtin", "s3")[0] == 1
    with pytest.raises(SystemExit) as exc:
        run(["info", "--builtin", "s3", "--bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run(["info", "--builtin", "s3", "--file", "x"])
    assert exc.value.code == 1


def test_emit_table_round_trip(capsys, tmp_path):
    code, text, _ = call(capsys, "emit-table", "--builtin", "paige2", "--comment", "M*(2)")
    path = tmp_path / "paige.txt"
    path.write_text(text)
    a = call(capsys, "prob", "--builtin", "paige2", "--all-types", "--m", "3", "--json")[1]
    b = call(capsys, "prob", "--file", str(path), "--all-types", "--m", "3", "--json")[1]
    assert a == b
    a = call(capsys, "nu", "--builtin", "paige2")[1]
    b = call(capsys, "nu", "--file", str(path))[1]
    assert a == b
