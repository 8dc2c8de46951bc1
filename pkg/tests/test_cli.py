from pathlib import Path

import pytest

from steinerpool.cli import main
from steinerpool.textio import read_design, read_report


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_affine(tmp_path, capsys):
    out = tmp_path / "ag.design"
    code, stdout, _ = run(capsys, "construct", "--family", "affine", "--q", 3, "--e", 2, "--out", out)
    assert code == 0 and stdout == "steiner t=2 v=9 sizes=3 b=12\n"
    d, res = read_design(out.read_text())
    assert d.b == 12 and len(res) == 4


def test_construct_to_stdout(capsys):
    code, stdout, err = run(capsys, "construct", "--family", "rdf-chain", "--k", 3, "--p", 7)
    assert code == 0 and stdout.startswith("design v=22 b=70\n")
    assert err == "steiner t=2 v=22 sizes=3,4 b=70\n"


def test_construct_unsupported(capsys):
    code, _, err = run(capsys, "construct", "--family", "kirkman", "--v", 33)
    assert code == 2 and err.startswith("error:")


def test_construct_missing_parameter(capsys):
    code, _, _ = run(capsys, "construct", "--family", "affine", "--q", 3)
    assert code == 2


def test_budget_exhaustion(capsys):
    code, _, _ = run(capsys, "construct", "--family", "rdf-chain", "--k", 7, "--p", 337, "--budget", 1)
    assert code == 4


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "--bogus"])
    assert info.value.code == 64


def test_simulate_needs_seed(capsys):
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--pools", "x", "--p", "0.1", "--trials", "10"])
    assert info.value.code == 64


def test_verify_table1(tmp_path, capsys):
    f = tmp_path / "t1.design"
    run(capsys, "construct", "--family", "known", "--name", "table1", "--out", f)
    code, out, _ = run(capsys, "verify", "--t", 2, f, "--check", "cyclic-resolvable")
    assert code == 0 and "check cyclic-resolvable: pass (class orbits 7,3)" in out


def test_verify_corrupted(tmp_path, capsys):
    f = tmp_path / "ag.design"
    run(capsys, "construct", "--family", "affine", "--q", 3, "--e", 2, "--out", f)
    lines = f.read_text().splitlines()
    lines[1] = "0 1 3"
    bad = tmp_path / "bad.design"
    bad.write_text("\n".join(lines[:13]) + "\n")
    code, out, _ = run(capsys, "verify", "--t", 2, bad)
    assert code == 1 and "FAIL witness=" in out


def test_verify_sqs(tmp_path, capsys):
    f = tmp_path / "s.design"
    from steinerpool.constructions import boolean_sqs
    from steinerpool.textio import write_design

    f.write_text(write_design(boolean_sqs(4)))
    code, out, _ = run(capsys, "verify", "--t", 3, f)
    assert code == 0 and "lambda=1" in out


def test_extend_and_bound(tmp_path, capsys):
    ag, ext = tmp_path / "ag.design", tmp_path / "ext.design"
    run(capsys, "construct", "--family", "affine", "--q", 3, "--e", 2, "--out", ag)
    code, out, _ = run(capsys, "extend", ag, "--out", ext)
    assert code == 0 and out == "steiner t=2 v=10 sizes=3,4 b=12\n"
    code, out, _ = run(capsys, "bound", "--design", ext, "--t", 2)
    assert out == "average=17/5 g=17/5 b=12 equality=yes\n"


def test_bound_witness(capsys):
    assert run(capsys, "bound", "--v", 10, "--t", 2, "--T", 12)[1] == "k=3 alpha=4/5 g=17/5\n"


def test_bound_expected(capsys):
    out = run(capsys, "bound", "--expected", "--v", 10, "--u", 5, "--p", 0.05)[1]
    value = float(out.strip().rsplit("=", 1)[1])
    assert value == pytest.approx(-0.23221553522675425, abs=1e-15)


def test_simulate_identity(tmp_path, capsys):
    pools = tmp_path / "id.pools"
    pools.write_text("pools u=10 v=10\n" + "".join(f"{i}\n" for i in range(10)))
    rep = tmp_path / "r.txt"
    code, _, _ = run(capsys, "simulate", "--pools", pools, "--p", 0.3, "--trials", 1000, "--seed", 1, "--out", rep)
    assert code == 0 and read_report(rep.read_text())["mean_stage2"] == "0/1"


def test_simulate_dorfman_ext10(tmp_path, capsys):
    ext, rep = tmp_path / "ext.design", tmp_path / "r.txt"
    run(capsys, "construct", "--family", "affine", "--q", 3, "--e", 2, "--extend", "--out", ext)
    code, out, _ = run(capsys, "simulate", "--design", ext, "--p", 0.05, "--trials", 100000,
                       "--seed", 42, "--out", rep)
    fields = read_report(rep.read_text())
    assert code == 0 and fields["violations"] == "0" and fields["u"] == "3"
    assert "verdict=ok" in out


def test_catalog(capsys):
    assert run(capsys, "catalog", "--rdf", 5)[1].split() == [
        "41", "61", "241", "281", "401", "421", "601", "641", "661", "701", "761", "821", "881"
    ]
    assert run(capsys, "catalog", "--rbibd-exceptions", 5)[1] == "45 345 465 645\n"
    assert run(capsys, "catalog", "--check-rdf", "--k", 5, "--max", 1000)[1] == "match\n"


def test_catalog_find_rdf(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "--find-rdf", "--k", 5, "--p", 41)
    assert code == 0 and out.startswith("cdf v=41 k=5 radical=1\n")
    assert run(capsys, "catalog", "--find-rdf", "--k", 5, "--p", 101)[0] == 2


def test_written_files_reverify(tmp_path, capsys):
    cases = [
        ["--family", "affine", "--q", 4, "--e", 2],
        ["--family", "kirkman", "--v", 15],
        ["--family", "known", "--name", "kts15", "--extend"],
        ["--family", "boolean-sqs", "--f", 2, "--extend"],
    ]
    for i, flags in enumerate(cases):
        f = tmp_path / f"{i}.design"
        assert run(capsys, "construct", *flags, "--out", f)[0] == 0
        t = 3 if "boolean-sqs" in flags else 2
        assert run(capsys, "verify", "--t", t, f, "--check", "steiner")[0] == 0


def test_module_entry_point():
    import subprocess
    import sys

    cmd = [sys.executable, "-m", "steinerpool", "bound", "--v", "9", "--t", "2", "--T", "12"]
    r = subprocess.run(cmd, capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "k=3 alpha=1/1 g=3/1\n"
