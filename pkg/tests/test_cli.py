import json

import pytest

from k3cert import cli


def run(argv):
    return cli.main(argv)


def test_reduce_trivial(capsys):
    assert run(["reduce", "--class", "0,0,1"]) == 0
    out = capsys.readouterr().out
    assert "wall word []" in out


def test_reduce_fev_basis(capsys):
    # leading-minus values need the = form so argparse does not read a flag
    assert run(["reduce", "--class=-1,1,0", "--basis", "fev"]) == 0
    out = capsys.readouterr().out
    assert "(0, 0, 1)" in out


def test_reduce_nontrivial(capsys):
    # the mirror image of H across the first wall reduces in one reflection
    assert run(["reduce", "--class", "13,-14,6"]) == 0
    out = capsys.readouterr().out
    assert "wall word [1]" in out and "(1, 0, 0)" in out


def test_reduce_malformed_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["reduce", "--class", "x,y"])
    assert exc.value.code == 2


def test_orbit(capsys):
    assert run(["orbit", "--len", "3"]) == 0
    assert "22 distinct classes" in capsys.readouterr().out


def test_enumerate_q(capsys):
    assert run(["enumerate", "q"]) == 0
    out = capsys.readouterr().out
    assert "(2, -1, -1)" in out and "very_ample" in out


def test_enumerate_sections(capsys):
    assert run(["enumerate", "sections", "--n-bound", "2"]) == 0
    out = capsys.readouterr().out
    assert "10 n^2 + 0 n + -1" in out


def test_verify_quartic_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert run(["verify", "quartic", "--json", str(path)]) == 0
    obj = json.loads(path.read_text())
    assert len(obj["items"]) >= 10
    statuses = {it["status"] for it in obj["items"]}
    assert statuses <= {"pass", "discrepancy"}
    assert obj["summary"]["fail"] == 0
    ids = [it["id"] for it in obj["items"]]
    assert ids == sorted(ids)


def test_verify_pell_single_ell(tmp_path, capsys):
    path = tmp_path / "pell.json"
    assert run(["verify", "pell", "--ell", "6", "--k-bound", "2",
                "--json", str(path)]) == 0
    obj = json.loads(path.read_text())
    item = next(it for it in obj["items"] if it["id"] == "lemma-4.6-ell-6")
    assert "-143" in item["details"]  # g0 matrix shown


def test_verify_pell_bad_ell_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "pell", "--ell", "3"])
    assert exc.value.code == 2


def test_verify_pell_bad_range_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "pell", "--ell-range", "9..6"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        run(["verify", "pell", "--ell-range", "abc"])


def test_verify_weierstrass(capsys):
    assert run(["verify", "weierstrass"]) == 0
    out = capsys.readouterr().out
    assert "thm-2.2-inverse" in out
