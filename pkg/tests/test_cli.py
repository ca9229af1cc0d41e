import json

import pytest

from hermhecke.cli import main
from hermhecke.lattice import HermitianLattice


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, json.loads(out) if out.strip().startswith(("{", "[")) else out


def test_fixtures_check(capsys):
    rc, out = run(capsys, "fixtures", "check")
    assert rc == 0
    assert out["ok"] is True


def test_arthur_verify_table(capsys):
    rc, out = run(capsys, "arthur", "verify-table")
    assert rc == 0
    assert all(v == "match" for v in out["t2"].values())


def test_arthur_eval(capsys):
    rc, out = run(capsys, "arthur", "eval", "D11 + [10]", "--prime", "2")
    assert rc == 0
    assert out["value"] == "1395945"


def test_arthur_eval_dimension_error(capsys):
    rc = main(["arthur", "eval", "D11", "--prime", "2"])
    assert rc == 2


def test_arthur_eval_unsupported(capsys):
    rc = main(["arthur", "eval", "D11 + D9,1 + 3D5[3]", "--prime", "3"])
    assert rc == 3


def test_arthur_congruence(capsys):
    rc, out = run(capsys, "arthur", "congruence", "2", "1", "691")
    assert rc == 0


def test_congruences_deterministic(capsys):
    rc1, out1 = run(capsys, "congruences", "--qmin", "11")
    rc2, out2 = run(capsys, "congruences", "--qmin", "11")
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert {(r["i"] if isinstance(r["i"], int) else tuple(r["i"]),
             r["j"] if isinstance(r["j"], int) else tuple(r["j"]),
             r["q"]) for r in out1} >= {(2, 1, 691), (16, 11, 11)}


def test_eigen(capsys):
    rc, out = run(capsys, "eigen")
    assert rc == 0
    assert len(out["rows"]) == 20


def test_hecke_fixture(capsys):
    rc, out = run(capsys, "hecke", "--method", "fixture", "--fixture", "t2-5")
    assert rc == 0
    assert len(out["rows"]) == 5


def test_theta_cmd(tmp_path, capsys):
    p = tmp_path / "l.json"
    HermitianLattice.standard(2).save(p)
    rc, out = run(capsys, "theta", str(p), "--precision", "3")
    assert rc == 0
    assert out["coefficients"][0] == 1


def test_neighbours_count(tmp_path, capsys):
    p = tmp_path / "l.json"
    HermitianLattice.standard(3).save(p)
    rc, out = run(capsys, "neighbours", str(p), "--prime", "2", "--count-only")
    assert rc == 0
    assert out["count"] == 18


def test_genus_requires_allow_long(tmp_path, capsys):
    p = tmp_path / "l.json"
    HermitianLattice.standard(12).save(p)
    rc = main(["genus", str(p), "--prime", "2"])
    assert rc == 3
