import json
import subprocess
import sys

import pytest

from pargroupoid.br import parse_expansion
from pargroupoid.cli import main
from pargroupoid.fixtures import fixture
from pargroupoid.groupoid import groupoid_to_json, parse_groupoid, serialize_groupoid
from pargroupoid.partial_rep import default_trivial_rep, rep_from_regular, rep_to_json


@pytest.fixture
def ex1_file(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(serialize_groupoid(fixture("ex1")))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_emit_fixture_roundtrip(capsys, tmp_path):
    code, data, _ = run(capsys, "emit-fixture", "pair2")
    assert code == 0
    assert parse_groupoid(json.dumps(data)) == fixture("pair2")
    out = tmp_path / "z3.json"
    assert main(["emit-fixture", "z3", "-o", str(out)]) == 0
    assert parse_groupoid(out.read_text()) == fixture("z3")
    code, _, err = run(capsys, "emit-fixture", "nope")
    assert code == 2 and "ex1" in err


def test_validate(capsys, ex1_file, tmp_path):
    code, data, _ = run(capsys, "validate", ex1_file)
    assert code == 0 and data["ok"] and data["violations"] == []

    g = groupoid_to_json(fixture("ex1"))
    g["comp"] = [[2, 3, 1] if t[:2] == [2, 3] else t for t in g["comp"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(g))
    code, data, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert any(v["axiom"] == "inverse" and v["witnesses"] == ["g"] for v in data["violations"])


def test_malformed_inputs(capsys, tmp_path):
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert run(capsys, "validate", str(garbage))[0] == 2
    assert run(capsys, "dims", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "verify", str(garbage), "--field", "Fp:4")[0] == 2


def test_dims(capsys, ex1_file):
    code, data, _ = run(capsys, "dims", ex1_file)
    assert code == 0
    assert data == {"arrows": 6, "objects": 3, "br_count_closed_form": 9, "br_count_enumerated": 9}


def test_expand_roundtrip(capsys, ex1_file):
    code, data, _ = run(capsys, "expand", ex1_file)
    assert code == 0
    base, labels = parse_expansion(json.dumps(data))
    assert base.n_arrows == 9 and base.n_objects == 6
    assert labels[4] == ("g", ("f", "g^-1"))


def test_cap_exceeded(capsys, ex1_file):
    code, _, err = run(capsys, "expand", ex1_file, "--cap", "5")
    assert code == 3 and "9" in err
    assert run(capsys, "verify", ex1_file, "--cap", "5")[0] == 3


@pytest.mark.parametrize("field", ["Q", "Fp:2", "Fp:5"])
def test_verify(capsys, ex1_file, field):
    code, data, _ = run(capsys, "verify", ex1_file, "--field", field)
    assert code == 0
    assert data["passed"] and data["field"] == field
    assert data["br_count"] == data["normal_form_rank"] == 9
    assert [c["br_count"] for c in data["components"]] == [6, 3]


def test_verify_short_words_fail(capsys, ex1_file):
    code, data, _ = run(capsys, "verify", ex1_file, "--max-len", "1")
    assert code == 1 and not data["passed"]


def test_iso_table(capsys, ex1_file):
    code, data, _ = run(capsys, "iso-table", ex1_file)
    assert code == 0
    assert data["labels"] == "monomials"
    assert len(data["basis"]) == 9
    assert data["basis"][8]["label"] == "[h][h]"


def test_rep_check(capsys, tmp_path, ex1_file):
    ok = tmp_path / "ok.json"
    ok.write_text(json.dumps(rep_to_json(rep_from_regular(fixture("ex1")))))
    code, data, _ = run(capsys, "rep-check", str(ok))
    assert code == 0 and data["ok"]

    rep = default_trivial_rep(fixture("ex1"))
    data = rep_to_json(rep, groupoid_ref="ex1.json")
    data["images"][2][0][1] = "1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, report, _ = run(capsys, "rep-check", str(bad))
    assert code == 1 and not report["ok"]

    data["images"] = data["images"][:3]
    bad.write_text(json.dumps(data))
    assert run(capsys, "rep-check", str(bad))[0] == 2


def test_fuzz(capsys, ex1_file):
    code, data, _ = run(capsys, "fuzz", ex1_file, "--seed", "3", "--count", "25")
    assert code == 0
    assert data == {"mutations": 25, "seed": 3, "falsely_accepted": []}


def test_module_entry_point(ex1_file):
    proc = subprocess.run([sys.executable, "-m", "pargroupoid", "dims", ex1_file],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["br_count_enumerated"] == 9
