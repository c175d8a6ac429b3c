import csv
import io
import json
import subprocess
import sys

import pytest

from signsum import (
    CheckSpec, RhoQuery, coeff_h4, parse_group, parse_subset, rho, rho_s_witness, run_check, union_fold,
)
from signsum.bounds import bound_signed_field
from signsum.cli import factorize, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sumset_examples(capsys):
    code, out, _ = run(capsys, "sumset", "-g", "Z17", "-A", "1,2,3,4,5", "-k", "restricted-signed", "-H", "2")
    assert code == 0 and out.strip().endswith("size: 16")
    _, out, _ = run(capsys, "sumset", "-g", "Z", "-A", "1,2", "-k", "signed", "-H", "2")
    assert out.splitlines()[0] == "{-4,-3,-2,-1,1,2,3,4}"
    _, out, _ = run(capsys, "sumset", "-g", "Z5", "-A", "1", "-k", "plain", "-H", "0")
    assert out.splitlines()[0] == "{0}"


def test_sumset_json_matches_library(capsys):
    _, out, _ = run(capsys, "sumset", "-g", "Z2xZ4", "-A", "(0,1),(1,3)", "-k", "signed", "-H", "[0,2]",
                    "--format", "json")
    rec = json.loads(out)
    g = parse_group("Z2xZ4")
    S = union_fold(parse_subset(g, "(0,1),(1,3)"), (0, 1, 2), "signed")
    assert rec["size"] == len(S) and rec["sumset"] == "{" + S.to_literal() + "}"
    assert list(rec) == sorted(rec)


def test_rho_matches_library(capsys):
    code, out, _ = run(capsys, "rho", "-g", "Z7", "-m", "3", "-k", "signed", "-H", "2", "--filter", "sdeg=1",
                       "--format", "json")
    rec = json.loads(out)
    r = rho(RhoQuery(parse_group("Z7"), 3, 2, "signed", "sdeg=1"))
    assert code == 0 and rec["value"] == r.value == 7
    assert rec["witness"] == "{" + r.witness.to_literal() + "}"
    assert "workers" not in json.dumps(rec)


def test_rho_output_independent_of_workers(capsys):
    args = ["rho", "-g", "Z11", "-m", "4", "-H", "3", "--format", "json"]
    _, one, _ = run(capsys, *args, "--workers", "1")
    _, two, _ = run(capsys, *args, "--workers", "2")
    assert one == two


def test_rho_envelope_and_bad_input(capsys):
    code, _, err = run(capsys, "rho", "-g", "Z60", "-m", "8")
    assert code == 2 and "2558620845" in err
    code, _, err = run(capsys, "sumset", "-g", "Z5", "-A", "1,x")
    assert code == 2 and "position 2" in err
    code, _, err = run(capsys, "rho", "-g", "Z5", "-m", "2", "--workers", "0")
    assert code == 2
    code, _, err = run(capsys, "rho", "-g", "Z6", "-m", "6", "--filter", "asym")
    assert code == 2 and "no 6-subset" in err


def test_coeff_and_bound(capsys):
    _, out, _ = run(capsys, "coeff", "--h", "4", "--k", "2")
    assert out.strip() == "7440 = 2^4 * 3 * 5 * 31"
    code, out, _ = run(capsys, "coeff", "--h", "3", "--k", "3", "--oracle", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["value"] == rec["oracle"]
    _, out, _ = run(capsys, "bound", "--theorem", "signed-field", "--k", "3", "--p", "13", "--h", "4",
                    "--format", "json")
    rec = json.loads(out)
    assert rec["value"] == bound_signed_field(3, 13, 4).value and rec["branch"] == "l=1"
    _, out, _ = run(capsys, "bound", "--theorem", "signed-field", "--k", "3", "--p", "17", "--h", "3")
    assert out.startswith("inapplicable")
    _, out, _ = run(capsys, "bound", "--theorem", "restricted-classes", "--m", "4", "--h", "2", "--format", "json")
    assert json.loads(out)["value"] == {"asym": 15, "nsym": 7, "sym": 5}
    code, _, err = run(capsys, "bound", "--theorem", "rho-s", "--m", "3")
    assert code == 2 and "--h" in err


def test_factorize():
    assert factorize(coeff_h4(2)) == [(2, 4), (3, 1), (5, 1), (31, 1)]
    assert factorize(97) == [(97, 1)]


def test_construct(capsys):
    _, out, _ = run(capsys, "construct", "--recipe", "rho_s_witness", "-g", "Z11", "-m", "3", "--s", "2",
                    "--format", "json")
    assert json.loads(out)["set"] == "{" + rho_s_witness(parse_group("Z11"), 3, 2).to_literal() + "}"
    _, out, _ = run(capsys, "construct", "--recipe", "odd_spaced_ap", "--d", "2", "--m", "3")
    assert out.splitlines()[0] == "{2,6,10}"
    _, out, _ = run(capsys, "construct", "--recipe", "symmetrize", "-g", "Z", "-A", "-1,1,2,3", "-H", "2")
    assert out.splitlines()[:2] == ["{-1,1,2,3}", "{-3,-1,1,3}"]
    code, _, _ = run(capsys, "construct", "--recipe", "subgroup_interval", "-g", "Z6", "-m", "3")
    assert code == 2


def test_verify_json_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--check", "EX_Z17", "--check", "T_FIELD_H2", "--format", "json",
                       "--no-timing")
    rec = json.loads(out)
    assert code == 0 and rec["passed"]
    lib = run_check(CheckSpec("T_FIELD_H2")).as_dict(timing=False)
    assert rec["reports"][1] == lib
    for key in ("id", "anchor", "cells", "failures", "elapsed_ms"):
        assert key in rec["reports"][0]
    code, out, _ = run(capsys, "verify", "--check", "C_INT_2FOLD", "--grid", '{"literal": true}')
    assert code == 1 and out.startswith("FAIL")
    code, _, err = run(capsys, "verify", "--check", "NOPE")
    assert code == 2 and "NOPE" in err


def test_verify_is_byte_identical(capsys):
    args = ["verify", "--check", "T_RSS_FIELD", "--grid", '{"fields": ["F11"], "count": 30}', "--format", "json",
            "--no-timing"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--workers", "2")
    assert a == b


def test_verify_csv(capsys):
    _, out, _ = run(capsys, "verify", "--check", "EX_Z41", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["id"] == "EX_Z41" and rows[0]["passed"] == "PASS"


def test_list_checks(capsys):
    _, out, _ = run(capsys, "list-checks", "--format", "json")
    rows = json.loads(out)
    assert len(rows) >= 24 and all(r["anchor"] for r in rows)


def test_sweep(tmp_path, capsys):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({"queries": [
        {"type": "rho", "group": ["Z5", "Z7"], "m": [2, 3], "H": "2", "kind": "signed", "filter": "sdeg=1"},
        {"type": "sumset", "group": "Z", "A": "1,2", "kind": "signed", "H": "2"},
        {"type": "rho", "group": "Z6", "m": 6, "H": "2", "filter": "asym"},
    ]}))
    code, out, _ = run(capsys, "sweep", str(cfg))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert rows[0]["group"] == "Z5" and rows[0]["m"] == "2"
    r = rho(RhoQuery(parse_group("Z7"), 3, 2, "signed", "sdeg=1"))
    assert rows[3]["value"] == str(r.value) and rows[3]["witness"] == "{" + r.witness.to_literal() + "}"
    assert '"{-4,-3,-2,-1,1,2,3,4}"' in out
    assert rows[5]["value"] == "empty"


def test_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("SIGNSUM_WORKERS", "zero")
    code, _, err = run(capsys, "rho", "-g", "Z5", "-m", "2")
    assert code == 2 and "SIGNSUM_WORKERS" in err
    monkeypatch.setenv("SIGNSUM_WORKERS", "2")
    code, _, _ = run(capsys, "rho", "-g", "Z5", "-m", "2")
    assert code == 0


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "signsum.cli", "coeff", "--h", "3", "--k", "2"],
                         capture_output=True, text=True, check=True).stdout
    assert out.startswith("540")
