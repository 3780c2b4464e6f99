from __future__ import annotations

import json
import random
import subprocess
import sys

import pytest

from homotransfer import interchange as ix
from homotransfer.cli import cmd_suite, cmd_transfer, cmd_verify, main
from homotransfer.factory import gaussian_contraction, noisy_sdr, random_dga
from homotransfer.perturbation import Contraction, is_contraction


def fixture(name):
    return str(ix.fixture_path(name))


def run(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("name", ix.FIXTURES)
@pytest.mark.parametrize("kind", ["dga", "sdr", "complex"])
def test_verify_fixtures(capsys, name, kind):
    code, report = run(capsys, "verify", fixture(name), "--kind", kind)
    assert code == 0 and report["passed"]
    assert all(c["defects"] == 0 for c in report["checks"])


def test_flipped_sign_in_d_fails(tmp_path, capsys):
    obj = json.loads(ix.fixture_path("torus").read_text())
    entries = obj["maps"]["d_D"]["entries"]
    hit = next(e for e in entries if "-" in e["from"])  # an edge -> triangle entry
    hit["coeff"] = str(-int(hit["coeff"]))
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, report = run(capsys, "verify", str(path), "--kind", "dga")
    assert code == 1
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert "d o d = 0" in failed


def test_ainfty_arity_beyond_stored_is_input_error(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert main(["transfer", fixture("massey"), "--max-arity", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    code, report = run(capsys, "verify", str(out), "--kind", "ainfty", "--max-arity", "3")
    assert code == 0 and report["parameters"]["max_arity"] == 3
    code, report = run(capsys, "verify", str(out), "--kind", "ainfty", "--max-arity", "5")
    assert code == 2 and "exceeds stored arity" in report["error"]


def test_massey_transfer_flags_m3(capsys):
    code, report = run(capsys, "transfer", fixture("massey"), "--max-arity", "3")
    assert code == 0
    assert report["notes"]["m3 nonzero"] is True
    names = {c["name"] for c in report["checks"]}
    assert {"stasheff[3]", "r_inf o alpha_inf = 1", "delta(H_inf) = 1 - alpha_inf r_inf"} <= names


def test_identity_contraction_output_equals_input(tmp_path):
    doc = ix.load_fixture("circle")
    D, mu = ix.read_dga(doc)
    src = tmp_path / "id.json"
    ix.sdr_document(Contraction.identity(D), mu).write(src)
    out = tmp_path / "out.json"
    report = cmd_transfer(str(src), 3, str(out))
    assert report.passed
    res = ix.load(out)
    assert res.map("m1") == D.d and res.map("m2") == mu and res.map("m3").is_zero()


def test_arity_one_transfer(tmp_path):
    out = tmp_path / "out.json"
    report = cmd_transfer(fixture("torus"), 1, str(out))
    assert report.passed
    res = ix.load(out)
    assert "m1" in res.maps and "m2" not in res.maps
    assert res.map("m1") == ix.read_sdr(res).C.d


def test_non_contraction_needs_repair(tmp_path, capsys):
    rng = random.Random(5)
    for _ in range(50):
        D, mu = random_dga(rng, 6)
        datum = noisy_sdr(rng, gaussian_contraction(D))
        if not is_contraction(datum):
            break
    path = tmp_path / "sdr.json"
    ix.sdr_document(datum, mu).write(path)
    code, report = run(capsys, "transfer", str(path))
    assert code == 1 and "--repair" in report["error"]
    code, report = run(capsys, "transfer", str(path), "--repair")
    assert code == 0 and report["notes"]["repaired"]


def test_suite_runs_and_is_deterministic(capsys):
    code, report = run(capsys, "suite", "--seed", "1", "--count", "10", "--max-arity", "4")
    assert code == 0 and len(report["items"]) == 10
    again = cmd_suite(1, 10, 4).to_json()
    assert again["items"] == report["items"]


def test_empty_suite(capsys):
    code, report = run(capsys, "suite", "--count", "0")
    assert code == 0 and report["items"] == [] and report["passed"]


def test_negative_count_is_input_error(capsys):
    code, report = run(capsys, "suite", "--count", "-1")
    assert code == 2


def test_parse_error_exit_code_and_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"field": "Q", "spaces": }')
    code, report = run(capsys, "verify", str(path), "--kind", "complex")
    assert code == 2 and "line 1 column" in report["error"]


def test_field_mismatch(capsys):
    code, report = run(capsys, "verify", fixture("circle"), "--kind", "dga", "--field", "Fp:5")
    assert code == 2 and "over Q" in report["error"]


def test_text_report():
    report = cmd_verify(fixture("interval"), "dga")
    text = report.render("text")
    assert text.startswith("verify: PASS") and "PASS d o d = 0" in text


def test_reports_are_stable_modulo_timing():
    a = cmd_transfer(fixture("circle"), 3).to_json()
    b = cmd_transfer(fixture("circle"), 3).to_json()
    a.pop("timing_seconds"), b.pop("timing_seconds")
    assert json.dumps(a) == json.dumps(b)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "homotransfer", "verify", fixture("interval"), "--kind", "sdr"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "verify: PASS" in proc.stdout
