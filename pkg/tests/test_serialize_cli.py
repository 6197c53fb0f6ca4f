import json
import subprocess
import sys

import pytest

from purediff import cli
from purediff.errors import SpecValidationError
from purediff.serialize import (
    dumps_report,
    group_from_json,
    group_to_json,
    load_spec,
    report_from_json,
    report_to_json,
    run_document,
    text_report,
)

INERTIAL = {"version": 1, "case": "concrete", "field": {"field": "Qp", "p": 2}, "g": ["1", "1", "1"]}
RAMIFIED = {"case": "concrete", "field": {"field": "Qp", "p": 2}, "g": ["-2", "0", "0", "1"]}
INSEPARABLE = {"case": "concrete", "field": {"field": "Fp_u_t", "p": 2}, "g": ["-(u+t)", "0", "1"]}
PLANTED = {
    "case": "pure_defect", "n": 2, "p": 2, "group": [{"gen": "1", "div": 2}],
    "v_eta_K": {"kind": "inc_to_sup", "sup": "0"}, "v_gprime_eta": "0", "B": [2],
}
DEFECT = {
    "case": "pure_defect", "n": 3, "p": 3, "group": [{"gen": "1", "div": 3}],
    "v_eta_K": {"kind": "inc_to_sup", "sup": "-1/3"}, "v_gprime_eta": "0",
    "family": {"kind": "artin_schreier"},
}
RAMIFIED_SYNTH = {
    "case": "purely_ramified", "n": 2, "p": 3, "group": [{"gen": "1"}, {"gen": "1", "div": 2}],
    "vK": [{"gen": "1"}, {"gen": "1"}], "gamma": "(0,1/2)", "coeff_values": ["(0,1)", "inf"], "vp": "(1,0)",
}
BAD_GROUP = {"case": "pure_defect", "n": 2, "p": 2, "group": [{"gen": "x"}],
             "v_eta_K": {"kind": "cofinal"}, "v_gprime_eta": "0"}
PRECISION = {"case": "concrete", "field": {"field": "Fp_t", "p": 2, "prec": 2},
             "g": ["1/(1+t) - 1/(1+t)", "0", "1"]}
AS_CONCRETE = {"case": "concrete", "field": {"field": "Fp_t", "p": 3}, "kind": "artin_schreier", "a": "1/t"}


def _write(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- serialization ------------------------------------------------------------------


def test_group_roundtrip():
    doc = [{"gen": "1/2", "div": None}, {"gen": "1", "div": 3}]
    assert group_to_json(group_from_json(doc)) == doc


@pytest.mark.parametrize("doc", [INERTIAL, RAMIFIED, INSEPARABLE, PLANTED, DEFECT, RAMIFIED_SYNTH],
                         ids=["inertial", "ramified", "inseparable", "planted", "defect", "ramified_synth"])
def test_report_roundtrip(doc):
    rep = run_document(load_spec(doc))
    js = report_to_json(rep)
    again = report_to_json(report_from_json(json.loads(json.dumps(js))))
    assert again == js
    assert text_report(rep)


def test_report_is_deterministic():
    a = dumps_report(run_document(load_spec(DEFECT)))
    b = dumps_report(run_document(load_spec(DEFECT)))
    assert a == b


@pytest.mark.parametrize(
    "doc",
    [
        BAD_GROUP,
        {**INERTIAL, "extra": 1},
        {**INERTIAL, "version": 2},
        {"case": "concrete", "field": {"field": "Qp", "p": 4}, "g": ["1", "1", "1"]},
        {"case": "concrete", "field": {"field": "Qp", "p": 2}, "g": ["1", "1", "2"]},
        {**PLANTED, "v_eta_K": {"kind": "finite_max", "values": ["0"]}},
    ],
    ids=["bad_group", "unknown_field", "version", "non_prime", "non_monic", "defect_with_max"],
)
def test_invalid_specs(doc):
    with pytest.raises(SpecValidationError):
        run_document(load_spec(doc))


def test_json_fields():
    js = report_to_json(run_document(load_spec(INERTIAL)))
    assert js["is_zero"] is True and js["fin_pres"] is True and js["inconsistent"] is False
    assert js["alpha"] == {"form": "closed_at", "s": "0", "delta_suffix": 2}
    js = report_to_json(run_document(load_spec(RAMIFIED)))
    assert js["ann"] == {"form": "oracle_only", "value": "2/3"}
    js = report_to_json(run_document(load_spec(INSEPARABLE)))
    assert js["beta"] == {"form": "top"} and js["ann"] == {"form": "empty"} and js["B"] == [2]


# -- command line ----------------------------------------------------------------------


def test_cli_report_ok(tmp_path, capsys):
    code, out, _ = _run(capsys, "report", _write(tmp_path, INERTIAL))
    assert code == 0 and json.loads(out)["is_zero"] is True


def test_cli_report_text(tmp_path, capsys):
    code, out, _ = _run(capsys, "report", _write(tmp_path, INERTIAL), "--format", "text")
    assert code == 0 and "Omega = (0):   yes" in out


def test_cli_validation_error(tmp_path, capsys):
    code, _, err = _run(capsys, "report", _write(tmp_path, BAD_GROUP))
    assert code == 2 and "error" in err
    assert _run(capsys, "report", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    assert _run(capsys, "report", str(bad))[0] == 2


def test_cli_inconsistent(tmp_path, capsys):
    code, out, _ = _run(capsys, "report", _write(tmp_path, PLANTED))
    assert code == 3 and json.loads(out)["inconsistent"] is True


def test_cli_precision_exhausted(tmp_path, capsys):
    code, _, err = _run(capsys, "report", _write(tmp_path, PRECISION))
    assert code == 4 and "precision" in err


def test_cli_oracle_different(tmp_path, capsys):
    code, out, _ = _run(capsys, "oracle", "different", _write(tmp_path, RAMIFIED))
    assert code == 0 and json.loads(out)["different"] == "2/3"
    code, out, _ = _run(capsys, "oracle", "different", _write(tmp_path, INSEPARABLE))
    assert json.loads(out)["different"] == "inf"
    code, out, _ = _run(capsys, "oracle", "different", _write(tmp_path, AS_CONCRETE))
    assert code == 0 and json.loads(out)["different"] == "4/3"
    assert _run(capsys, "oracle", "different", _write(tmp_path, DEFECT))[0] == 2


def test_cli_selftest(capsys):
    code, out, _ = _run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_cli_selftest_only_segments(capsys):
    code, out, _ = _run(capsys, "selftest", "--only", "segments")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2 and lines[1].startswith("segments")


def test_cli_selftest_zero_window_is_nonzero(capsys):
    code, out, _ = _run(capsys, "selftest", "--window-bound", "0")
    assert code != 0 and "FAIL" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "purediff", "report", _write(tmp_path, INERTIAL)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"is_zero": true' in proc.stdout


def test_cli_oracle_different_reports_generator(tmp_path, capsys):
    doc = {"case": "concrete", "field": {"field": "Qp", "p": 2}, "g": ["-5", "0", "1"]}
    code, out, _ = _run(capsys, "oracle", "different", _write(tmp_path, doc))
    js = json.loads(out)
    assert code == 0 and js["different"] == "0" and js["kind"] == "inertial" and "generator" in js
    code, out, _ = _run(capsys, "report", _write(tmp_path, doc))
    assert code == 0 and json.loads(out)["is_zero"] is True
