import csv
import io
import json
import math
import re
from importlib import resources

import jsonschema
import pytest

from palinwidth.analysis import SURVEY_COLUMNS
from palinwidth.cli import main

SCHEMA = json.loads(resources.files("palinwidth").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def width_json(capsys, *argv):
    code, out, _ = run(capsys, "width", *argv)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return rep


def test_width_a5_sigma(capsys):
    rep = width_json(capsys, "--group", "A5", "--genset", "sigma-class")
    assert rep["width"] == 2 and rep["palindrome_count"] == 16
    assert rep["layers"] == [1, 16, 60]
    assert rep["n_over_4"] == 2
    b = rep["bounds"]
    assert b["involution"] <= rep["width"] <= min(b["coset"], b["covering2x"])
    assert set(rep["verdicts"].values()) == {"pass"}


def test_width_a5_lemma_augmented(capsys):
    rep = width_json(capsys, "--group", "A5", "--genset", "lemma-augmented")
    assert rep["width"] == 1 and rep["palindrome_count"] == 60
    assert rep["augmentation"]["generators_out"] <= rep["augmentation"]["generators_in"] + 1


def test_width_c6(capsys):
    rep = width_json(capsys, "--group", "C6")
    assert rep["width"] == 1 and rep["order"] == 6


def test_width_timings_opt_in(capsys):
    rep = width_json(capsys, "--group", "S4", "--timings")
    assert rep["timings_ms"] and all(v >= 0 for v in rep["timings_ms"].values())
    assert width_json(capsys, "--group", "S4")["timings_ms"] == {}


def test_width_deterministic_bytes(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["width", "--group", "PSL(2,7)", "--genset", "lemma-augmented", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_width_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "width", "--group", "A4", "--format", fmt)
    assert code == 0 and "width" in out


@pytest.mark.parametrize("argv, code, kind", [
    (["width", "--group", "Q8"], 2, "invalid-input"),
    (["width", "--group", "A7", "--max-order", "100"], 3, "capacity"),
    (["width", "--group", "C6", "--genset", "sigma-class"], 2, "invalid-input"),
    (["width", "--group", "S4", "--genset", "involution-class"], 2, "invalid-input"),
    (["verify", "--group", "A5", "--max-order", "10"], 3, "capacity"),
])
def test_error_exit_codes(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == kind and payload["exit_code"] == code


def test_env_var_cap(capsys, monkeypatch):
    monkeypatch.setenv("PALINWIDTH_MAX_ORDER", "50")
    assert run(capsys, "width", "--group", "A5")[0] == 3
    assert run(capsys, "width", "--group", "S4")[0] == 0


def test_verify_exit_4_on_failure(capsys, monkeypatch):
    import palinwidth.analysis as analysis

    monkeypatch.setattr(analysis, "conjugates_in_p2", lambda *a, **k: False)
    code, out, err = run(capsys, "verify", "--group", "S4", "--samples", "50")
    assert code == 4
    assert json.loads(out)["failed"] == ["conjugates_in_p2"]
    assert "conjugates_in_p2" in err


def test_verify_a5_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--group", "A5")
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == []
    assert {v["verdict"] for v in rep["verdicts"].values()} == {"pass"}
    checks, failures = re.match(r"(\d+) checks, (\d+) failures", rep["verdicts"]["prop_normal_identities"]["detail"]).groups()
    assert int(checks) >= 1000 and failures == "0"


def test_verify_s4_gating(capsys):
    code, out, _ = run(capsys, "verify", "--group", "S4")
    v = json.loads(out)["verdicts"]
    assert code == 0
    assert v["prop_normal_identities"]["verdict"] == "pass"
    assert v["conjugates_in_p2"]["verdict"] == "pass"
    assert v["simple_width_one"]["verdict"] == "not applicable (not simple)"


def test_verify_cyclic_lemma_inapplicable(capsys):
    code, out, _ = run(capsys, "verify", "--group", "C6")
    assert code == 0
    assert json.loads(out)["verdicts"]["lemma_augment"]["verdict"] == "inapplicable (abelian)"


def test_verify_trivial_group_inconclusive_exit_0(capsys):
    code, out, err = run(capsys, "verify", "--group", "C1")
    assert code == 0 and "inconclusive" in err
    assert json.loads(out)["verdicts"]["prop_normal_identities"]["verdict"] == "inconclusive"


def survey(capsys, *argv):
    code, out, _ = run(capsys, "survey", "--format", "csv", *argv)
    assert code == 0
    reader = csv.DictReader(io.StringIO(out))
    assert reader.fieldnames == list(SURVEY_COLUMNS)
    return list(reader)


def test_survey_sigma_rows_meet_n_over_4(capsys):
    rows = survey(capsys, "--group", "A5", "--group", "A6", "--group", "A7", "--genset", "sigma-class")
    assert [r["group"] for r in rows] == ["A5", "A6", "A7"]
    for n, r in zip((5, 6, 7), rows):
        assert r["status"] == "ok"
        assert int(r["n_over_4"]) == math.ceil(n / 4)
        assert int(r["width"]) >= math.ceil(n / 4)


def test_survey_lemma_augmented_all_one(capsys):
    rows = survey(capsys, "--group", "A5", "--group", "PSL(2,7)", "--genset", "lemma-augmented")
    assert [r["width"] for r in rows] == ["1", "1"]


def test_survey_empty(capsys):
    assert survey(capsys) == []


def test_survey_row_failures_isolated(capsys):
    rows = survey(capsys, "--group", "A11", "--group", "C6", "--genset", "as-given", "--genset", "sigma-class")
    assert [(r["group"], r["genset"]) for r in rows] == [
        ("A11", "as-given"), ("A11", "sigma-class"), ("C6", "as-given"), ("C6", "sigma-class")]
    assert rows[0]["status"].startswith("error")
    assert rows[2]["status"] == "ok" and rows[2]["width"] == "1"
    assert rows[3]["status"].startswith("error")


def test_survey_json(capsys):
    code, out, _ = run(capsys, "survey", "--group", "S3")
    assert code == 0
    rows = json.loads(out)
    assert list(rows[0]) == list(SURVEY_COLUMNS)


def test_genset_file_input(capsys, tmp_path):
    f = tmp_path / "a5.txt"
    f.write_text("degree 5\nx = (1 2 3 4 5)\ny = (1 2 3)\n")
    rep = width_json(capsys, "--genset-file", str(f))
    assert rep["order"] == 60 and rep["generators"] == 2


def test_genset_file_missing(capsys, tmp_path):
    assert run(capsys, "width", "--genset-file", str(tmp_path / "nope.txt"))[0] == 2


def test_group_and_file_exclusive(capsys, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["width", "--group", "A5", "--genset-file", "x"])
    assert info.value.code == 2
