import csv
import io
import json

import pytest

from ncline.cli import main
from ncline.field_tower import FieldTowerInstance, get_instance
from ncline.verification import run_suites


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "--out", str(tmp_path))
    assert code == 0
    assert "classification: NonAlgebraic" in out
    assert "t -> t - 2" in out
    report = json.loads((tmp_path / "classify.json").read_text())
    assert report["rational-function"]["classification"] == "NonAlgebraic"
    assert report["biquadratic"]["classification"] != "NonAlgebraic"


def test_hilbert_rows(capsys):
    code, out, _ = run(capsys, "hilbert", "--instance", "biquadratic", "--nmax", "6")
    assert code == 0
    rows = {int(r["n"]): r for r in csv.DictReader(io.StringIO(out))}
    assert set(rows) == set(range(7))
    picked = lambda r: tuple(int(r[k]) for k in ("dim_T", "dim_R", "dim_A", "dim_B", "dim_gr_Lambda00"))  # noqa: E731
    assert picked(rows[0]) == (1, 0, 1, 1, 1)
    assert picked(rows[4]) == (16, 11, 5, 2, 2)
    assert picked(rows[6]) == (64, 57, 7, 2, 2)
    assert all(r["status"] == "ok" for r in rows.values())


@pytest.mark.parametrize("argv", [
    ["hilbert", "--instance", "quintic"],
    ["hilbert", "--nmax", "3"],
    ["verify", "--suite", "nonsense"],
    ["probe", "center", "--instance", "rational-function"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_rejects_unknown_verb():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_config_file(capsys, tmp_path):
    config = tmp_path / "run.ini"
    config.write_text("[ncline]\ninstance = d4-quartic\nnmax = 4\nseed = 5\n")
    code, out, _ = run(capsys, "hilbert", "--config", str(config))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["instance"] for r in rows} == {"d4-quartic"}
    assert len(rows) == 5
    bad = tmp_path / "bad.ini"
    bad.write_text("[ncline]\ncolour = blue\n")
    assert run(capsys, "hilbert", "--config", str(bad))[0] == 2


def test_command_line_overrides_config(capsys, tmp_path):
    config = tmp_path / "run.ini"
    config.write_text("[ncline]\ninstance = d4-quartic\nnmax = 4\n")
    code, out, _ = run(capsys, "hilbert", "--config", str(config), "--nmax", "5")
    assert code == 0
    assert len(list(csv.DictReader(io.StringIO(out)))) == 6


def test_quick_verify_is_reproducible(capsys, tmp_path):
    argv = ["verify", "--instance", "rational-function", "--nmax", "4", "--seed", "3"]
    code, first, _ = run(capsys, *argv, "--out", str(tmp_path / "a"))
    assert code == 0
    code, second, _ = run(capsys, *argv, "--out", str(tmp_path / "b"))
    assert code == 0
    assert first == second
    assert (tmp_path / "a" / "verify.json").read_bytes() == (tmp_path / "b" / "verify.json").read_bytes()
    report = json.loads(first)
    assert report["ok"] and report["seed"] == 3
    suites = report["instances"]["rational-function"]["suites"]
    assert list(suites) == sorted(suites)
    assert all(not s["failed"] for s in suites.values())


def test_simplicity_probe_is_reproducible(capsys, tmp_path):
    argv = ["probe", "simplicity", "--instance", "rational-function", "--depth", "2", "--level", "3",
            "--seed", "4"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert first == second
    [entry] = json.loads(first)
    assert entry["probe"] == "simplicity"
    assert entry["classification"] == "NonAlgebraic"
    assert "no truncation bound" in entry["parameters"]["note"]


def test_center_probe_output(capsys):
    code, out, _ = run(capsys, "probe", "center", "--instance", "biquadratic", "--center-level", "0")
    assert code == 0
    [entry] = json.loads(out)
    assert entry["verdict"]["levels"]["0"]["contains_common_subfield"]


def test_broken_instance_fails_the_field_suite():
    bq = get_instance("biquadratic")
    broken = FieldTowerInstance(
        key="broken", field=bq.field, involutions=(bq.involutions[0], bq.involutions[0]),
        anti_invariants=bq.w, subfield_generators=bq.subfield_generators, description="tau1 = tau0")
    [result] = run_suites(broken, 4, 0, ["field_tower"])
    assert not result.ok
    assert result.failed
