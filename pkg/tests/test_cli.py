"""Tests for the barc command line."""

import argparse
import json

import pytest

from cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, parse_eps_grid, parse_T_grid
from models.barcode import Barcode
from utils.formats import format_barcode, parse_barcode, read_barcode


def _write(path, B):
    path.write_text(format_barcode(B))
    return str(path)


def _last_line(text):
    return text.strip().splitlines()[-1]


def test_parse_T_grid():
    """Test a:b:n gives n evenly spaced values."""
    assert parse_T_grid("1:3:3") == [1.0, 2.0, 3.0]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_T_grid("3:1:3")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_T_grid("1:3")


def test_parse_eps_grid():
    """Test a:b:n gives a decreasing geometric grid."""
    grid = parse_eps_grid("0.8:0.1:4")
    assert grid == pytest.approx([0.8, 0.4, 0.2, 0.1])
    with pytest.raises(argparse.ArgumentTypeError):
        parse_eps_grid("0.1:0.8:4")


def test_dist_identical_files(tmp_path, capsys):
    """Test the distance between identical barcodes prints 0."""
    B = Barcode.from_intervals([(0.0, float("inf")), (1.0, 2.0)])
    a = _write(tmp_path / "a.barcode", B)
    b = _write(tmp_path / "b.barcode", B)
    assert main(["dist", a, b]) == EXIT_OK
    assert _last_line(capsys.readouterr().out) == "0"


def test_dist_json(tmp_path, capsys):
    """Test the JSON form carries the header and the distance."""
    a = _write(tmp_path / "a.barcode", Barcode.from_intervals([(0.0, 2.0)]))
    b = _write(tmp_path / "b.barcode", Barcode.from_intervals([(0.0, 1.0)]))
    assert main(["dist", a, b, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["bottleneck"] == "1"
    assert payload["header"]["command"] == "dist"


def test_dist_unreadable_file(tmp_path, capsys):
    """Test a missing input exits with 2 and an error on stderr."""
    a = _write(tmp_path / "a.barcode", Barcode.empty())
    assert main(["dist", a, str(tmp_path / "missing.barcode")]) == EXIT_USAGE
    assert "missing.barcode" in capsys.readouterr().err


def test_bad_argument_exits_2():
    """Test a malformed grid is a usage error."""
    with pytest.raises(SystemExit) as exc:
        main(["entropy", "x.barcode", "--eps", "0.1", "--T-grid", "bad"])
    assert exc.value.code == 2


def test_check_equivalence_passes(capsys):
    """Test the equivalence suite passes with seed 7."""
    assert main(["check", "--suite", "equivalence", "--seed", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "equivalence\t50\t" in out
    assert "FAIL" not in out


def test_check_json_report(capsys):
    """Test the JSON report lists every requested suite."""
    code = main(
        ["check", "--suite", "reparam", "--suite", "short_bars", "--instances", "5",
         "--format", "json"]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert payload["passed"] is True
    assert [s["name"] for s in payload["suites"]] == ["reparam", "short_bars"]


def test_check_isometry_beyond_table_exits_2(capsys):
    """Test too many isometry instances is reported as bad parameters."""
    assert main(["check", "--suite", "isometry", "--instances", "100000"]) == EXIT_USAGE
    assert "isometry" in capsys.readouterr().err


def test_gen_complex_then_build(tmp_path, capsys):
    """Test a generated rational complex builds to a barcode on stdout."""
    path = tmp_path / "c.fcx"
    assert main(["gen", "complex", "--dim", "5", "--seed", "1", "--mode", "rational",
                 "--out", str(path)]) == EXIT_OK
    assert main(["build", "--complex", str(path), "--mode", "rational"]) == EXIT_OK
    B = parse_barcode(capsys.readouterr().out)
    assert len(B) >= 1


def test_gen_spectrum_is_reproducible(tmp_path):
    """Test identical seeds give byte-identical spectrum files."""
    path = tmp_path / "spectrum.json"
    args = ["gen", "spectrum", "--kind", "hyperbolic", "--rate", "0.3", "--T-max", "15",
            "--seed", "3", "--out", str(path)]
    assert main(args) == EXIT_OK
    first = path.read_text()
    assert main(args) == EXIT_OK
    assert path.read_text() == first


def test_gen_spectrum_missing_parameter(capsys):
    """Test a hyperbolic spectrum without --T-max is a usage error."""
    assert main(["gen", "spectrum", "--kind", "hyperbolic", "--rate", "0.3"]) == EXIT_USAGE


def test_build_model_and_entropy(tmp_path):
    """Test the spectrum -> B_SH, B(H), B(H_delta) -> entropy pipeline."""
    spectrum = tmp_path / "spectrum.json"
    model = tmp_path / "model"
    assert main(["gen", "spectrum", "--kind", "quasiperiodic", "--base-periods", "1,1.5",
                 "--T-max", "10", "--out", str(spectrum)]) == EXIT_OK
    assert main(["build", "--spectrum", str(spectrum), "--policy", "separated",
                 "--slope", "10.3", "--delta", "0.05", "--out", str(model)]) == EXIT_OK
    for name in ("sh", "bh", "bh_delta"):
        assert (model / f"{name}.barcode").exists()
    sh = read_barcode(model / "sh.barcode")
    assert sh.infinite_count >= 1

    out = tmp_path / "entropy"
    assert main(["entropy", str(model / "sh.barcode"), "--eps-grid", "0.4:0.1:3",
                 "--T-grid", "1:10:10", "--out", str(out)]) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == [
        "series_0.tsv", "series_1.tsv", "series_2.tsv", "summary.txt"
    ]
    summary = (out / "summary.txt").read_text()
    assert "# command=entropy" in summary
    assert "\nentropy\t" in summary


def test_build_bh_requires_out_dir(tmp_path):
    """Test building B(H) without --out is a usage error."""
    spectrum = tmp_path / "spectrum.json"
    main(["gen", "spectrum", "--kind", "quasiperiodic", "--base-periods", "1",
          "--T-max", "5", "--out", str(spectrum)])
    assert main(["build", "--spectrum", str(spectrum), "--slope", "5.5"]) == EXIT_USAGE


def test_build_hypothesis_violation_exits_1(tmp_path):
    """Test a Morse perturbation too large for the action spacing exits with 1."""
    spectrum = tmp_path / "spectrum.json"
    main(["gen", "spectrum", "--kind", "quasiperiodic", "--base-periods", "1",
          "--T-max", "5", "--out", str(spectrum)])
    code = main(["build", "--spectrum", str(spectrum), "--slope", "5.5", "--delta", "2",
                 "--out", str(tmp_path / "model")])
    assert code == EXIT_FAILED


@pytest.mark.parametrize("argv", [
    ["dist", "a.barcode", "b.barcode"],
    ["entropy", "a.barcode", "--eps", "0.1"],
    ["check", "--suite", "isometry"],
])
def test_mode_only_accepted_by_gen_and_build(argv):
    """Test commands without an arithmetic choice reject --mode."""
    with pytest.raises(SystemExit) as exc:
        main([*argv, "--mode", "rational"])
    assert exc.value.code == 2


def test_build_rejects_periods_within_tolerance(tmp_path, capsys):
    """Test build refuses a custom spectrum whose periods are closer than the tolerance."""
    spectrum = tmp_path / "spectrum.json"
    spectrum.write_text(json.dumps({"entries": [
        {"period": 1.0, "mult": 1}, {"period": 1.0 + 1e-10, "mult": 1},
    ]}))
    assert main(["build", "--spectrum", str(spectrum), "--slope", "5.5",
                 "--out", str(tmp_path / "model")]) == EXIT_USAGE
    assert "tolerance" in capsys.readouterr().err
