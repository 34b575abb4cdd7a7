"""Tests for file formats."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from core.entropy import fit_growth
from core.errors import FormatError
from core.generators import random_complex
from models.barcode import Barcode
from models.enums import Counting, Mode
from models.reeb import ReebSpectrum
from utils.formats import (
    barcode_to_json,
    format_barcode,
    format_complex,
    format_series,
    format_value,
    parse_barcode,
    parse_complex,
    read_barcode,
    read_spectrum,
    series_summary,
    spectrum_to_json,
    write_spectrum,
)

COMPLEX_TEXT = """# fcomplex v1
# seed=3
gen x 0.0
gen y 1.0
gen z 2.0
bnd z = y
"""


def test_format_value():
    """Test floats, fractions and infinity."""
    assert format_value(0.1) == "0.1"
    assert format_value(Fraction(1, 3)) == "1/3"
    assert format_value(math.inf) == "inf"


def test_parse_complex():
    """Test the hand example parses with header comments skipped."""
    c = parse_complex(COMPLEX_TEXT)
    assert c.space.labels == ("x", "y", "z")
    assert c.boundary_of("z") == frozenset({"y"})
    assert c.boundary_of("y") == frozenset()


def test_parse_complex_rational_mode():
    """Test rational mode keeps exact values."""
    c = parse_complex("# fcomplex v1\ngen a 1/3\n", Mode.RATIONAL)
    assert c.space.norm["a"] == Fraction(1, 3)


def test_complex_text_round_trip():
    """Test formatting then parsing returns an equal complex."""
    c = random_complex(np.random.default_rng(6), 6)
    assert parse_complex(format_complex(c)) == c
    exact = random_complex(np.random.default_rng(6), 6, exact=True)
    assert parse_complex(format_complex(exact), Mode.RATIONAL) == exact


@pytest.mark.parametrize(
    "text,line",
    [
        ("# barcode v1\n", 1),
        ("# fcomplex v1\ngen x\n", 2),
        ("# fcomplex v1\ngen x 0.0\ngen x 1.0\n", 3),
        ("# fcomplex v1\ngen x 0.0\nbnd x = q\n", 3),
        ("# fcomplex v1\ngen x zero\n", 2),
        ("# fcomplex v1\nedge x y\n", 2),
    ],
)
def test_parse_complex_errors_carry_line(text, line):
    """Test malformed complexes raise FormatError with a line number."""
    with pytest.raises(FormatError) as exc:
        parse_complex(text, path="c.fc")
    assert exc.value.line == line
    assert exc.value.path == "c.fc"


def test_parse_barcode_text():
    """Test the text form with an infinite and an open bar."""
    B = parse_barcode("# barcode v1\n0.0 inf\n1.0 2.0\n3.0 3.2 o\n")
    assert B == Barcode.from_intervals([(0.0, math.inf), (1.0, 2.0), (3.0, 3.2, True)])


def test_parse_barcode_empty_bar():
    """Test an empty bar is a format error at its line."""
    with pytest.raises(FormatError) as exc:
        parse_barcode("# barcode v1\n2.0 1.0\n")
    assert exc.value.line == 2


def test_barcode_json_and_text_agree():
    """Test both serializations parse back to the same barcode."""
    B = Barcode.from_intervals([(0.0, math.inf), (0.1, 0.3), (2.0, 5.0, True)])
    assert parse_barcode(format_barcode(B, ["# seed=1"])) == B
    assert parse_barcode(barcode_to_json(B, {"seed": 1})) == B


def test_barcode_json_header():
    """Test the header is written before the bars."""
    payload = json.loads(barcode_to_json(Barcode.from_intervals([(0.0, 1.0)]), {"seed": 4}))
    assert list(payload) == ["header", "bars"]
    assert payload["bars"] == [{"l": 0.0, "r": 1.0, "open": False}]


def test_invalid_barcode_json():
    """Test missing keys in barcode JSON are format errors."""
    with pytest.raises(FormatError):
        parse_barcode('{"bars": [{"l": 0.0}]}')


def test_read_barcode_missing_file(tmp_path):
    """Test an unreadable path is a format error naming the path."""
    with pytest.raises(FormatError) as exc:
        read_barcode(tmp_path / "missing.barcode")
    assert "missing.barcode" in str(exc.value)


def test_spectrum_header_is_ignored_on_read(tmp_path):
    """Test a spectrum written with a run header reads back unchanged."""
    spectrum = ReebSpectrum.from_periods([1.0, 1.0, 2.5], label="custom")
    path = tmp_path / "spectrum.json"
    write_spectrum(spectrum, path, header={"command": "gen", "seed": 0})
    assert json.loads(path.read_text())["header"]["seed"] == 0
    assert read_spectrum(path) == spectrum


def test_read_spectrum_rejects_unsorted_periods(tmp_path):
    """Test the spectrum schema is enforced on read."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"entries": [{"period": 2.0}, {"period": 1.0}]}))
    with pytest.raises(FormatError):
        read_spectrum(path)


def test_spectrum_json_contains_multiplicities():
    """Test colliding periods are stored with multiplicity."""
    payload = json.loads(spectrum_to_json(ReebSpectrum.from_periods([1.0, 1.0])))
    assert payload["entries"] == [{"period": 1.0, "mult": 2}]


def test_format_series():
    """Test TSV rows with an empty logcount for zero counts."""
    series = fit_growth(
        np.array([1.0, 2.0, 3.0, 4.0]), np.array([0, 1, 2, 4]), 0.1, Counting.TRUNCATION
    )
    lines = format_series(series, ["# seed=0"]).splitlines()
    assert lines[0] == "# seed=0"
    assert lines[2] == "T\tcount\tlogcount"
    assert lines[3] == "1.0\t0\t"
    assert lines[5] == f"3.0\t2\t{math.log(2)!r}"


def test_series_summary_keys():
    """Test the summary carries slope, window and diagnostics."""
    series = fit_growth(
        np.arange(1.0, 9.0), 2 ** np.arange(1, 9), 0.1, Counting.LEFT_ENDPOINT
    )
    summary = series_summary(series)
    assert summary["counting"] == "left_endpoint"
    assert summary["slope"] == pytest.approx(math.log(2))
    assert summary["window"] == [5.0, 8.0]
    assert summary["max_abs_residual"] == pytest.approx(0.0, abs=1e-9)
