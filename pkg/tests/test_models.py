"""Tests for data models."""

import math
from fractions import Fraction

import numpy as np
import pytest

from models.barcode import Bar, Barcode, Matching, Reparametrization
from models.chain import FilteredComplex
from models.entropy import EntropySeries, TypeCounts
from models.enums import Counting, Mode
from models.linalg import FilteredMap, OrthoSpace, combo
from models.reeb import BarcodeTemplate, ReebSpectrum, SpectrumEntry
from models.run import RunConfig, SuiteReport
from models.triangle import SandwichRow

INF = math.inf


def test_bar_defaults():
    """Test Bar defaults to an infinite closed bar."""
    bar = Bar(left=1.0)
    assert bar.is_infinite
    assert bar.length == INF
    assert not bar.right_open


def test_bar_validation():
    """Test Bar rejects empty intervals and infinite left endpoints."""
    with pytest.raises(ValueError):
        Bar(left=2.0, right=1.0)
    with pytest.raises(ValueError):
        Bar(left=-INF, right=1.0)


def test_barcode_is_sorted_multiset():
    """Test construction order does not matter."""
    a = Barcode.from_intervals([(1.0, 2.0), (0.0, INF), (1.0, 2.0)])
    b = Barcode.from_intervals([(1.0, 2.0), (1.0, 2.0), (0.0, INF)])
    assert a == b
    assert a.bars[0].left == 0.0
    assert Barcode.from_arrays([1.0, 0.0], [2.0, INF]) == Barcode.from_intervals(
        [(0.0, INF), (1.0, 2.0)]
    )


def test_barcode_from_arrays_validation():
    """Test the array constructor rejects empty bars and shape mismatches."""
    with pytest.raises(ValueError):
        Barcode.from_arrays([1.0], [1.0])
    with pytest.raises(ValueError):
        Barcode.from_arrays([1.0, 2.0], [3.0])


def test_barcode_helpers():
    """Test lengths, infinite count and multiset union."""
    B = Barcode.from_intervals([(0.0, INF), (1.0, 2.5)])
    assert B.infinite_count == 1
    assert B.lengths.tolist() == [INF, 1.5]
    assert len(B + Barcode.from_intervals([(3.0, 4.0)])) == 3


def test_matching_partition():
    """Test partition checks of a matching."""
    m = Matching(pairs=[(0, 1)], unmatched1=[1], unmatched2=[0])
    assert m.is_partition_of(2, 2)
    assert not m.is_partition_of(3, 2)


def test_reparametrization_compose():
    """Test composition of linear reparametrizations."""
    f = Reparametrization.linear(2.0).compose(Reparametrization.linear(1.0, 1.0))
    assert f.forward(1.0) == pytest.approx(4.0)
    assert f.inverse(f.forward(3.0)) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        Reparametrization.linear(0.0)


def test_ortho_space_validation():
    """Test duplicate labels and missing values are rejected."""
    with pytest.raises(ValueError):
        OrthoSpace(labels=("a", "a"), norm={"a": 1.0})
    with pytest.raises(ValueError):
        OrthoSpace(labels=("a", "b"), norm={"a": 1.0})
    with pytest.raises(ValueError):
        OrthoSpace.from_pairs([("a", INF)])


def test_ortho_space_exact_mode():
    """Test exactness follows the value type."""
    assert OrthoSpace.from_pairs([("a", Fraction(1, 2))]).exact
    assert not OrthoSpace.from_pairs([("a", 0.5)]).exact
    assert not OrthoSpace.empty().exact


def test_ortho_space_direct_sum():
    """Test direct sums keep labels in order and need disjoint labels."""
    a = OrthoSpace.from_pairs([("x", 1.0)])
    b = OrthoSpace.from_pairs([("y", 0.0)])
    assert a.direct_sum(b).labels == ("x", "y")
    assert a.direct_sum(b).filtration_order == (1, 0)
    with pytest.raises(ValueError):
        a.direct_sum(a)


def test_combo_cancels_repeats():
    """Test repeated labels cancel mod 2."""
    assert combo("a", "b", "a") == frozenset({"b"})


def test_filtered_map_shape():
    """Test the matrix is reduced mod 2 and its shape checked."""
    space = OrthoSpace.from_pairs([("x", 0.0), ("y", 1.0)])
    A = FilteredMap(domain=space, codomain=space, matrix=np.array([[3, 0], [2, 1]]))
    assert A.column("x") == frozenset({"x"})
    with pytest.raises(ValueError):
        FilteredMap(domain=space, codomain=space, matrix=np.zeros((1, 2)))


def test_filtered_complex_boundaries():
    """Test repeated boundary targets cancel."""
    space = OrthoSpace.from_pairs([("x", 0.0), ("y", 1.0)])
    c = FilteredComplex.from_boundaries(space, {"y": ["x", "x"]})
    assert c.boundary_of("y") == frozenset()


def test_spectrum_entry_validation():
    """Test periods must be positive and multiplicities at least 1."""
    with pytest.raises(ValueError):
        SpectrumEntry(period=0.0)
    with pytest.raises(ValueError):
        SpectrumEntry(period=1.0, mult=0)


def test_spectrum_must_increase():
    """Test unsorted entries are rejected."""
    with pytest.raises(ValueError):
        ReebSpectrum(entries=[SpectrumEntry(period=2.0), SpectrumEntry(period=1.0)])


def test_spectrum_from_periods():
    """Test collisions become multiplicities and counts are strict."""
    spectrum = ReebSpectrum.from_periods([2.0, 1.0, 2.0])
    assert spectrum.periods.tolist() == [1.0, 2.0]
    assert spectrum.mults.tolist() == [1, 2]
    assert spectrum.total == 3
    assert spectrum.count_below(2.0) == 1
    assert spectrum.counts_below([0.5, 2.0, 2.5]).tolist() == [0, 1, 3]
    assert spectrum.mult_at(2.0) == 2
    assert spectrum.min_gap == 1.0
    assert spectrum.t_min == 1.0
    assert spectrum.below(2.0).total == 1


def test_spectrum_from_periods_merges_within_tolerance():
    """Test periods closer than the merge tolerance become one entry."""
    spectrum = ReebSpectrum.from_periods([1.0, 1.0 + 4e-10, 1.0 + 8e-10, 1.0 + 3e-9, 2.0])
    assert spectrum.periods.tolist() == [1.0, 1.0 + 3e-9, 2.0]
    assert spectrum.mults.tolist() == [3, 1, 1]
    assert spectrum.min_gap > 1e-9


def test_empty_spectrum():
    """Test the empty spectrum has no gaps and no orbits."""
    spectrum = ReebSpectrum()
    assert spectrum.total == 0
    assert spectrum.min_gap == INF
    assert spectrum.t_min == INF
    assert not spectrum.contains(1.0)


def test_template_positive_bars():
    """Test bars at 0 are excluded from the positive part."""
    tmpl = BarcodeTemplate(
        betti=1,
        spectrum=ReebSpectrum.from_periods([1.0]),
        period_bars=Barcode.from_intervals([(0.0, INF), (1.0, INF), (1.0, INF)]),
    )
    assert len(tmpl.positive_bars) == 2


def test_type_counts():
    """Test the endpoint-weighted total."""
    counts = TypeCounts(n_I=2, n_II=1, n_III=3, n_IV=1)
    assert counts.long_bars == 3
    assert counts.weighted_total == 2 + 2 + 3 + 2


def test_entropy_series_accessors():
    """Test T values and counts come from the samples."""
    series = EntropySeries(
        eps=0.1, counting=Counting.TRUNCATION, samples=[(1.0, 2), (2.0, 5)], window=(1.0, 2.0)
    )
    assert series.T_values == [1.0, 2.0]
    assert series.counts == [2, 5]
    with pytest.raises(ValueError):
        EntropySeries(eps=0.0, window=(1.0, 2.0))


def test_sandwich_row_holds():
    """Test the sandwich bound check."""
    assert SandwichRow(T=1.0, lower=0, middle=1, upper=2).holds
    assert not SandwichRow(T=1.0, lower=2, middle=1, upper=2).holds


def test_run_config_header():
    """Test the header is stable and omits unset values."""
    run = RunConfig(
        command="entropy",
        eps=0.1,
        T_grid=[1.0, 2.0, 3.0],
        seed=4,
        mode=Mode.RATIONAL,
        params={"counting": "truncation"},
    )
    assert run.header_lines() == [
        "# command=entropy",
        "# seed=4",
        "# mode=rational",
        "# eps=0.1",
        "# T_grid=1.0:3.0:3",
        "# counting=truncation",
    ]
    assert "jobs" not in run.header()
    assert run.header()["mode"] == "rational"


def test_run_config_validation():
    """Test eps must be positive and jobs at least 1."""
    with pytest.raises(ValueError):
        RunConfig(command="entropy", eps=-1.0)
    with pytest.raises(ValueError):
        RunConfig(command="check", jobs=0)


def test_suite_report_passed():
    """Test a report passes iff it has no failures."""
    assert SuiteReport(name="svd", instances=2, checks=4).passed
    assert not SuiteReport(name="svd", instances=2, checks=4, failures=1).passed
