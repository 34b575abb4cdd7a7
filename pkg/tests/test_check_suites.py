"""Tests for the property check suites."""

import math

import pytest

from core.check_suites import SUITES, InstanceOutcome, run_suite
from core.errors import InputError


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_a_few_instances(name):
    """Test every suite passes on its first instances."""
    report = run_suite(name, seed=7, instances=5)
    assert report.instances == 5
    assert report.checks >= 5
    assert report.passed, report.counterexample


def test_isometry_suite_covers_all_pairs():
    """Test the exhaustive isometry suite passes on every small pair."""
    report = run_suite("isometry")
    assert report.instances == SUITES["isometry"].instances()
    assert report.passed, report.counterexample


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    ["svd", "equivalence", "invariance", "triangle", "reparam", "short_bars", "stability", "cauchy"],
)
def test_suite_passes_at_full_size(name):
    """Test suites pass at their standard instance counts."""
    assert run_suite(name, seed=0).passed


def test_run_suite_is_schedule_independent():
    """Test worker count does not change the merged report."""
    inline = run_suite("stability", seed=3, instances=8)
    parallel = run_suite("stability", seed=3, instances=8, jobs=2)
    assert inline == parallel


def test_run_suite_unknown_name():
    """Test unknown suites raise KeyError."""
    with pytest.raises(KeyError):
        run_suite("nope")


def test_run_suite_rejects_instances_beyond_isometry_table():
    """Test asking for more isometry instances than pairs is an input error."""
    size = SUITES["isometry"].instances()
    with pytest.raises(InputError):
        run_suite("isometry", instances=size + 1)


def test_run_suite_rejects_negative_instances():
    """Test a negative instance count is an input error."""
    with pytest.raises(InputError):
        run_suite("reparam", instances=-1)


def test_instance_outcome_keeps_first_counterexample():
    """Test only the first failure is kept, with JSON-safe values."""
    out = InstanceOutcome()
    out.record(True, check="a")
    out.record(False, check="b", d=math.inf)
    out.record(False, check="c")
    assert (out.checks, out.failures) == (3, 2)
    assert out.counterexample == {"check": "b", "d": "inf"}
