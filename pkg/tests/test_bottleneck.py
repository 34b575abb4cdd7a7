"""Tests for the bottleneck distance."""

import math
import warnings

import numpy as np
import pytest

from core.bottleneck import MAX_BARS, bottleneck, bottleneck_matching, interleaved
from core.errors import CapabilityError
from core.generators import random_barcode
from models.barcode import Barcode

INF = math.inf


def test_bottleneck_identical_is_zero():
    """Test d(B, B) = 0."""
    B = Barcode.from_intervals([(0.0, INF), (1.0, 2.0), (1.0, 2.0)])
    assert bottleneck(B, B) == 0.0


def test_bottleneck_with_infinite_bars_emits_no_warnings():
    """Test infinite bars do not trigger numpy floating-point warnings."""
    B1 = Barcode.from_intervals([(0.0, INF), (1.0, INF), (2.0, 3.0)])
    B2 = Barcode.from_intervals([(0.0, INF), (1.5, INF), (2.0, 2.5)])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert bottleneck(B1, B2) == pytest.approx(0.5)
        assert interleaved(B1, B2, 0.5)


def test_bottleneck_match_or_delete():
    """Test {(0,2]} vs {(0,1]} is 1 and {(0,2]} vs {} is 1."""
    a = Barcode.from_intervals([(0.0, 2.0)])
    b = Barcode.from_intervals([(0.0, 1.0)])
    assert bottleneck(a, b) == 1.0
    assert bottleneck(a, Barcode.empty()) == 1.0


def test_bottleneck_infinite_bars_only_match_each_other():
    """Test unequal infinite-bar counts give infinite distance."""
    a = Barcode.from_intervals([(0.0, INF)])
    assert bottleneck(a, Barcode.empty()) == INF
    assert bottleneck(a, Barcode.from_intervals([(0.5, INF)])) == 0.5


def test_bottleneck_matching_partitions_both_barcodes():
    """Test the returned matching covers every bar and respects delta."""
    a = Barcode.from_intervals([(0.0, 4.0), (1.0, 1.2), (2.0, INF)])
    b = Barcode.from_intervals([(0.1, 3.8), (2.5, INF)])
    delta, matching = bottleneck_matching(a, b)
    assert matching.is_partition_of(len(a), len(b))
    for i, j in matching.pairs:
        assert abs(a.bars[i].left - b.bars[j].left) <= delta + 1e-9
    for i in matching.unmatched1:
        assert a.bars[i].length / 2 <= delta + 1e-9
    assert delta == pytest.approx(0.5)


def test_bottleneck_is_pseudometric():
    """Test symmetry and the triangle inequality on random triples."""
    rng = np.random.default_rng(31)
    for _ in range(40):
        n_inf = int(rng.integers(0, 3))
        codes = []
        for _ in range(3):
            B = random_barcode(rng, int(rng.integers(0, 8)), p_infinite=0.0)
            lefts = rng.uniform(0.0, 5.0, size=n_inf)
            codes.append(B + Barcode.from_arrays(lefts, np.full(n_inf, np.inf)))
        a, b, c = codes
        assert bottleneck(a, b) == pytest.approx(bottleneck(b, a))
        assert bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-9


def test_interleaved_thresholds():
    """Test {(0,2]} and {(0,1]} are 1-interleaved but not 0.9-interleaved."""
    a = Barcode.from_intervals([(0.0, 2.0)])
    b = Barcode.from_intervals([(0.0, 1.0)])
    assert not interleaved(a, b, 0.9)
    assert interleaved(a, b, 1.0)
    assert interleaved(a, a, 0.0)


def test_bottleneck_size_limit():
    """Test barcodes beyond the dense matching limit are refused."""
    big = Barcode.from_arrays(np.zeros(MAX_BARS + 1), np.ones(MAX_BARS + 1))
    with pytest.raises(CapabilityError):
        bottleneck(big, Barcode.empty())
