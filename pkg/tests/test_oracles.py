"""Tests for the brute-force reference computations."""

import math

import numpy as np
import pytest

from core.bottleneck import bottleneck
from core.errors import CapabilityError
from core.generators import random_filtered_map
from core.na_linalg import svd
from core.oracles import (
    exhaustive_svd_gaps,
    interleaving_distance_oracle,
    interleaving_oracle,
    rank_function_barcode,
)
from models.barcode import Barcode
from models.chain import FilteredComplex
from models.linalg import FilteredMap, OrthoSpace

INF = math.inf


def test_exhaustive_svd_gaps_one_dimensional():
    """Test the oracle on A=[1] with l(z)=2, l(y)=1."""
    A = FilteredMap(
        domain=OrthoSpace.from_pairs([("z", 2.0)]),
        codomain=OrthoSpace.from_pairs([("y", 1.0)]),
        matrix=np.array([[1]]),
    )
    assert exhaustive_svd_gaps(A) == {(1.0,)}


def test_svd_gaps_equal_oracle():
    """Test svd gaps equal the exhaustive orthogonal-basis oracle on dim <= 4."""
    rng = np.random.default_rng(41)
    for i in range(200):
        A = random_filtered_map(rng, max_dim=4, exact=bool(i % 2))
        assert exhaustive_svd_gaps(A) == {tuple(sorted(svd(A).gaps))}


def test_exhaustive_svd_gaps_dimension_limit():
    """Test the oracle refuses domains above dimension 4."""
    space = OrthoSpace.from_pairs((f"x{i}", float(i)) for i in range(5))
    A = FilteredMap(domain=space, codomain=space, matrix=np.zeros((5, 5)))
    with pytest.raises(CapabilityError):
        exhaustive_svd_gaps(A)


def test_rank_function_barcode_hand_example():
    """Test the oracle recovers {(0,inf), (1,2]}."""
    space = OrthoSpace.from_pairs([("x", 0.0), ("y", 1.0), ("z", 2.0)])
    c = FilteredComplex.from_boundaries(space, {"z": ["y"]})
    assert rank_function_barcode(c) == Barcode.from_intervals([(0.0, INF), (1.0, 2.0)])


def test_interleaving_oracle_examples():
    """Test {(0,2]} vs {(0,1]} interleave at 1 but not at 0.9."""
    a = Barcode.from_intervals([(0.0, 2.0)])
    b = Barcode.from_intervals([(0.0, 1.0)])
    assert interleaving_oracle(a, b, 1.0)
    assert not interleaving_oracle(a, b, 0.9)
    assert interleaving_oracle(a, a, 0.0)


def test_interleaving_oracle_against_empty():
    """Test a bar of length 2 interleaves with nothing at 1."""
    a = Barcode.from_intervals([(0.0, 2.0)])
    assert interleaving_oracle(a, Barcode.empty(), 1.0)
    assert not interleaving_oracle(a, Barcode.empty(), 0.5)


def test_interleaving_oracle_bar_limit():
    """Test more than three bars are refused."""
    big = Barcode.from_intervals([(0.0, 1.0)] * 4)
    with pytest.raises(CapabilityError):
        interleaving_oracle(big, Barcode.empty(), 1.0)


@pytest.mark.parametrize(
    "first,second",
    [
        ([(0.0, 2.0)], [(0.0, 1.0)]),
        ([(0.0, 3.0), (1.0, 2.0)], [(0.0, 3.0)]),
        ([(0.0, INF)], [(1.0, INF)]),
        ([(0.0, INF), (1.0, 3.0)], [(2.0, INF)]),
        ([(1.0, 2.0), (0.0, 3.0)], [(1.0, 3.0), (0.0, 2.0)]),
    ],
)
def test_isometry_on_small_barcodes(first, second):
    """Test the interleaving-search distance equals the bottleneck distance."""
    a = Barcode.from_intervals(first)
    b = Barcode.from_intervals(second)
    assert interleaving_distance_oracle(a, b) == pytest.approx(bottleneck(a, b), abs=1e-9)
