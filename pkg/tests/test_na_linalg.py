"""Tests for non-Archimedean F2 linear algebra."""

import math
from fractions import Fraction

import numpy as np
import pytest

from core.errors import CapabilityError, InputError, PreconditionError
from core.generators import random_filtered_map
from core.na_linalg import (
    add,
    apply_map,
    check_svd,
    f2_null_space,
    f2_rank,
    is_orthogonal,
    leader,
    norm_of,
    norm_spectrum,
    orthogonal_base_change,
    svd,
)
from models.linalg import FilteredMap, OrthoSpace, combo


def _space(*values):
    return OrthoSpace.from_pairs((f"g{i + 1}", v) for i, v in enumerate(values))


def test_norm_of_zero_vector():
    """Test the zero vector has norm -inf."""
    assert norm_of(_space(1.0, 2.0), combo()) == -math.inf


def test_norm_of_single_generator():
    """Test a generator's norm is its value."""
    assert norm_of(_space(2.5), combo("g1")) == 2.5


def test_norm_of_sum_is_max():
    """Test the norm of a sum of generators is the max of their values."""
    assert norm_of(_space(1.0, 3.0), combo("g1", "g2")) == 3.0


def test_norm_of_unknown_label():
    """Test unknown labels are rejected."""
    with pytest.raises(InputError):
        norm_of(_space(1.0), combo("x"))


def test_combo_cancels_repeats():
    """Test repeated labels cancel over F2."""
    assert combo("g1", "g2", "g1") == frozenset({"g2"})
    assert add(combo("g1", "g2"), combo("g2")) == combo("g1")


def test_leader_breaks_ties_by_position():
    """Test the leader is the support label of largest (value, position)."""
    space = _space(2.0, 2.0, 1.0)
    assert leader(space, combo("g1", "g2", "g3")) == "g2"
    assert leader(space, combo()) is None


def test_f2_rank_and_null_space():
    """Test rank and null space over F2."""
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert f2_rank(m) == 2
    null = f2_null_space(m)
    assert null.shape == (1, 3)
    assert not ((m @ null[0]) % 2).any()


def test_standard_basis_is_orthogonal():
    """Test the standard basis satisfies the max-law."""
    space = _space(1.0, 2.0, 3.0)
    check = is_orthogonal(space, [combo(x) for x in space.labels])
    assert check.orthogonal
    assert check.exhaustive


def test_is_orthogonal_detects_max_law_violation():
    """Test {g1+g2, g2} with l(g1)=1, l(g2)=3 is not orthogonal."""
    space = _space(1.0, 3.0)
    check = is_orthogonal(space, [combo("g1", "g2"), combo("g2")])
    assert not check
    assert check.witness == (0, 1)


def test_is_orthogonal_singleton():
    """Test a single nonzero vector is orthogonal."""
    assert is_orthogonal(_space(1.0, 3.0), [combo("g1", "g2")])


def test_is_orthogonal_reduction_mode():
    """Test the reduction-based check agrees on small families and is flagged."""
    space = _space(1.0, 3.0)
    check = is_orthogonal(space, [combo("g1", "g2"), combo("g2")], exhaustive=False)
    assert not check
    assert not check.exhaustive


def test_is_orthogonal_exhaustive_cap():
    """Test forcing exhaustive mode above the cap raises."""
    space = OrthoSpace.from_pairs((f"g{i}", float(i)) for i in range(25))
    with pytest.raises(CapabilityError):
        is_orthogonal(space, [combo(x) for x in space.labels], exhaustive=True)


def test_norm_spectrum_standard_basis():
    """Test the spectrum of the standard basis is the sorted values."""
    space = _space(3.0, 1.0, 2.0)
    assert norm_spectrum(space, [combo(x) for x in space.labels]) == [1.0, 2.0, 3.0]


def test_norm_spectrum_rejects_non_orthogonal():
    """Test {g1, g1+g2} with l=(5,1) is rejected; the standard basis gives {1,5}."""
    space = _space(5.0, 1.0)
    with pytest.raises(PreconditionError) as exc:
        norm_spectrum(space, [combo("g1"), combo("g1", "g2")])
    assert exc.value.hypothesis == "orthogonality"
    assert exc.value.witness == (0, 1)
    assert norm_spectrum(space, [combo("g1"), combo("g2")]) == [1.0, 5.0]


def test_norm_spectrum_rejects_dependent_vectors():
    """Test a dependent family is not a basis."""
    with pytest.raises(PreconditionError) as exc:
        norm_spectrum(_space(1.0, 2.0), [combo("g1"), combo("g1")])
    assert exc.value.hypothesis == "basis"


def test_norm_spectrum_invariant_under_base_change():
    """Test random orthogonal base changes leave the spectrum unchanged (exact)."""
    rng = np.random.default_rng(11)
    for _ in range(500):
        dim = int(rng.integers(1, 7))
        values = [Fraction(int(v), 4) for v in rng.integers(0, 12, size=dim)]
        space = OrthoSpace.from_pairs((f"g{i}", v) for i, v in enumerate(values))
        basis = orthogonal_base_change(space, rng, steps=15)
        assert norm_spectrum(space, basis) == sorted(values)


def test_svd_zero_map():
    """Test the zero map has no pairs and the standard generators as kernel."""
    domain = _space(1.0, 2.0, 3.0)
    codomain = _space(0.5)
    result = svd(FilteredMap(domain=domain, codomain=codomain, matrix=np.zeros((1, 3))))
    assert result.paired == ()
    assert sorted(result.kernel_basis, key=sorted) == sorted(
        (combo(x) for x in domain.labels), key=sorted
    )


def test_svd_one_dimensional():
    """Test A=[1] with l(z)=2, l(y)=1 gives the pair (z, y, gap 1)."""
    domain = OrthoSpace.from_pairs([("z", 2.0)])
    codomain = OrthoSpace.from_pairs([("y", 1.0)])
    result = svd(FilteredMap(domain=domain, codomain=codomain, matrix=np.array([[1]])))
    assert len(result.paired) == 1
    pair = result.paired[0]
    assert pair.v == combo("z")
    assert pair.w == combo("y")
    assert pair.gap == 1.0


def test_svd_conclusions_on_random_maps():
    """Test svd output passes its own certification on random maps."""
    rng = np.random.default_rng(3)
    for i in range(100):
        A = random_filtered_map(rng, max_dim=6, exact=bool(i % 2))
        result = svd(A)
        assert check_svd(A, result) == []
        for p in result.paired:
            assert apply_map(A, p.v) == p.w


def test_svd_rank_matches_f2_rank():
    """Test the number of pairs is the rank of the matrix."""
    rng = np.random.default_rng(5)
    for _ in range(50):
        A = random_filtered_map(rng, max_dim=5)
        assert svd(A).rank == f2_rank(A.matrix)


def test_check_svd_detects_tampering():
    """Test a corrupted decomposition is reported."""
    domain = OrthoSpace.from_pairs([("z", 2.0)])
    codomain = OrthoSpace.from_pairs([("y", 1.0), ("u", 0.0)])
    A = FilteredMap(domain=domain, codomain=codomain, matrix=np.array([[1], [0]]))
    result = svd(A)
    tampered = type(result)(
        paired=(result.paired[0]._replace(w=combo("u")),),
        kernel_basis=(),
        image_basis=(combo("u"),),
    )
    assert "pair 0: A v != w" in check_svd(A, tampered)
