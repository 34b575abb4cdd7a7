"""Non-Archimedean normed F2 linear algebra.

Vectors are F2 combinations (frozensets of labels). A space's standard basis is
orthogonal, so the norm of a combination is the largest value in its support.
"""

import logging
from collections.abc import Sequence
from typing import Optional

import galois
import numpy as np

from config.settings import get_config, resolve_tol
from core.errors import CapabilityError, InputError, PreconditionError
from models.linalg import (
    NEG_INF,
    ActionValue,
    Combination,
    FilteredMap,
    OrthogonalityCheck,
    OrthoSpace,
    SvdPair,
    SvdResult,
)

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


def f2_rank(matrix: np.ndarray) -> int:
    """Rank of a 0/1 matrix over F2."""
    matrix = np.asarray(matrix, dtype=np.uint8) % 2
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(GF2(matrix)))


def f2_null_space(matrix: np.ndarray) -> np.ndarray:
    """Basis of {x : M x = 0} over F2, one vector per row."""
    matrix = np.asarray(matrix, dtype=np.uint8) % 2
    if matrix.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    if matrix.shape[0] == 0:
        return np.eye(matrix.shape[1], dtype=np.uint8)
    return np.asarray(GF2(matrix).null_space(), dtype=np.uint8)


def _check_support(space: OrthoSpace, vector: Combination) -> None:
    unknown = [x for x in vector if x not in space.index]
    if unknown:
        raise InputError(f"Unknown labels {sorted(unknown)} for space {space.labels}")


def norm_of(space: OrthoSpace, vector: Combination) -> ActionValue:
    """Norm of an F2 combination: the max value over its support.

    Args:
        space: Normed space
        vector: Combination of labels of ``space``

    Returns:
        Largest action value in the support, -inf for the zero vector

    Raises:
        InputError: If the support contains an unknown label
    """
    _check_support(space, vector)
    if not vector:
        return NEG_INF
    return max(space.norm[x] for x in vector)


def leader(space: OrthoSpace, vector: Combination) -> Optional[str]:
    """Support label of maximal (value, position); None for the zero vector."""
    _check_support(space, vector)
    if not vector:
        return None
    rank = space.filtration_rank
    return max(vector, key=rank.__getitem__)


def to_vector(space: OrthoSpace, vector: Combination) -> np.ndarray:
    """Coordinate column of a combination in label order."""
    _check_support(space, vector)
    out = np.zeros(space.dim, dtype=np.uint8)
    for label in vector:
        out[space.index[label]] = 1
    return out


def from_vector(space: OrthoSpace, coords: np.ndarray) -> Combination:
    return frozenset(space.labels[i] for i in np.flatnonzero(np.asarray(coords) % 2))


def apply_map(A: FilteredMap, vector: Combination) -> Combination:
    """Image of a domain combination under A."""
    coords = to_vector(A.domain, vector)
    return from_vector(A.codomain, (A.matrix.astype(np.int64) @ coords) % 2)


def add(*vectors: Combination) -> Combination:
    """Sum of combinations over F2."""
    acc: set[str] = set()
    for v in vectors:
        acc ^= v
    return frozenset(acc)


def _values_equal(a: ActionValue, b: ActionValue, tol: float) -> bool:
    if a == b:
        return True
    return abs(a - b) <= tol


def _exhaustive_orthogonality(
    space: OrthoSpace, vectors: Sequence[Combination], tol: float
) -> OrthogonalityCheck:
    # Bit r of a mask is the generator of filtration rank r, so the norm of a
    # mask is the value of its highest set bit.
    rank = space.filtration_rank
    values = [space.norm[space.labels[i]] for i in space.filtration_order]
    masks = [sum(1 << rank[x] for x in v) for v in vectors]
    norms = [values[m.bit_length() - 1] if m else NEG_INF for m in masks]

    k = len(vectors)
    sums = [0] * (1 << k)
    maxes: list[ActionValue] = [NEG_INF] * (1 << k)
    for subset in range(1, 1 << k):
        low = subset & -subset
        i = low.bit_length() - 1
        rest = subset ^ low
        sums[subset] = sums[rest] ^ masks[i]
        maxes[subset] = max(maxes[rest], norms[i])
        s = sums[subset]
        value = values[s.bit_length() - 1] if s else NEG_INF
        if not _values_equal(value, maxes[subset], tol):
            witness = tuple(j for j in range(k) if subset >> j & 1)
            return OrthogonalityCheck(orthogonal=False, exhaustive=True, witness=witness)
    return OrthogonalityCheck(orthogonal=True, exhaustive=True)


def _level_orthogonality(
    space: OrthoSpace, vectors: Sequence[Combination], tol: float
) -> OrthogonalityCheck:
    # Vectors sharing a norm value must have independent top-level parts.
    norms = [norm_of(space, v) for v in vectors]
    if any(n == NEG_INF for n in norms):
        zero = next(i for i, n in enumerate(norms) if n == NEG_INF)
        return OrthogonalityCheck(orthogonal=False, exhaustive=False, witness=(zero,))
    remaining = list(range(len(vectors)))
    while remaining:
        level = norms[remaining[0]]
        group = [i for i in remaining if _values_equal(norms[i], level, tol)]
        remaining = [i for i in remaining if i not in group]
        tops = [
            frozenset(x for x in vectors[i] if _values_equal(space.norm[x], level, tol))
            for i in group
        ]
        matrix = np.column_stack([to_vector(space, t) for t in tops])
        if f2_rank(matrix) < len(group):
            null = f2_null_space(matrix)
            witness = tuple(group[j] for j in np.flatnonzero(null[0]))
            return OrthogonalityCheck(orthogonal=False, exhaustive=False, witness=witness)
    return OrthogonalityCheck(orthogonal=True, exhaustive=False)


def is_orthogonal(
    space: OrthoSpace,
    vectors: Sequence[Combination],
    exhaustive: Optional[bool] = None,
    tol: Optional[float] = None,
) -> OrthogonalityCheck:
    """Test the max-law on every nonzero F2 combination of ``vectors``.

    Families up to the configured cap are checked over all 2^k - 1 sums. Larger
    families fall back to a reduction-based test (independence of top-level parts
    per norm value) and the result is flagged as non-exhaustive.

    Args:
        space: Normed space
        vectors: Family of combinations
        exhaustive: Force (True) or skip (False) enumeration; None picks by size
        tol: Comparison tolerance; exact arithmetic for rational spaces

    Raises:
        InputError: If a vector has an unknown label
        CapabilityError: If exhaustive mode is requested above the cap
    """
    for v in vectors:
        _check_support(space, v)
    cap = get_config().exhaustive_cap
    tol = 0.0 if space.exact else resolve_tol(tol)
    if exhaustive is None:
        exhaustive = len(vectors) <= cap
    if exhaustive:
        if len(vectors) > cap:
            raise CapabilityError(
                f"Exhaustive orthogonality check limited to {cap} vectors, got {len(vectors)}"
            )
        return _exhaustive_orthogonality(space, vectors, tol)
    result = _level_orthogonality(space, vectors, tol)
    logger.debug(f"Reduction-based orthogonality check on {len(vectors)} vectors: {result}")
    return result


def norm_spectrum(
    space: OrthoSpace, basis: Sequence[Combination], tol: Optional[float] = None
) -> list[ActionValue]:
    """Sorted norm values of an orthogonal basis.

    Raises:
        PreconditionError: If ``basis`` is not a basis or not orthogonal; the witness
            is the offending sub-family as indices into ``basis``
    """
    for v in basis:
        _check_support(space, v)
    if len(basis) != space.dim:
        raise PreconditionError(
            "basis",
            f"expected {space.dim} vectors, got {len(basis)}",
            witness=tuple(range(len(basis))),
        )
    if space.dim == 0:
        return []
    matrix = np.column_stack([to_vector(space, v) for v in basis])
    if f2_rank(matrix) < space.dim:
        null = f2_null_space(matrix)
        witness = tuple(int(j) for j in np.flatnonzero(null[0]))
        raise PreconditionError("basis", "vectors are linearly dependent", witness=witness)
    check = is_orthogonal(space, basis, tol=tol)
    if not check:
        raise PreconditionError(
            "orthogonality",
            f"sum of vectors {check.witness} breaks the max-law",
            witness=check.witness,
        )
    return sorted(norm_of(space, v) for v in basis)


def orthogonal_base_change(
    space: OrthoSpace, rng: np.random.Generator, steps: int = 20
) -> list[Combination]:
    """Random orthogonal basis: add lower-or-equal generators to each generator.

    Adding a generator of smaller or equal value never changes a leader, so the
    result has the same leaders as the standard basis and stays orthogonal.
    """
    order = space.filtration_order
    basis = [frozenset({space.labels[i]}) for i in range(space.dim)]
    for _ in range(steps):
        if space.dim < 2:
            break
        hi, lo = sorted(rng.choice(space.dim, size=2, replace=False), reverse=True)
        target = space.labels[order[hi]]
        source = space.labels[order[lo]]
        j = space.index[target]
        basis[j] = basis[j] ^ {source}
    return basis


def svd(A: FilteredMap) -> SvdResult:
    """Orthogonal singular value decomposition of a filtered map.

    Columns are reduced in ascending (value, label order) against earlier columns
    until their lowest row (largest codomain value) is unique. Reduced columns keep
    their own generator as leader, and nonzero images have distinct lowest rows, so
    both resulting bases are orthogonal.

    Returns:
        SvdResult with pairs sorted by non-decreasing gap (ties in column order)

    Raises:
        InputError: If the matrix does not match the spaces
    """
    domain, codomain = A.domain, A.codomain
    if A.matrix.shape != (codomain.dim, domain.dim):
        raise InputError(f"Matrix shape {A.matrix.shape} != ({codomain.dim}, {domain.dim})")
    if domain.dim == 0:
        return SvdResult()

    cols = list(domain.filtration_order)
    rows = list(codomain.filtration_order)
    reduced = A.matrix[np.ix_(rows, cols)].copy() if rows else np.zeros((0, len(cols)), np.uint8)
    tracker = np.eye(len(cols), dtype=np.uint8)

    pivot_of: dict[int, int] = {}
    for j in range(len(cols)):
        while True:
            nonzero = np.flatnonzero(reduced[:, j])
            if nonzero.size == 0:
                break
            low = int(nonzero[-1])
            k = pivot_of.get(low)
            if k is None:
                pivot_of[low] = j
                break
            reduced[:, j] ^= reduced[:, k]
            tracker[:, j] ^= tracker[:, k]

    def domain_combo(j: int) -> Combination:
        return frozenset(domain.labels[cols[i]] for i in np.flatnonzero(tracker[:, j]))

    def codomain_combo(j: int) -> Combination:
        return frozenset(codomain.labels[rows[i]] for i in np.flatnonzero(reduced[:, j]))

    pairs: list[SvdPair] = []
    kernel: list[Combination] = []
    for j in range(len(cols)):
        v = domain_combo(j)
        if not reduced[:, j].any():
            kernel.append(v)
            continue
        w = codomain_combo(j)
        gap = domain.norm[domain.labels[cols[j]]] - norm_of(codomain, w)
        pairs.append(SvdPair(v=v, w=w, gap=gap))

    pairs.sort(key=lambda p: p.gap)
    return SvdResult(
        paired=tuple(pairs),
        kernel_basis=tuple(kernel),
        image_basis=tuple(p.w for p in pairs),
    )


def check_svd(A: FilteredMap, result: SvdResult, tol: Optional[float] = None) -> list[str]:
    """List the conclusions of the decomposition that ``result`` fails for ``A``."""
    problems: list[str] = []
    tol = 0.0 if A.domain.exact else resolve_tol(tol)
    for i, p in enumerate(result.paired):
        if apply_map(A, p.v) != p.w:
            problems.append(f"pair {i}: A v != w")
    for i, x in enumerate(result.kernel_basis):
        if apply_map(A, x):
            problems.append(f"kernel vector {i} has nonzero image")
    gaps = result.gaps
    if any(b < a - tol for a, b in zip(gaps, gaps[1:])):
        problems.append("gaps not sorted")
    domain_basis = [p.v for p in result.paired] + list(result.kernel_basis)
    if len(domain_basis) != A.domain.dim:
        problems.append("domain basis has wrong size")
    elif domain_basis:
        if f2_rank(np.column_stack([to_vector(A.domain, v) for v in domain_basis])) < A.domain.dim:
            problems.append("domain vectors are dependent")
        elif not is_orthogonal(A.domain, domain_basis, exhaustive=False, tol=tol):
            problems.append("domain basis not orthogonal")
    if result.image_basis and not is_orthogonal(
        A.codomain, list(result.image_basis), exhaustive=False, tol=tol
    ):
        problems.append("image basis not orthogonal")
    return problems

