"""Bottleneck distance between finite barcodes.

The distance is the smallest critical value delta for which a delta-matching
exists. Feasibility is a perfect-matching question on a bipartite graph whose
left side holds the bars of B1 plus one diagonal slot per bar of B2, and whose
right side holds the bars of B2 plus one diagonal slot per bar of B1.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from config.settings import resolve_tol
from core.errors import CapabilityError
from models.barcode import Barcode, Matching

logger = logging.getLogger(__name__)

MAX_BARS = 4000


def _endpoints(B: Barcode) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lefts, rights, _ = B.as_arrays()
    return lefts, rights, np.isinf(rights)


def _candidates(B1: Barcode, B2: Barcode) -> np.ndarray:
    l1, r1, inf1 = _endpoints(B1)
    l2, r2, inf2 = _endpoints(B2)
    values = [np.zeros(1)]
    values.append(np.abs(l1[:, None] - l2[None, :]).ravel())
    values.append(np.abs(r1[~inf1][:, None] - r2[~inf2][None, :]).ravel())
    values.append((r1[~inf1] - l1[~inf1]) / 2)
    values.append((r2[~inf2] - l2[~inf2]) / 2)
    return np.unique(np.concatenate(values))


def _feasible_matching(
    B1: Barcode, B2: Barcode, delta: float, tol: float
) -> Optional[np.ndarray]:
    """Row -> column assignment of a perfect matching, or None."""
    l1, r1, inf1 = _endpoints(B1)
    l2, r2, inf2 = _endpoints(B2)
    n1, n2 = len(l1), len(l2)
    size = n1 + n2
    if size == 0:
        return np.zeros(0, dtype=np.int64)
    bound = delta + tol

    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []

    # Bar to bar: both endpoints within delta; infinite bars only meet infinite bars.
    close_left = np.abs(l1[:, None] - l2[None, :]) <= bound
    with np.errstate(invalid="ignore"):
        close_right = np.abs(r1[:, None] - r2[None, :]) <= bound
    both_inf = inf1[:, None] & inf2[None, :]
    both_fin = ~inf1[:, None] & ~inf2[None, :]
    i, j = np.nonzero(close_left & ((both_fin & close_right) | both_inf))
    rows.append(i)
    cols.append(j)

    # B1 bar to its own diagonal slot.
    short1 = np.flatnonzero(~inf1 & ((r1 - l1) / 2 <= bound))
    rows.append(short1)
    cols.append(n2 + short1)

    # Diagonal slot of a B2 bar to that bar.
    short2 = np.flatnonzero(~inf2 & ((r2 - l2) / 2 <= bound))
    rows.append(n1 + short2)
    cols.append(short2)

    # Diagonal to diagonal.
    di, dj = np.meshgrid(np.arange(n2), np.arange(n1), indexing="ij")
    rows.append(n1 + di.ravel())
    cols.append(n2 + dj.ravel())

    row_idx = np.concatenate(rows).astype(np.int64)
    col_idx = np.concatenate(cols).astype(np.int64)
    graph = csr_matrix(
        (np.ones(row_idx.size, dtype=np.int8), (row_idx, col_idx)), shape=(size, size)
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    if np.any(match < 0):
        return None
    return np.asarray(match)


def _check_size(B1: Barcode, B2: Barcode) -> None:
    if len(B1) + len(B2) > MAX_BARS:
        raise CapabilityError(
            f"Bottleneck distance supports at most {MAX_BARS} bars in total, "
            f"got {len(B1) + len(B2)}"
        )


def bottleneck_matching(
    B1: Barcode, B2: Barcode, tol: Optional[float] = None
) -> tuple[float, Matching]:
    """Bottleneck distance together with an optimal matching.

    Returns:
        (distance, matching); distance is inf when the infinite-bar counts differ,
        in which case the matching is empty

    Raises:
        CapabilityError: If the barcodes are too large for the dense matching graph
    """
    _check_size(B1, B2)
    tol = resolve_tol(tol)
    if B1.infinite_count != B2.infinite_count:
        return math.inf, Matching(
            unmatched1=list(range(len(B1))), unmatched2=list(range(len(B2)))
        )

    # The largest candidate is always feasible: every finite bar can go to the
    # diagonal and equal numbers of infinite bars pair up arbitrarily.
    candidates = _candidates(B1, B2)
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible_matching(B1, B2, float(candidates[mid]), tol) is None:
            lo = mid + 1
        else:
            hi = mid
    delta = float(candidates[hi])
    best = _feasible_matching(B1, B2, delta, tol)
    logger.debug(f"Bottleneck over {len(candidates)} candidates: {delta}")
    return delta, _to_matching(best, len(B1), len(B2))


def _to_matching(match: Optional[np.ndarray], n1: int, n2: int) -> Matching:
    pairs: list[tuple[int, int]] = []
    unmatched1: list[int] = []
    unmatched2: list[int] = []
    if match is None:
        return Matching(unmatched1=list(range(n1)), unmatched2=list(range(n2)))
    for row in range(n1):
        col = int(match[row])
        if col < n2:
            pairs.append((row, col))
        else:
            unmatched1.append(row)
    for row in range(n1, n1 + n2):
        col = int(match[row])
        if col < n2:
            unmatched2.append(col)
    return Matching(pairs=pairs, unmatched1=unmatched1, unmatched2=sorted(unmatched2))


def bottleneck(B1: Barcode, B2: Barcode, tol: Optional[float] = None) -> float:
    """Bottleneck distance between two finite barcodes.

    Examples:
        {(0,2]} vs {(0,1]} -> 1.0
        {(0,2]} vs {}      -> 1.0
    """
    distance, _ = bottleneck_matching(B1, B2, tol=tol)
    return distance


def interleaved(B1: Barcode, B2: Barcode, delta: float, tol: Optional[float] = None) -> bool:
    """True iff the barcodes' modules are delta-interleaved (bottleneck <= delta)."""
    tol = resolve_tol(tol)
    return bottleneck(B1, B2, tol=tol) <= delta + tol
