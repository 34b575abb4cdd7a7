"""Brute-force reference computations for small inputs.

These are independent of the reduction and matching algorithms and are used
to certify them in tests and check suites.
"""

import itertools
import math
from typing import Optional

import numpy as np

from config.settings import resolve_tol
from core.errors import CapabilityError, InputError
from core.na_linalg import apply_map, f2_null_space, f2_rank, is_orthogonal, norm_of
from models.barcode import Bar, Barcode
from models.chain import FilteredComplex
from models.linalg import ActionValue, Combination, FilteredMap

MAX_SVD_ORACLE_DIM = 4
MAX_INTERLEAVING_BARS = 3


def _mask_to_combo(labels: tuple[str, ...], mask: int) -> Combination:
    return frozenset(labels[i] for i in range(len(labels)) if mask >> i & 1)


def exhaustive_svd_gaps(A: FilteredMap) -> set[tuple[ActionValue, ...]]:
    """Gap multisets over every orthogonal basis adapted to A.

    A domain basis qualifies when it is orthogonal, exactly dim(ker A) of its
    vectors map to zero and the nonzero images form an orthogonal family.

    Raises:
        CapabilityError: If the domain dimension exceeds the enumeration limit
    """
    n = A.domain.dim
    if n > MAX_SVD_ORACLE_DIM:
        raise CapabilityError(f"SVD oracle limited to dimension {MAX_SVD_ORACLE_DIM}, got {n}")
    if n == 0:
        return {()}
    rank = f2_rank(A.matrix)
    labels = A.domain.labels
    found: set[tuple[ActionValue, ...]] = set()
    for masks in itertools.combinations(range(1, 1 << n), n):
        basis = [_mask_to_combo(labels, m) for m in masks]
        coords = np.array([[m >> i & 1 for m in masks] for i in range(n)], dtype=np.uint8)
        if f2_rank(coords) < n:
            continue
        if not is_orthogonal(A.domain, basis, exhaustive=True):
            continue
        images = [apply_map(A, v) for v in basis]
        nonzero = [(v, w) for v, w in zip(basis, images) if w]
        if len(nonzero) != rank:
            continue
        if nonzero and not is_orthogonal(A.codomain, [w for _, w in nonzero], exhaustive=True):
            continue
        gaps = sorted(norm_of(A.domain, v) - norm_of(A.codomain, w) for v, w in nonzero)
        found.add(tuple(gaps))
    return found


def _critical_samples(values: list[ActionValue]) -> tuple[list[ActionValue], list[ActionValue]]:
    crit = sorted(set(values))
    samples = [crit[0] - 1]
    samples += [(a + b) / 2 for a, b in zip(crit, crit[1:])]
    samples.append(crit[-1] + 1)
    return crit, samples


def rank_function_barcode(c: FilteredComplex) -> Barcode:
    """Barcode recovered from ranks of all maps H(C^{<s}) -> H(C^{<t}).

    Samples s_0 < c_1 < s_1 < ... < c_m < s_m interleave the critical values. A bar
    (c_i, c_j] is alive exactly at s_i..s_{j-1}; multiplicities follow from
    inclusion-exclusion on the rank function.
    """
    space = c.space
    if space.dim == 0:
        return Barcode.empty()
    values = [space.norm[x] for x in space.labels]
    crit, samples = _critical_samples(values)
    m = len(crit)
    d = c.boundary.astype(np.uint8)

    def below(s: ActionValue) -> np.ndarray:
        return np.array([v < s for v in values], dtype=bool)

    def cycles(s: ActionValue) -> np.ndarray:
        cols = np.flatnonzero(below(s))
        if cols.size == 0:
            return np.zeros((space.dim, 0), dtype=np.uint8)
        null = f2_null_space(d[:, cols])
        Z = np.zeros((space.dim, null.shape[0]), dtype=np.uint8)
        Z[cols, :] = null.T
        return Z

    def boundaries(t: ActionValue) -> np.ndarray:
        return d[:, below(t)]

    Z = [cycles(s) for s in samples]
    B = [boundaries(t) for t in samples]

    def r(i: int, k: int) -> int:
        if i <= 0 or k > m or i > k:
            return 0
        dim_z = f2_rank(Z[i]) if Z[i].size else 0
        dim_b = f2_rank(B[k]) if B[k].size else 0
        joint = np.hstack([Z[i], B[k]])
        dim_sum = f2_rank(joint) if joint.size else 0
        return dim_z - (dim_z + dim_b - dim_sum)

    bars: list[Bar] = []
    for i in range(1, m + 1):
        for k in range(i, m + 1):
            mult = r(i, k) - r(i - 1, k) - r(i, k + 1) + r(i - 1, k + 1)
            if mult < 0:
                raise InputError(f"Negative multiplicity {mult} at ({i}, {k}); complex invalid")
            right = math.inf if k == m else float(crit[k])
            bars.extend(Bar(left=float(crit[i - 1]), right=right) for _ in range(mult))
    return Barcode(bars=tuple(bars))


def _overlap(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    return max(a, c), min(b, d)


def _hom_nonzero(src: tuple[float, float], dst: tuple[float, float], tol: float) -> bool:
    """Nonzero morphism k(a,b] -> k(c,d] exists iff c <= a < d <= b."""
    a, b = src
    c, d = dst
    if math.isinf(d) and not math.isinf(b):
        return False
    return c <= a + tol and a < d - tol and (d <= b + tol or math.isinf(b))


def _shifted(bar: tuple[float, float], delta: float) -> tuple[float, float]:
    return bar[0] - delta, bar[1] - delta


def _composite_ok(
    src: list[tuple[float, float]],
    mid: list[tuple[float, float]],
    phi: np.ndarray,
    psi: np.ndarray,
    delta: float,
    tol: float,
) -> bool:
    for i, bar_i in enumerate(src):
        for k, bar_k in enumerate(src):
            parity = 0
            for j, bar_j in enumerate(mid):
                if not (phi[j, i] and psi[k, j]):
                    continue
                lo, hi = _overlap(*bar_i, *_shifted(bar_j, delta))
                lo, hi = _overlap(lo, hi, *_shifted(bar_k, 2 * delta))
                if lo < hi - tol:
                    parity ^= 1
            target = int(i == k and bar_i[1] - bar_i[0] > 2 * delta + tol)
            if parity != target:
                return False
    return True


def interleaving_oracle(
    B1: Barcode, B2: Barcode, delta: float, tol: Optional[float] = None
) -> bool:
    """Search all F2 morphism pairs B1 -> B2[delta], B2 -> B1[delta] for an interleaving.

    Both composites must equal the 2*delta shift morphisms, whose components are
    nonzero exactly on bars longer than 2*delta.

    Raises:
        CapabilityError: If either barcode has more than three bars
    """
    if max(len(B1), len(B2)) > MAX_INTERLEAVING_BARS:
        raise CapabilityError(
            f"Interleaving oracle limited to {MAX_INTERLEAVING_BARS} bars per barcode"
        )
    tol = resolve_tol(tol)
    first = [(b.left, b.right) for b in B1.bars]
    second = [(b.left, b.right) for b in B2.bars]

    phi_support = [
        (j, i) for i in range(len(first)) for j in range(len(second))
        if _hom_nonzero(first[i], _shifted(second[j], delta), tol)
    ]
    psi_support = [
        (i, j) for j in range(len(second)) for i in range(len(first))
        if _hom_nonzero(second[j], _shifted(first[i], delta), tol)
    ]
    for phi_bits in itertools.product((0, 1), repeat=len(phi_support)):
        phi = np.zeros((len(second), len(first)), dtype=np.uint8)
        for (j, i), bit in zip(phi_support, phi_bits):
            phi[j, i] = bit
        for psi_bits in itertools.product((0, 1), repeat=len(psi_support)):
            psi = np.zeros((len(first), len(second)), dtype=np.uint8)
            for (i, j), bit in zip(psi_support, psi_bits):
                psi[i, j] = bit
            if _composite_ok(first, second, phi, psi, delta, tol) and _composite_ok(
                second, first, psi, phi, delta, tol
            ):
                return True
    return False


def interleaving_distance_oracle(B1: Barcode, B2: Barcode, tol: Optional[float] = None) -> float:
    """Smallest critical delta at which the oracle finds an interleaving (inf if none)."""
    ends = [b.left for b in B1.bars + B2.bars] + [
        b.right for b in B1.bars + B2.bars if not b.is_infinite
    ]
    candidates = {0.0}
    candidates.update(abs(x - y) for x in ends for y in ends)
    candidates.update(b.length / 2 for b in B1.bars + B2.bars if not b.is_infinite)
    for delta in sorted(candidates):
        if interleaving_oracle(B1, B2, delta, tol):
            return delta
    return math.inf
