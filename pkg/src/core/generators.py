"""Seeded random instances: maps, complexes, short-bar queries, barcodes and spectra.

Valid complexes are built in canonical form (disjoint pairs z -> y with y below z)
and conjugated by a random unitriangular change of basis that never raises
actions, so the result is a valid complex with the same barcode as the pairs.
"""

import logging
from fractions import Fraction
from typing import Optional

import galois
import numpy as np

from core.errors import PreconditionError
from core.filtered_complex import query_violations
from models.barcode import Barcode
from models.chain import FilteredComplex, ShortBarQuery
from models.linalg import ActionValue, FilteredMap, OrthoSpace
from models.reeb import ReebSpectrum

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)

MAX_REJECTIONS = 50


def _f2_inverse(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return matrix.copy()
    return np.asarray(np.linalg.inv(GF2(matrix.astype(np.uint8))), dtype=np.uint8)


def _conjugate(P: np.ndarray, J: np.ndarray) -> np.ndarray:
    """P J P^-1 over F2."""
    P64 = P.astype(np.int64)
    return (P64 @ J.astype(np.int64) @ _f2_inverse(P).astype(np.int64)) % 2


def distinct_values(
    rng: np.random.Generator,
    n: int,
    low: float = 0.0,
    spacing: float = 0.25,
    jitter: float = 0.02,
    exact: bool = False,
) -> list[ActionValue]:
    """n distinct values on a jittered grid, pairwise at least spacing - jitter apart."""
    slots = np.sort(rng.choice(max(4 * n, 1), size=n, replace=False))
    if exact:
        jit = rng.integers(0, 4, size=n)
        return [
            Fraction(low).limit_denominator() + Fraction(int(s), 4) + Fraction(int(j), 400)
            for s, j in zip(slots, jit)
        ]
    return [float(low + spacing * s + rng.uniform(0.0, jitter)) for s in slots]


def random_pairing(rng: np.random.Generator, n: int, n_pairs: Optional[int] = None) -> np.ndarray:
    """Canonical differential on positions 0..n-1 (ascending action): disjoint z -> y, y < z."""
    J = np.zeros((n, n), dtype=np.uint8)
    if n < 2:
        return J
    if n_pairs is None:
        n_pairs = int(rng.integers(0, n // 2 + 1))
    chosen = rng.permutation(n)[: 2 * n_pairs]
    for k in range(n_pairs):
        y, z = sorted(chosen[2 * k : 2 * k + 2])
        J[y, z] = 1
    return J


def lower_unitriangular(
    rng: np.random.Generator, values: list[ActionValue], density: float = 0.4, gap: float = 0.0
) -> np.ndarray:
    """I + N with N[i, j] = 1 only when values[i] < values[j] - gap (positions sorted)."""
    n = len(values)
    P = np.eye(n, dtype=np.uint8)
    for j in range(n):
        for i in range(j):
            if values[i] < values[j] - gap and rng.random() < density:
                P[i, j] = 1
    return P


def random_complex(
    rng: np.random.Generator,
    dim: int,
    spacing: float = 0.25,
    exact: bool = False,
    n_pairs: Optional[int] = None,
) -> FilteredComplex:
    """Valid random complex with distinct actions at least ``spacing - 0.02`` apart."""
    values = distinct_values(rng, dim, spacing=spacing, exact=exact)
    J = random_pairing(rng, dim, n_pairs)
    P = lower_unitriangular(rng, values)
    d_sorted = _conjugate(P, J)

    # Shuffle positions so label order differs from action order.
    perm = rng.permutation(dim)
    labels = tuple(f"g{p}" for p in range(dim))
    space = OrthoSpace(labels=labels, norm={f"g{p}": values[perm[p]] for p in range(dim)})
    return FilteredComplex(space=space, boundary=d_sorted[np.ix_(perm, perm)])


def _block_complex(
    low_values: list[ActionValue],
    high_values: list[ActionValue],
    A: np.ndarray,
    M: np.ndarray,
    K: np.ndarray,
) -> np.ndarray:
    """Q (A + M) Q with Q = [[I, K], [0, I]]; Q is its own inverse over F2."""
    n, m = len(low_values), len(high_values)
    Q = np.eye(n + m, dtype=np.int64)
    Q[:n, n:] = K
    D = np.zeros((n + m, n + m), dtype=np.int64)
    D[:n, :n] = A
    D[n:, n:] = M
    return (Q @ D @ Q) % 2


def _modify_long_pairs(
    rng: np.random.Generator, J: np.ndarray, values: list[ActionValue], eta: float
) -> np.ndarray:
    """Drop or retarget pairs longer than eta; short pairs are left alone."""
    Jp = J.copy()
    n = len(values)
    for z in range(n):
        ys = np.flatnonzero(Jp[:, z])
        if ys.size == 0:
            continue
        y = int(ys[0])
        if not values[y] < values[z] - eta:
            continue
        action = rng.integers(0, 3)
        if action == 0:
            continue
        Jp[y, z] = 0
        if action == 2:
            sources = set(np.flatnonzero(Jp.any(axis=0)))
            targets = set(np.flatnonzero(Jp.any(axis=1)))
            free = [
                k
                for k in range(n)
                if k not in sources and k not in targets and k != z
                and values[k] < values[z] - eta
            ]
            if free:
                Jp[int(rng.choice(free)), z] = 1
    return Jp


def random_short_bar_query(
    rng: np.random.Generator,
    max_dim: int = 8,
    eta: float = 0.5,
    E: float = 5.0,
) -> ShortBarQuery:
    """Random query satisfying both hypotheses, with total dimension <= max_dim per side.

    The high part of D is the high part of C with long pairs dropped or retargeted
    and then conjugated by a change of basis that lowers actions by more than eta.

    Raises:
        PreconditionError: If no valid instance is found within the rejection budget
    """
    for _ in range(MAX_REJECTIONS):
        dim_w = int(rng.integers(1, max(2, max_dim - 2)))
        dim_v1 = int(rng.integers(0, max_dim - dim_w + 1))
        dim_v2 = int(rng.integers(0, max_dim - dim_w + 1))

        v1_values = sorted(float(x) for x in rng.uniform(0.0, E, size=dim_v1))
        v2_values = sorted(float(x) for x in rng.uniform(0.0, E, size=dim_v2))
        w_values = sorted(float(x) for x in E + 0.01 + rng.uniform(0.0, 4.0, size=dim_w))

        A1 = _conjugate(lower_unitriangular(rng, v1_values), random_pairing(rng, dim_v1))
        A2 = _conjugate(lower_unitriangular(rng, v2_values), random_pairing(rng, dim_v2))

        J = random_pairing(rng, dim_w)
        P = lower_unitriangular(rng, w_values)
        M = _conjugate(P, J)
        Jp = _modify_long_pairs(rng, J, w_values, eta)
        P2 = lower_unitriangular(rng, w_values, gap=eta)
        M2 = _conjugate(P2, _conjugate(P, Jp))

        K1 = rng.integers(0, 2, size=(dim_v1, dim_w))
        K2 = rng.integers(0, 2, size=(dim_v2, dim_w))
        d_C = _block_complex(v1_values, w_values, A1, M, K1)
        d_D = _block_complex(v2_values, w_values, A2, M2, K2)

        V1 = OrthoSpace.from_pairs((f"a{i}", v) for i, v in enumerate(v1_values))
        V2 = OrthoSpace.from_pairs((f"b{i}", v) for i, v in enumerate(v2_values))
        W = OrthoSpace.from_pairs((f"w{i}", v) for i, v in enumerate(w_values))
        query = ShortBarQuery(V1=V1, V2=V2, W=W, d_C=d_C, d_D=d_D, E=E, eta=eta)
        if not query_violations(query):
            return query
        logger.debug("Rejected short-bar query instance")
    raise PreconditionError("generator", "no valid short-bar query within rejection budget")


def random_barcode(
    rng: np.random.Generator,
    n_bars: int,
    span: float = 10.0,
    max_length: float = 4.0,
    p_infinite: float = 0.15,
) -> Barcode:
    """Random finite barcode with some infinite bars."""
    lefts = rng.uniform(0.0, span, size=n_bars)
    lengths = rng.uniform(0.01, max_length, size=n_bars)
    rights = np.where(rng.random(n_bars) < p_infinite, np.inf, lefts + lengths)
    return Barcode.from_arrays(lefts, rights)


def random_filtered_map(
    rng: np.random.Generator, max_dim: int = 4, exact: bool = False
) -> FilteredMap:
    """Random F2 map between spaces of dimension 1..max_dim with distinct values."""
    n = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(1, max_dim + 1))
    domain = OrthoSpace.from_pairs(
        (f"x{i}", v) for i, v in enumerate(distinct_values(rng, n, exact=exact))
    )
    codomain = OrthoSpace.from_pairs(
        (f"y{i}", v) for i, v in enumerate(distinct_values(rng, m, exact=exact))
    )
    return FilteredMap(domain=domain, codomain=codomain, matrix=rng.integers(0, 2, size=(m, n)))


def random_spectrum(
    rng: np.random.Generator,
    n_periods: int = 12,
    low: float = 0.3,
    high: float = 12.0,
    max_mult: int = 2,
) -> ReebSpectrum:
    """Small random spectrum with periods uniform in (low, high)."""
    periods = np.round(rng.uniform(low, high, size=n_periods), 6)
    mults = rng.integers(1, max_mult + 1, size=n_periods)
    return ReebSpectrum.from_periods(np.repeat(periods, mults), label="random")


def separated_spectrum(
    rng: np.random.Generator, n_periods: int = 4, min_gap: float = 1.0, max_mult: int = 2
) -> ReebSpectrum:
    """Spectrum with consecutive periods (and the first period) at least min_gap apart."""
    periods = np.cumsum(rng.uniform(min_gap, 2 * min_gap, size=n_periods))
    mults = rng.integers(1, max_mult + 1, size=n_periods)
    return ReebSpectrum.from_periods(np.repeat(periods, mults), label="separated")
