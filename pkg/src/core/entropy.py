"""Barcode entropy estimation.

The epsilon-entropy of a barcode is the exponential growth rate in T of the
number of bars longer than epsilon in its truncation at T. Finite data cannot
realize a limsup, so every series carries two estimates: the least-squares
slope of log count over the upper half of the T-window and the max proxy
max log(count) / T.
"""

import logging
import math
from collections.abc import Sequence
from typing import Optional

import numpy as np
from scipy.stats import linregress

from config.settings import get_config, resolve_tol
from core.barcode_ops import (
    classify_bars,
    count_left_endpoint,
    count_truncated,
    infinite_bar_counts,
    n_eps,
    truncate,
)
from core.errors import InputError
from core.reeb_model import build_BH, build_SH, restrict_template
from models.barcode import Barcode
from models.entropy import EntropyProfile, EntropySeries, InvarianceReport
from models.enums import Counting
from models.reeb import BarcodeTemplate, RadialProfile

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 3


def _as_grid(T_grid: Sequence[float] | np.ndarray) -> np.ndarray:
    grid = np.asarray(T_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InputError("T_grid must be a non-empty list of values")
    if np.any(np.diff(grid) <= 0):
        raise InputError("T_grid must be strictly increasing")
    return grid


def fit_growth(
    T_grid: np.ndarray, counts: np.ndarray, eps: float, counting: Counting
) -> EntropySeries:
    """Fit log count against T over the upper half of the grid.

    Zero counts are skipped, never clamped. Fewer than three positive samples or
    constant counts give a degenerate series with slope 0.
    """
    start = len(T_grid) // 2
    window_T = T_grid[start:]
    window_c = counts[start:]
    positive = window_c > 0
    floor_hits = int(np.count_nonzero(~positive))
    samples = [(float(t), int(c)) for t, c in zip(T_grid, counts)]
    window = (float(window_T[0]), float(window_T[-1]))

    fit_T = window_T[positive]
    log_c = np.log(window_c[positive].astype(float))
    ratios = log_c[fit_T > 0] / fit_T[fit_T > 0]
    max_proxy = float(ratios.max()) if ratios.size else 0.0

    if fit_T.size < MIN_FIT_POINTS or np.all(log_c == log_c[0]):
        return EntropySeries(
            eps=eps,
            counting=counting,
            samples=samples,
            max_proxy=max_proxy,
            window=window,
            count_floor_hits=floor_hits,
            intercept=float(log_c[0]) if log_c.size else 0.0,
            degenerate=True,
        )

    fit = linregress(fit_T, log_c)
    residuals = log_c - (fit.intercept + fit.slope * fit_T)
    return EntropySeries(
        eps=eps,
        counting=counting,
        samples=samples,
        slope_estimate=float(fit.slope),
        max_proxy=max_proxy,
        window=window,
        residuals=residuals.tolist(),
        count_floor_hits=floor_hits,
        intercept=float(fit.intercept),
    )


def entropy_eps(
    B: Barcode,
    eps: float,
    T_grid: Sequence[float] | np.ndarray,
    counting: Counting = Counting.TRUNCATION,
    tol: Optional[float] = None,
) -> EntropySeries:
    """Epsilon-entropy estimate of a barcode over a T-grid.

    Args:
        B: Barcode on the period axis
        eps: Bar length threshold
        T_grid: Strictly increasing truncation levels
        counting: ``truncation`` counts n_eps(truncate(B, T)); ``left_endpoint``
            counts bars longer than eps with left endpoint <= T

    Raises:
        InputError: If eps <= 0 or the grid is not strictly increasing
    """
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    grid = _as_grid(T_grid)
    if counting == Counting.LEFT_ENDPOINT:
        counts = count_left_endpoint(B, eps, grid, tol)
    else:
        counts = count_truncated(B, eps, grid, tol)
    series = fit_growth(grid, np.asarray(counts), eps, Counting(counting))
    logger.debug(
        f"eps={eps}: slope {series.slope_estimate:.4f}, max proxy {series.max_proxy:.4f}"
        f"{' (degenerate)' if series.degenerate else ''}"
    )
    return series


def default_eps_grid(eps0: float, points: Optional[int] = None) -> list[float]:
    """Geometric grid eps0 * 2^-k, k = 0..points-1."""
    if eps0 <= 0:
        raise InputError(f"eps0 must be positive, got {eps0}")
    points = points or get_config().eps_grid_points
    return [eps0 * 2.0**-k for k in range(points)]


def entropy(
    B: Barcode,
    eps_grid: Sequence[float],
    T_grid: Sequence[float] | np.ndarray,
    counting: Counting = Counting.TRUNCATION,
    tol: Optional[float] = None,
) -> EntropyProfile:
    """Entropy estimate as the slope at the smallest epsilon, with the full profile.

    Slopes should not decrease as epsilon shrinks; a drop beyond the configured
    slope tolerance is logged as a warning.

    Raises:
        InputError: If eps_grid is empty or not strictly decreasing
    """
    if not eps_grid:
        raise InputError("eps_grid must not be empty")
    if any(b >= a for a, b in zip(eps_grid, eps_grid[1:])):
        raise InputError(f"eps_grid must be strictly decreasing: {list(eps_grid)}")
    series = [entropy_eps(B, eps, T_grid, counting, tol) for eps in eps_grid]
    slope_tol = get_config().slope_tolerance
    monotone = all(
        later.slope_estimate >= earlier.slope_estimate - slope_tol
        for earlier, later in zip(series, series[1:])
    )
    if not monotone:
        logger.warning(
            f"Non-monotone epsilon profile: {[round(s.slope_estimate, 4) for s in series]}"
        )
    return EntropyProfile(value=series[-1].slope_estimate, series=series, monotone=monotone)


def infinite_bar_growth(B: Barcode, T_grid: Sequence[float] | np.ndarray) -> EntropySeries:
    """Growth rate of the number of infinite bars with left endpoint <= T."""
    grid = _as_grid(T_grid)
    counts = infinite_bar_counts(B, grid)
    return fit_growth(grid, np.asarray(counts), math.inf, Counting.LEFT_ENDPOINT)


def sequence_entropy(
    scales: Sequence[float],
    barcodes: Sequence[Barcode],
    T: float,
    C: float,
    eps: float,
    tol: Optional[float] = None,
) -> float:
    """Limsup proxy of (1 / (a_i T)) log n_eps(truncate(B_i, a_i C)) over a sequence.

    ``barcodes[i]`` is the barcode of a_i H for a profile of slope T and constant C.
    Terms with no counted bars contribute 0.

    Raises:
        InputError: If the sequences differ in length or a parameter is not positive
    """
    if len(scales) != len(barcodes):
        raise InputError(f"{len(scales)} scales for {len(barcodes)} barcodes")
    if T <= 0 or C <= 0 or eps <= 0:
        raise InputError(f"T, C and eps must be positive, got {T}, {C}, {eps}")
    best = 0.0
    for a, B in zip(scales, barcodes):
        if a <= 0:
            raise InputError(f"Scales must be positive, got {a}")
        count = n_eps(truncate(B, a * C), eps, tol)
        if count > 0:
            best = max(best, math.log(count) / (a * T))
    return best


def equivalence_counts(
    tmpl: BarcodeTemplate, p: RadialProfile, eps: float, tol: Optional[float] = None
) -> tuple[int, int, int]:
    """(n_{r0 eps}(tru(B(H), C)), n_eps(tru(B_SH, T)), n_eps(tru(B(H), C))).

    The three counts are non-decreasing for every admissible pair.
    """
    B_H = truncate(build_BH(restrict_template(tmpl, p.T), p, tol), p.C)
    B_SH = truncate(build_SH(tmpl), p.T)
    return (
        n_eps(B_H, p.r0 * eps, tol),
        n_eps(B_SH, eps, tol),
        n_eps(B_H, eps, tol),
    )


def invariance_counts(
    B: Barcode, eps: float, T: float, betti: int, N_T: int, tol: Optional[float] = None
) -> InvarianceReport:
    """Type I-IV bookkeeping for a model SH barcode.

    n_Y = nI + 2 nII - betti. The weighted total nI + 2nII + nIII + 2nIV must
    equal betti + 2 N(T), and (n_Y + betti) / 2 <= nI + nII <= n_Y + betti.

    Examples:
        betti infinite bars at 0 and no orbits: counts (betti, 0, 0, 0), n_Y = 0
    """
    tol = resolve_tol(tol)
    counts = classify_bars(B, eps, T, tol)
    n_Y = counts.n_I + 2 * counts.n_II - betti
    expected = betti + 2 * N_T
    long_bars = counts.long_bars
    return InvarianceReport(
        eps=eps,
        T=T,
        counts=counts,
        n_Y=n_Y,
        identity_ok=counts.weighted_total == expected,
        sandwich_ok=(n_Y + betti) / 2 <= long_bars <= n_Y + betti,
        expected_total=expected,
    )
