"""Synthetic Reeb models: spectra, barcode templates, radial profiles and the
barcodes B(H), B(H_delta) and B_SH built from them.

Action values of a convex radial Hamiltonian are obtained from orbit periods
through the reparametrization s_h(t) = r h'(r) - h(r) with h'(r) = t.
"""

import logging
import math
from collections import deque
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from numpy.polynomial import Polynomial

from config.settings import get_config, resolve_tol
from core.barcode_ops import positive_short_bars, reparametrize, same_barcode, truncate
from core.errors import DomainError, InputError, PreconditionError
from models.barcode import Barcode, Reparametrization
from models.enums import SpectrumKind, TemplatePolicy
from models.reeb import BarcodeTemplate, RadialProfile, ReebSpectrum
from utils.formats import read_spectrum

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]


# ---------------------------------------------------------------------------
# Radial profiles
# ---------------------------------------------------------------------------


def polynomial_profile(
    T: float, r0: float, coeffs: Sequence[float], name: str = ""
) -> RadialProfile:
    """Convex profile lam * sum_k c_k (r-1)^(k+2) on [1, r0], linear of slope T beyond.

    The scale lam is chosen so that h'(r0) = T.

    Args:
        T: Slope at infinity
        r0: Radius where h becomes linear
        coeffs: Coefficients of (r-1)^2, (r-1)^3, ...; non-negative with a positive
            leading quadratic term

    Raises:
        InputError: If the parameters do not give an admissible profile

    Examples:
        polynomial_profile(4.0, 3.0, [1.0]) is h(r) = (r-1)^2 with C = 8
    """
    if T <= 0 or r0 <= 1:
        raise InputError(f"Need T > 0 and r0 > 1, got T={T}, r0={r0}")
    if not coeffs or coeffs[0] <= 0 or any(c < 0 for c in coeffs):
        raise InputError(
            f"Coefficients must be non-negative with a positive quadratic term: {coeffs}"
        )

    poly = Polynomial([0.0, 0.0, *[float(c) for c in coeffs]])
    lam = T / float(poly.deriv()(r0 - 1.0))
    poly = lam * poly
    dpoly = poly.deriv()
    C = r0 * T - float(poly(r0 - 1.0))

    def h(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.where(r <= r0, poly(r - 1.0), T * r - C)

    def dh(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.where(r <= r0, dpoly(r - 1.0), T)

    label = name or "poly(" + ",".join(f"{c:g}" for c in coeffs) + ")"
    return RadialProfile(h=h, dh=dh, r0=float(r0), T=float(T), name=label)


def random_profile(
    rng: np.random.Generator,
    spectrum: Optional[ReebSpectrum] = None,
    T: Optional[float] = None,
    T_range: tuple[float, float] = (2.0, 10.0),
    r0_range: tuple[float, float] = (1.5, 4.0),
    max_degree: int = 4,
) -> RadialProfile:
    """Random admissible polynomial profile whose slope avoids the spectrum."""
    if T is None:
        T = float(rng.uniform(*T_range))
    if spectrum is not None:
        gap = min(spectrum.min_gap, 1.0) / 4
        while spectrum.contains(T, tol=gap / 2):
            T += gap
    r0 = float(rng.uniform(*r0_range))
    degree = int(rng.integers(2, max_degree + 1))
    coeffs = rng.uniform(0.1, 1.0, size=degree - 1)
    return polynomial_profile(T, r0, coeffs.tolist())


def validate_profile(
    p: RadialProfile, samples: Optional[int] = None, tol: Optional[float] = None
) -> list[str]:
    """Certify a profile on a sample grid of [1, r0].

    Returns:
        Issues found; empty when h(1) = h'(1) = 0, h' is non-decreasing, h is
        convex on the grid and h'(r0) = T
    """
    samples = samples or get_config().convexity_samples
    tol = resolve_tol(tol)
    scale = max(1.0, p.T)
    r = np.linspace(1.0, p.r0, samples)
    h = np.asarray(p.h(r), dtype=float)
    dh = np.asarray(p.dh(r), dtype=float)

    issues: list[str] = []
    if abs(h[0]) > tol * scale:
        issues.append(f"h(1) = {h[0]} != 0")
    if abs(dh[0]) > tol * scale:
        issues.append(f"h'(1) = {dh[0]} != 0")
    drops = np.flatnonzero(np.diff(dh) < -tol * scale)
    if drops.size:
        i = int(drops[0])
        issues.append(f"h' decreases near r = {r[i]}")
    bends = np.flatnonzero(np.diff(h, 2) < -tol * scale)
    if bends.size:
        issues.append(f"h not convex near r = {r[int(bends[0]) + 1]}")
    if abs(dh[-1] - p.T) > tol * scale:
        issues.append(f"h'(r0) = {dh[-1]} != T = {p.T}")
    return issues


# ---------------------------------------------------------------------------
# Period -> action reparametrization
# ---------------------------------------------------------------------------


def _bisect(
    p: RadialProfile, fn: Callable[[np.ndarray], np.ndarray], target: np.ndarray
) -> np.ndarray:
    """Smallest r in [1, r0] with fn(r) >= target, for non-decreasing fn."""
    tol = get_config().bisection_tol
    lo = np.ones_like(target)
    hi = np.full_like(target, p.r0)
    steps = max(1, math.ceil(math.log2((p.r0 - 1.0) / tol)) + 1)
    for _ in range(steps):
        mid = (lo + hi) / 2
        below = np.asarray(fn(mid)) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return (lo + hi) / 2


def s_h_array(p: RadialProfile, t: ArrayLike, tol: Optional[float] = None) -> np.ndarray:
    """Vectorized s_h over periods in [0, T].

    Raises:
        DomainError: If any period lies outside [0, T]
    """
    tol = resolve_tol(tol)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    outside = (t_arr < -tol) | (t_arr > p.T + tol)
    if np.any(outside):
        bad = float(t_arr[np.flatnonzero(outside)[0]])
        raise DomainError(f"s_h is defined on [0, {p.T}], got t = {bad}")
    t_arr = np.clip(t_arr, 0.0, p.T)
    r = _bisect(p, p.dh, t_arr)
    return r * t_arr - np.asarray(p.h(r), dtype=float)


def s_h(p: RadialProfile, t: float, tol: Optional[float] = None) -> float:
    """Hamiltonian action of a period-t orbit: r h'(r) - h(r) where h'(r) = t.

    Examples:
        h = (r-1)^2, T = 4, r0 = 3: s_h(0) = 0, s_h(2) = 3, s_h(4) = C = 8
    """
    return float(s_h_array(p, t, tol)[0])


def s_h_inverse_array(p: RadialProfile, s: ArrayLike, tol: Optional[float] = None) -> np.ndarray:
    """Periods with the given actions, for actions in [0, C]."""
    tol = resolve_tol(tol)
    C = p.C
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    outside = (s_arr < -tol) | (s_arr > C + tol * max(1.0, C))
    if np.any(outside):
        bad = float(s_arr[np.flatnonzero(outside)[0]])
        raise DomainError(f"s_h^-1 is defined on [0, {C}], got s = {bad}")
    s_arr = np.clip(s_arr, 0.0, C)

    def action(r: np.ndarray) -> np.ndarray:
        return r * np.asarray(p.dh(r)) - np.asarray(p.h(r))

    r = _bisect(p, action, s_arr)
    return np.asarray(p.dh(r), dtype=float)


def period_action_map(p: RadialProfile) -> Reparametrization:
    """s_h extended to the whole line: identity below 0, translation by C - T above T.

    ``forward`` sends periods to actions, so acting on an action-axis barcode
    moves it to the period axis.
    """
    T, C = p.T, p.C

    def forward(t: float) -> float:
        if t < 0:
            return t
        if t > T:
            return t + (C - T)
        return float(s_h_array(p, t)[0])

    def inverse(s: float) -> float:
        if s < 0:
            return s
        if s > C:
            return s - (C - T)
        return float(s_h_inverse_array(p, s)[0])

    return Reparametrization(forward=forward, inverse=inverse, name=f"s_{p.name}")


def s_h_bounds_check(p: RadialProfile, t1: float, t2: float, tol: Optional[float] = None) -> bool:
    """True iff t2 - t1 <= s_h(t2) - s_h(t1) <= r0 (t2 - t1).

    Raises:
        InputError: If t1 > t2
        DomainError: If either period lies outside [0, T]
    """
    if t1 > t2:
        raise InputError(f"Need t1 <= t2, got {t1} > {t2}")
    slack = resolve_tol(tol) * max(1.0, p.C)
    s1, s2 = s_h_array(p, [t1, t2], tol)
    gap = float(s2 - s1)
    return (t2 - t1) - slack <= gap <= p.r0 * (t2 - t1) + slack


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------


def _nearest(values: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Index of the closest entry of sorted, non-empty ``values`` for each point of ``x``."""
    if values.size == 1:
        return np.zeros(x.shape, dtype=np.int64)
    hi = np.clip(np.searchsorted(values, x), 1, values.size - 1)
    lo = hi - 1
    return np.where(np.abs(x - values[lo]) <= np.abs(values[hi] - x), lo, hi)


def _incidences(B: Barcode, values: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint incidence count at each value, plus endpoints matching no value.

    Left endpoints at 0 and infinite right endpoints are not incidences.
    """
    lefts, rights, _ = B.as_arrays()
    endpoints = np.concatenate([lefts[lefts > tol], rights[np.isfinite(rights)]])
    if values.size == 0:
        return np.zeros(0, dtype=np.int64), endpoints
    idx = _nearest(values, endpoints)
    match = np.abs(values[idx] - endpoints) <= tol
    counts = np.bincount(idx[match], minlength=values.size)
    return counts, endpoints[~match]


def validate_template(tmpl: BarcodeTemplate, tol: Optional[float] = None) -> list[str]:
    """Issues with a template: stray endpoints, wrong incidence counts, wrong betti."""
    tol = resolve_tol(tol)
    issues: list[str] = []
    lefts, _, _ = tmpl.period_bars.as_arrays()
    if np.any(lefts < -tol):
        issues.append(f"negative left endpoint {float(lefts.min())}")
    zero_left = int(np.count_nonzero(np.abs(lefts) <= tol))
    if zero_left != tmpl.betti:
        issues.append(f"{zero_left} bars start at 0, expected betti = {tmpl.betti}")

    values = tmpl.spectrum.periods
    counts, stray = _incidences(tmpl.period_bars, values, tol)
    if stray.size:
        issues.append(f"endpoint {float(stray[0])} is not a period")
    wrong = np.flatnonzero(counts != 2 * tmpl.spectrum.mults)
    for k in wrong[:5]:
        issues.append(
            f"period {values[k]}: {counts[k]} incidences, expected {2 * tmpl.spectrum.mults[k]}"
        )
    return issues


def _pair_tokens(
    values: np.ndarray,
    tokens: np.ndarray,
    policy: TemplatePolicy,
    zero_bars: int = 0,
    rng: Optional[np.random.Generator] = None,
    fraction: float = 0.5,
    min_length: float = 0.2,
) -> tuple[np.ndarray, np.ndarray]:
    """Pair endpoint tokens into bars, sweeping values upward.

    At each value some tokens close bars that are still open and the rest open
    new bars. Bars left open at the end are infinite. ``zero_bars`` bars open at
    0 beforehand; only the random policy may close them.
    """
    rng = rng or np.random.default_rng(0)
    lefts: list[float] = []
    rights: list[float] = []

    def close(left: float, right: float) -> None:
        lefts.append(left)
        rights.append(right)

    if policy == TemplatePolicy.RANDOM:
        pool = [0.0] * zero_bars
    else:
        pool = []
        for _ in range(zero_bars):
            close(0.0, math.inf)

    queue: deque[float] = deque()
    previous: list[float] = []
    for t, k in zip(values.tolist(), tokens.tolist()):
        if policy == TemplatePolicy.NESTED:
            n_close = min(k, len(pool))
            for _ in range(n_close):
                close(pool.pop(), t)
            pool.extend([t] * (k - n_close))
        elif policy == TemplatePolicy.RANDOM:
            n_close = int(rng.integers(0, min(k, len(pool)) + 1))
            for _ in range(n_close):
                i = int(rng.integers(0, len(pool)))
                pool[i], pool[-1] = pool[-1], pool[i]
                close(pool.pop(), t)
            pool.extend([t] * (k - n_close))
        elif policy == TemplatePolicy.SHORT_BIAS:
            n_close = 0
            kept: list[float] = []
            for left in previous:
                if n_close < k and rng.random() < fraction:
                    close(left, t)
                    n_close += 1
                else:
                    kept.append(left)
            pool.extend(kept)
            previous = [t] * (k - n_close)
        elif policy == TemplatePolicy.SEPARATED:
            n_close = 0
            while n_close < k and queue and queue[0] <= t - min_length:
                close(queue.popleft(), t)
                n_close += 1
            queue.extend([t] * (k - n_close))
        else:
            raise InputError(f"Unknown template policy: {policy}")

    for left in [*pool, *previous, *queue]:
        close(left, math.inf)
    return np.asarray(lefts, dtype=float), np.asarray(rights, dtype=float)


def gen_template(
    spectrum: ReebSpectrum,
    betti: int,
    policy: TemplatePolicy = TemplatePolicy.NESTED,
    seed: Optional[int] = None,
    fraction: float = 0.5,
    min_length: float = 0.2,
) -> BarcodeTemplate:
    """Pair the 2 * mult(t) endpoint incidences of every period into a template.

    Args:
        spectrum: Period spectrum
        betti: Number of bars starting at 0
        policy: nested (LIFO), random, short_bias (close against the previous
            period with probability ``fraction``) or separated (FIFO, bars of
            length >= ``min_length``)
        seed: Seed for the random policies

    Raises:
        InputError: If betti < 1 or the policy parameters are out of range
        PreconditionError: If the result fails validation

    Examples:
        spectrum {1 x1, 2 x1}, betti 1, nested -> {(0,inf), (1,2], (1,2]}
    """
    if betti < 1:
        raise InputError(f"betti must be >= 1, got {betti}")
    if not 0.0 <= fraction <= 1.0:
        raise InputError(f"fraction must lie in [0, 1], got {fraction}")
    if min_length <= 0:
        raise InputError(f"min_length must be positive, got {min_length}")

    lefts, rights = _pair_tokens(
        spectrum.periods,
        2 * spectrum.mults,
        TemplatePolicy(policy),
        zero_bars=betti,
        rng=np.random.default_rng(seed),
        fraction=fraction,
        min_length=min_length,
    )
    tmpl = BarcodeTemplate(
        betti=betti, spectrum=spectrum, period_bars=Barcode.from_arrays(lefts, rights)
    )
    issues = validate_template(tmpl)
    if issues:
        logger.error(f"Generated template is invalid: {issues}")
        raise PreconditionError("template", issues[0])
    logger.debug(f"Template ({policy}): {len(tmpl.period_bars)} bars over {spectrum.total} orbits")
    return tmpl


def restrict_template(tmpl: BarcodeTemplate, T: float) -> BarcodeTemplate:
    """Part of a template visible below slope T.

    Bars starting at or after T are dropped; right endpoints at or after T
    become infinite.
    """
    lefts, rights, _ = tmpl.period_bars.as_arrays()
    keep = lefts < T
    rights = np.where(rights[keep] >= T, math.inf, rights[keep])
    return BarcodeTemplate.model_construct(
        betti=tmpl.betti,
        spectrum=tmpl.spectrum.below(T),
        period_bars=Barcode.from_arrays(lefts[keep], rights),
    )


def refill_template(
    tmpl: BarcodeTemplate,
    betti: int,
    C: float,
    min_length: float,
    tol: Optional[float] = None,
) -> BarcodeTemplate:
    """Another filling of the same boundary.

    Keeps the bars with positive left endpoint and length <= C, releases every
    other incidence and re-pairs the released ones into bars longer than C.
    The new filling starts ``betti`` infinite bars at 0.

    Raises:
        InputError: If min_length <= C or betti < 1
    """
    if min_length <= C:
        raise InputError(f"min_length must exceed C: {min_length} <= {C}")
    if betti < 1:
        raise InputError(f"betti must be >= 1, got {betti}")
    tol = resolve_tol(tol)

    kept = positive_short_bars(tmpl.period_bars, C, tol)
    values = tmpl.spectrum.periods
    kept_counts, _ = _incidences(kept, values, tol)
    released = 2 * tmpl.spectrum.mults - kept_counts

    lefts, rights = _pair_tokens(
        values, released, TemplatePolicy.SEPARATED, zero_bars=betti, min_length=min_length
    )
    bars = Barcode.from_arrays(lefts, rights) + kept
    return BarcodeTemplate(betti=betti, spectrum=tmpl.spectrum, period_bars=bars)


# ---------------------------------------------------------------------------
# Barcodes of the model
# ---------------------------------------------------------------------------


def build_BH(tmpl: BarcodeTemplate, p: RadialProfile, tol: Optional[float] = None) -> Barcode:
    """Barcode of the convex radial Hamiltonian with profile p.

    Every finite template endpoint t moves to s_h(t); 0 and inf stay fixed.

    Raises:
        PreconditionError: If the template or profile is invalid or T is a period
        DomainError: If a finite template endpoint is >= T
    """
    tol = resolve_tol(tol)
    issues = validate_template(tmpl, tol)
    if issues:
        raise PreconditionError("template", issues[0])
    issues = validate_profile(p)
    if issues:
        raise PreconditionError("profile", issues[0])
    if tmpl.spectrum.contains(p.T, tol):
        raise PreconditionError("slope", f"T = {p.T} is a period", witness=p.T)

    lefts, rights, opens = tmpl.period_bars.as_arrays()
    finite = np.isfinite(rights)
    too_long = np.concatenate([lefts[lefts >= p.T], rights[finite & (rights >= p.T)]])
    if too_long.size:
        raise DomainError(
            f"Template endpoint {float(too_long.min())} >= T = {p.T}; slope too small"
        )

    positive = lefts > tol
    new_lefts = np.where(positive, lefts, 0.0)
    if np.any(positive):
        new_lefts[positive] = s_h_array(p, lefts[positive], tol)
    new_rights = rights.copy()
    if np.any(finite):
        new_rights[finite] = s_h_array(p, rights[finite], tol)
    return Barcode.from_arrays(new_lefts, new_rights, opens)


def build_SH(tmpl: BarcodeTemplate) -> Barcode:
    """Model SH barcode on the period axis: the template's own bars."""
    return tmpl.period_bars


def reparametrization_identity(
    tmpl: BarcodeTemplate, p: RadialProfile, tol: Optional[float] = None
) -> bool:
    """Check that moving tru(B(H), C) to the period axis gives tru(B_SH, T)."""
    tol = resolve_tol(tol)
    B_H = build_BH(restrict_template(tmpl, p.T), p, tol)
    period_side = reparametrize(truncate(B_H, p.C), period_action_map(p), tol)
    expected = truncate(build_SH(tmpl), p.T)
    return same_barcode(period_side, expected, tol=max(tol, 1e-9) * max(1.0, p.T))


def morse_perturb(
    B_H: Barcode,
    p: RadialProfile,
    tmpl: BarcodeTemplate,
    delta: float,
    n_crit: Optional[int] = None,
    tol: Optional[float] = None,
) -> Barcode:
    """Model barcode of a Morse perturbation H_delta of H.

    At every action s = s_h(t) half of the incidences stay at s and half move
    to s + delta. The betti bars at 0 start at the first critical values
    delta * k / n_crit and the remaining critical values pair into short bars
    inside (0, delta].

    Raises:
        InputError: If delta <= 0 or n_crit is incompatible with betti
        PreconditionError: If 3 delta is not below the spacing of the actions,
            or B_H does not carry the template's incidences
    """
    if delta <= 0:
        raise InputError(f"delta must be positive, got {delta}")
    betti = tmpl.betti
    n_crit = betti if n_crit is None else n_crit
    if n_crit < betti or (n_crit - betti) % 2:
        raise InputError(f"n_crit = {n_crit} must be >= betti = {betti} with the same parity")
    tol = resolve_tol(tol)

    spectrum = tmpl.spectrum.below(p.T)
    actions = s_h_array(p, spectrum.periods, tol) if spectrum.entries else np.zeros(0)
    points = np.concatenate([[0.0], actions])
    spacing = float(np.min(np.diff(points))) if points.size > 1 else math.inf
    if not 3 * delta < spacing:
        raise PreconditionError(
            "spacing", f"3 * delta = {3 * delta} >= action spacing {spacing}", witness=spacing
        )

    lefts, rights, opens = B_H.as_arrays()
    zero = np.flatnonzero(lefts <= tol)
    if zero.size != betti:
        raise PreconditionError("template", f"{zero.size} bars start at 0, expected {betti}")
    positive = np.flatnonzero(lefts > tol)
    finite = np.flatnonzero(np.isfinite(rights))

    # Endpoint table: (bar index, is_right, value)
    bar_idx = np.concatenate([positive, finite])
    is_right = np.concatenate([np.zeros(positive.size, bool), np.ones(finite.size, bool)])
    values = np.concatenate([lefts[positive], rights[finite]])
    slack = tol * max(1.0, float(points[-1]))
    spot = _nearest(actions, values) if actions.size else np.zeros(values.size, dtype=np.int64)
    if values.size and (actions.size == 0 or np.any(np.abs(actions[spot] - values) > slack)):
        raise PreconditionError("template", "B_H has an endpoint off the action spectrum")
    mults = spectrum.mults
    if np.any(np.bincount(spot, minlength=actions.size) != 2 * mults):
        raise PreconditionError("template", "B_H incidence counts differ from 2 * mult")

    order = np.argsort(spot, kind="stable")
    sorted_spot = spot[order]
    rank = np.arange(order.size) - np.searchsorted(sorted_spot, sorted_spot, side="left")
    moved = np.zeros(order.size, dtype=bool)
    moved[order] = rank >= mults[sorted_spot]

    new_lefts = lefts.copy()
    new_rights = rights.copy()
    shift_left = moved & ~is_right
    shift_right = moved & is_right
    new_lefts[bar_idx[shift_left]] += delta
    new_rights[bar_idx[shift_right]] += delta

    critical = delta * np.arange(n_crit) / n_crit
    new_lefts[zero] = critical[:betti]
    extra = critical[betti:].reshape(-1, 2)
    return Barcode.from_arrays(
        np.concatenate([new_lefts, extra[:, 0]]),
        np.concatenate([new_rights, extra[:, 1]]),
        np.concatenate([opens, np.zeros(len(extra), dtype=bool)]),
    )


# ---------------------------------------------------------------------------
# Spectra and slope sequences
# ---------------------------------------------------------------------------


def _hyperbolic_spectrum(rate: float, T_max: float, rng: np.random.Generator) -> ReebSpectrum:
    """Poisson process with E N(T) = e^(rate T) - 1 on (0, T_max]."""
    total = math.expm1(rate * T_max)
    count = int(rng.poisson(total))
    periods = np.log1p(rng.uniform(0.0, total, size=count)) / rate
    periods = periods[np.round(periods, 12) > 0]
    return ReebSpectrum.from_periods(
        periods,
        oracle_growth=rate,
        label=f"hyperbolic(rate={rate}, T_max={T_max})",
        merge_tol=resolve_tol(),
    )


def _quasiperiodic_spectrum(base: Sequence[float], T_max: float) -> ReebSpectrum:
    """Iterates k * p of every base period up to T_max."""
    if not base or any(b <= 0 for b in base):
        raise InputError(f"Base periods must be positive: {base}")
    periods = np.concatenate(
        [b * np.arange(1, math.floor(T_max / b) + 1) for b in base]
    )
    label = "quasiperiodic(" + ",".join(f"{b:g}" for b in base) + f"; T_max={T_max})"
    return ReebSpectrum.from_periods(
        periods, oracle_growth=0.0, label=label, merge_tol=resolve_tol()
    )


def gen_spectrum(
    kind: Union[SpectrumKind, str], params: Mapping[str, Any], seed: Optional[int] = None
) -> ReebSpectrum:
    """Generate a period spectrum.

    Args:
        kind: quasiperiodic (``base_periods``, ``T_max``), hyperbolic (``rate``,
            ``T_max``) or custom (``path`` of a spectrum JSON file)
        params: Parameters for the chosen kind
        seed: Seed for the hyperbolic point process

    Raises:
        InputError: On missing or invalid parameters, or an unreadable file
    """
    kind = SpectrumKind(kind)
    try:
        if kind == SpectrumKind.HYPERBOLIC:
            rate = float(params["rate"])
            T_max = float(params["T_max"])
            if rate <= 0 or T_max <= 0:
                raise InputError(f"rate and T_max must be positive, got {rate}, {T_max}")
            spectrum = _hyperbolic_spectrum(rate, T_max, np.random.default_rng(seed))
        elif kind == SpectrumKind.QUASIPERIODIC:
            base = [float(b) for b in params["base_periods"]]
            spectrum = _quasiperiodic_spectrum(base, float(params["T_max"]))
        else:
            spectrum = read_spectrum(Path(params["path"]))
            if spectrum.min_gap <= resolve_tol():
                raise InputError(
                    f"Periods closer than the tolerance {resolve_tol()}: min gap {spectrum.min_gap}"
                )
    except KeyError as e:
        raise InputError(f"Missing parameter {e} for {kind.value} spectrum") from e

    logger.info(f"Generated {spectrum.label or kind.value}: {spectrum.total} orbits")
    return spectrum


def scaling_sequence(spectrum: ReebSpectrum, T: float, n: int) -> list[float]:
    """Scales a_1..a_n with a_i in (i - 2^-i, i + 2^-i) and a_i * T off the spectrum.

    Each a_i is the midpoint of the widest gap between the forbidden scales
    t / T inside its window.
    """
    if T <= 0 or n < 1:
        raise InputError(f"Need T > 0 and n >= 1, got T={T}, n={n}")
    periods = spectrum.periods
    scales: list[float] = []
    for i in range(1, n + 1):
        lo, hi = i - 2.0**-i, i + 2.0**-i
        bad = periods[(periods > lo * T) & (periods < hi * T)] / T
        edges = np.concatenate([[lo], np.unique(bad), [hi]])
        k = int(np.argmax(np.diff(edges)))
        scales.append(float((edges[k] + edges[k + 1]) / 2))
    return scales


def scaled_barcodes(
    tmpl: BarcodeTemplate, p: RadialProfile, n: int
) -> list[tuple[float, Barcode]]:
    """(a_i, B(a_i H)) for the scaling sequence of the template's spectrum."""
    series = []
    for a in scaling_sequence(tmpl.spectrum, p.T, n):
        q = p.scaled(a)
        series.append((a, build_BH(restrict_template(tmpl, q.T), q)))
    return series
