"""Barcode operations and counting functions."""

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from config.settings import resolve_tol
from core.errors import InputError
from models.barcode import Bar, Barcode, Reparametrization
from models.entropy import TypeCounts


def shift(B: Barcode, delta: float) -> Barcode:
    """B[delta]: every bar (a, b] becomes (a - delta, b - delta]."""
    if delta == 0:
        return B
    bars = tuple(
        Bar.model_construct(left=b.left - delta, right=b.right - delta, right_open=b.right_open)
        for b in B.bars
    )
    return Barcode.model_construct(bars=bars)


def truncate(B: Barcode, T: float) -> Barcode:
    """Intersect every bar with (-inf, T).

    Bars ending below T are kept, bars straddling T become (a, T) with
    ``right_open`` set, bars starting at or after T are dropped.
    """
    if math.isinf(T) and T > 0:
        return B
    bars = []
    for b in B.bars:
        if b.left >= T:
            continue
        if b.right < T:
            bars.append(b)
        else:
            bars.append(Bar.model_construct(left=b.left, right=T, right_open=True))
    return Barcode.model_construct(bars=tuple(bars))


def reparametrize(
    B: Barcode, f: Reparametrization, tol: Optional[float] = None
) -> Barcode:
    """act(B, f): the module at t is B at f(t), so (a, b] becomes (f^-1(a), f^-1(b)].

    The inverse is certified on the barcode's own endpoints: images must be
    strictly increasing and ``f.forward`` must undo ``f.inverse``.

    Raises:
        InputError: If the sampled map is not strictly increasing or the inverse
            does not invert
    """
    tol = resolve_tol(tol)
    endpoints = sorted({b.left for b in B.bars} | {b.right for b in B.bars if not b.is_infinite})
    image = {x: float(f.inverse(x)) for x in endpoints}
    values = [image[x] for x in endpoints]
    for (x0, y0), (x1, y1) in zip(zip(endpoints, values), zip(endpoints[1:], values[1:])):
        if not y1 > y0:
            raise InputError(
                f"Reparametrization {f.name} is not increasing: "
                f"{x0} -> {y0}, {x1} -> {y1}"
            )
    for x, y in image.items():
        back = float(f.forward(y))
        if abs(back - x) > tol * max(1.0, abs(x)) * 10:
            raise InputError(f"Reparametrization {f.name} inverse is not certified at {x}")
    bars = tuple(
        Bar.model_construct(
            left=image[b.left],
            right=math.inf if b.is_infinite else image[b.right],
            right_open=b.right_open,
        )
        for b in B.bars
    )
    return Barcode.model_construct(bars=tuple(sorted(bars, key=Bar.sort_key)))


def n_eps(B: Barcode, eps: float, tol: Optional[float] = None) -> int:
    """Number of bars longer than eps (infinite bars always count)."""
    if eps <= 0:
        raise InputError("eps must be positive")
    tol = resolve_tol(tol)
    return int(np.count_nonzero(B.lengths > eps + tol))


def b_eps(B: Barcode, eps: float, T: float, tol: Optional[float] = None) -> int:
    """Number of bars longer than eps with left endpoint <= T."""
    if eps <= 0:
        raise InputError("eps must be positive")
    tol = resolve_tol(tol)
    lefts, rights, _ = B.as_arrays()
    return int(np.count_nonzero((lefts <= T + tol) & (rights - lefts > eps + tol)))


def count_truncated(
    B: Barcode, eps: float, T_grid: Sequence[float] | np.ndarray, tol: Optional[float] = None
) -> np.ndarray:
    """n_eps(truncate(B, T)) for every T of a grid, without building truncations."""
    if eps <= 0:
        raise InputError("eps must be positive")
    tol = resolve_tol(tol)
    lefts, rights, _ = B.as_arrays()
    counts = np.empty(len(T_grid), dtype=np.int64)
    for i, T in enumerate(np.asarray(T_grid, dtype=float)):
        alive = lefts < T
        lengths = np.minimum(rights[alive], T) - lefts[alive]
        counts[i] = np.count_nonzero(lengths > eps + tol)
    return counts


def count_left_endpoint(
    B: Barcode, eps: float, T_grid: Sequence[float] | np.ndarray, tol: Optional[float] = None
) -> np.ndarray:
    """b_eps(B, eps, T) for every T of a grid."""
    if eps <= 0:
        raise InputError("eps must be positive")
    tol = resolve_tol(tol)
    lefts, rights, _ = B.as_arrays()
    long_lefts = np.sort(lefts[rights - lefts > eps + tol])
    return np.searchsorted(long_lefts, np.asarray(T_grid, dtype=float) + tol, side="right")


def infinite_bar_counts(B: Barcode, T_grid: Sequence[float] | np.ndarray) -> np.ndarray:
    """Number of infinite bars with left endpoint <= T, for every T of a grid."""
    lefts, rights, _ = B.as_arrays()
    inf_lefts = np.sort(lefts[np.isinf(rights)])
    return np.searchsorted(inf_lefts, np.asarray(T_grid, dtype=float), side="right")


def positive_short_bars(B: Barcode, C: float, tol: Optional[float] = None) -> Barcode:
    """Bars with positive left endpoint and length at most C."""
    if C <= 0:
        raise InputError("C must be positive")
    tol = resolve_tol(tol)
    bars = tuple(b for b in B.bars if b.left > tol and b.length <= C + tol)
    return Barcode.model_construct(bars=bars)


def classify_bars(B: Barcode, eps: float, T: float, tol: Optional[float] = None) -> TypeCounts:
    """Type I-IV counts among bars with left endpoint <= T.

    I: longer than eps, right endpoint beyond T. II: longer than eps, ends below T.
    III: at most eps, beyond T. IV: at most eps, ends below T. A right endpoint
    equal to T counts as beyond T.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    tol = resolve_tol(tol)
    lefts, rights, _ = B.as_arrays()
    keep = lefts <= T
    lengths = rights[keep] - lefts[keep]
    beyond = rights[keep] >= T
    long = lengths > eps + tol
    return TypeCounts(
        n_I=int(np.count_nonzero(long & beyond)),
        n_II=int(np.count_nonzero(long & ~beyond)),
        n_III=int(np.count_nonzero(~long & beyond)),
        n_IV=int(np.count_nonzero(~long & ~beyond)),
    )


def same_barcode(B1: Barcode, B2: Barcode, tol: Optional[float] = None) -> bool:
    """Multiset equality of bars up to tolerance on endpoints."""
    tol = resolve_tol(tol)
    if len(B1) != len(B2):
        return False
    for a, b in zip(B1.bars, B2.bars):
        if a.right_open != b.right_open or abs(a.left - b.left) > tol:
            return False
        if a.is_infinite or b.is_infinite:
            if a.is_infinite != b.is_infinite:
                return False
        elif abs(a.right - b.right) > tol:
            return False
    return True
