"""Bar counting along exact triangles of persistence modules.

For an exact triangle U -> V -> W the number of bars of V longer than 2 delta
is bounded by the bars of U and W longer than delta. Model triangles relate
the SH barcode to its constant part SH0 (betti infinite bars at 0) and its
positive part SH+.
"""

import logging
import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from config.settings import get_config, resolve_tol
from core.barcode_ops import count_truncated, n_eps, truncate
from core.entropy import entropy_eps
from core.errors import InputError
from core.reeb_model import build_SH
from models.barcode import Bar, Barcode
from models.enums import ConnectingMap, SandwichVerdict, TriangleTag
from models.reeb import BarcodeTemplate
from models.triangle import SandwichReport, SandwichRow, TriangleInstance

logger = logging.getLogger(__name__)


def sh0_barcode(betti: int) -> Barcode:
    """betti copies of (0, inf)."""
    if betti < 0:
        raise InputError(f"betti must be >= 0, got {betti}")
    return Barcode.model_construct(bars=tuple(Bar(left=0.0) for _ in range(betti)))


def sh_plus_barcode(
    B_SH: Barcode,
    betti: int,
    connecting: ConnectingMap = ConnectingMap.ZERO,
    tol: Optional[float] = None,
) -> Barcode:
    """Positive part of an SH barcode.

    Bars starting at 0 belong to the constant part. With the zero connecting
    map they are dropped; with the dual map a finite bar (0, b] survives in the
    positive part as (b, inf).

    Raises:
        InputError: If the number of bars starting at 0 is not betti
    """
    tol = resolve_tol(tol)
    zero = [b for b in B_SH.bars if abs(b.left) <= tol]
    if len(zero) != betti:
        raise InputError(f"{len(zero)} bars start at 0, expected betti = {betti}")
    positive = tuple(b for b in B_SH.bars if abs(b.left) > tol)
    if ConnectingMap(connecting) == ConnectingMap.DUAL:
        positive += tuple(Bar(left=b.right) for b in zero if not b.is_infinite)
    return Barcode(bars=positive)


def model_triangles(
    tmpl: BarcodeTemplate, connecting: ConnectingMap = ConnectingMap.ZERO
) -> list[TriangleInstance]:
    """The three model triangles of a template.

    SH0 -> SH -> SH+ and SH -> SH+ -> SH0 use the given connecting map; the
    RFH>=0 triangle SH -> RFH>=0 -> SH0 uses the dual one.
    """
    B_SH = build_SH(tmpl)
    sh0 = sh0_barcode(tmpl.betti)
    plus = sh_plus_barcode(B_SH, tmpl.betti, connecting)
    rfh = sh_plus_barcode(B_SH, tmpl.betti, ConnectingMap.DUAL)
    return [
        TriangleInstance(U=sh0, V=B_SH, W=plus, tag=TriangleTag.SH0_SH_SHPLUS),
        TriangleInstance(U=B_SH, V=plus, W=sh0, tag=TriangleTag.SH_SHPLUS_SH0),
        TriangleInstance(U=B_SH, V=rfh, W=sh0, tag=TriangleTag.RFH),
    ]


def triangle_count_check(
    t: TriangleInstance, delta: float, T: float, tol: Optional[float] = None
) -> bool:
    """True iff n_{2 delta}(tru(V, T)) <= n_delta(tru(U, T)) + n_delta(tru(W, T)).

    Raises:
        InputError: If delta <= 0
    """
    if delta <= 0:
        raise InputError(f"delta must be positive, got {delta}")
    middle = n_eps(truncate(t.V, T), 2 * delta, tol)
    sides = n_eps(truncate(t.U, T), delta, tol) + n_eps(truncate(t.W, T), delta, tol)
    if middle > sides:
        logger.debug(f"{t.tag.value}: {middle} > {sides} at delta={delta}, T={T}")
    return middle <= sides


def entropy_sandwich(
    B_SH: Barcode,
    betti: int,
    eps: float,
    T_grid: Sequence[float] | np.ndarray,
    variant: TriangleTag = TriangleTag.SH0_SH_SHPLUS,
    connecting: ConnectingMap = ConnectingMap.ZERO,
    tol: Optional[float] = None,
) -> SandwichReport:
    """Count bounds n_4eps(SH) - betti <= n_2eps(part) <= n_eps(SH) + betti per T.

    The part is SH+ (built with ``connecting``) or, for the RFH variant, the
    RFH>=0 model. Its fitted slope is compared with that of the full barcode.
    The verdict is undetermined when betti swamps the counts (the lower bound
    is never positive) or either fit is degenerate.

    Raises:
        InputError: If eps <= 0
    """
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    if variant == TriangleTag.RFH:
        connecting = ConnectingMap.DUAL
    part = sh_plus_barcode(B_SH, betti, connecting, tol)
    grid = np.asarray(T_grid, dtype=float)

    lower = count_truncated(B_SH, 4 * eps, grid, tol) - betti
    middle = count_truncated(part, 2 * eps, grid, tol)
    upper = count_truncated(B_SH, eps, grid, tol) + betti
    rows = [
        SandwichRow(T=float(T), lower=int(lo), middle=int(mid), upper=int(up))
        for T, lo, mid, up in zip(grid, lower, middle, upper)
    ]
    first_violation = next((r for r in rows if not r.holds), None)

    full = entropy_eps(B_SH, eps, grid, tol=tol)
    derived = entropy_eps(part, eps, grid, tol=tol)
    window = grid >= full.window[0]
    if full.degenerate or derived.degenerate or not np.any(lower[window] > 0):
        verdict = SandwichVerdict.UNDETERMINED
    elif math.isclose(
        full.slope_estimate, derived.slope_estimate, abs_tol=get_config().slope_tolerance
    ):
        verdict = SandwichVerdict.AGREE
    else:
        verdict = SandwichVerdict.DISAGREE

    logger.debug(
        f"{variant.value} sandwich at eps={eps}: slopes {full.slope_estimate:.4f} / "
        f"{derived.slope_estimate:.4f}, verdict {verdict.value}"
    )
    return SandwichReport(
        eps=eps,
        tag=variant,
        rows=rows,
        full_slope=full.slope_estimate,
        part_slope=derived.slope_estimate,
        verdict=verdict,
        first_violation=first_violation,
    )
