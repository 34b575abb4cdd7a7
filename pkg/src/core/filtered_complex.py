"""Filtered F2 chain complexes: validation, barcodes and short-bar comparison."""

import logging
import math
from collections.abc import Mapping
from fractions import Fraction
from typing import Optional

import numpy as np

from config.settings import resolve_tol
from core.barcode_ops import same_barcode
from core.errors import InputError, PreconditionError
from core.na_linalg import from_vector, leader, norm_of, svd
from models.barcode import Barcode
from models.chain import (
    FilteredComplex,
    ShortBarComparison,
    ShortBarQuery,
    ValidationReport,
    Violation,
)
from models.linalg import ActionValue, OrthoSpace

logger = logging.getLogger(__name__)

D_SQUARED = "d_squared"
ACTION_INCREASE = "action_increase"


def _tol_for(space: OrthoSpace, tol: Optional[float]) -> float:
    return 0.0 if space.exact else resolve_tol(tol)


def validate(c: FilteredComplex, tol: Optional[float] = None) -> ValidationReport:
    """Report every generator where d(d(v)) != 0 or l(dv) > l(v)."""
    tol = _tol_for(c.space, tol)
    square = (c.boundary.astype(np.int64) @ c.boundary.astype(np.int64)) % 2
    violations: list[Violation] = []
    for j, label in enumerate(c.space.labels):
        if square[:, j].any():
            image = sorted(from_vector(c.space, square[:, j]))
            violations.append(Violation(D_SQUARED, label, f"dd({label}) = {'+'.join(image)}"))
        image_norm = norm_of(c.space, from_vector(c.space, c.boundary[:, j]))
        if image_norm > c.space.norm[label] + tol:
            violations.append(
                Violation(
                    ACTION_INCREASE,
                    label,
                    f"l(d{label}) = {image_norm} > l({label}) = {c.space.norm[label]}",
                )
            )
    return ValidationReport(violations=tuple(violations))


def _require_valid(c: FilteredComplex, tol: Optional[float], name: str = "complex") -> None:
    report = validate(c, tol)
    if not report:
        first = report.violations[0]
        raise PreconditionError(name, first.detail, witness=first.label)


def _as_float(value: ActionValue) -> float:
    return float(value)


def barcode_of(c: FilteredComplex, tol: Optional[float] = None) -> Barcode:
    """Barcode of the persistence module a -> H(C^{<a}).

    Each singular pair with positive gap gives a bar (l(w), l(v)]; each cycle whose
    leader is not killed by a boundary gives an infinite bar.

    Raises:
        PreconditionError: If the complex is invalid
    """
    _require_valid(c, tol)
    tol = _tol_for(c.space, tol)
    result = svd(c.as_map())
    space = c.space

    intervals: list[tuple[float, float]] = []
    killed: set[str] = set()
    for pair in result.paired:
        low = leader(space, pair.w)
        assert low is not None
        killed.add(low)
        left, right = space.norm[low], norm_of(space, pair.v)
        if right - left > tol:
            intervals.append((_as_float(left), _as_float(right)))
    for x in result.kernel_basis:
        lead = leader(space, x)
        if lead is not None and lead not in killed:
            intervals.append((_as_float(space.norm[lead]), math.inf))
    return Barcode.from_intervals(intervals)


def finite_bars(c: FilteredComplex, tol: Optional[float] = None) -> Barcode:
    """Finite bars (l(w), l(v)] from the singular pairs of the differential."""
    tol = _tol_for(c.space, tol)
    result = svd(c.as_map())
    intervals = []
    for pair in result.paired:
        left, right = norm_of(c.space, pair.w), norm_of(c.space, pair.v)
        if right - left > tol:
            intervals.append((_as_float(left), _as_float(right)))
    return Barcode.from_intervals(intervals)


def query_violations(q: ShortBarQuery, tol: Optional[float] = None) -> list[PreconditionError]:
    """All hypothesis violations of a short-bar query, in checking order."""
    tol = _tol_for(q.W, tol)
    errors: list[PreconditionError] = []

    low_values = [(x, q.V1.norm[x]) for x in q.V1.labels] + [(x, q.V2.norm[x]) for x in q.V2.labels]
    for label, value in low_values:
        if value > q.E:
            errors.append(
                PreconditionError("hypothesis (1)", f"l({label}) = {value} > E = {q.E}", label)
            )
    for label in q.W.labels:
        if not q.W.norm[label] > q.E:
            errors.append(
                PreconditionError(
                    "hypothesis (1)", f"l({label}) = {q.W.norm[label]} <= E = {q.E}", label
                )
            )

    for name, complex_ in (("C", q.C), ("D", q.D)):
        for violation in validate(complex_, tol).violations:
            errors.append(
                PreconditionError(f"differential on {name}", violation.detail, violation.label)
            )

    n1, n2 = q.V1.dim, q.V2.dim
    d_C = np.asarray(q.C.boundary)
    d_D = np.asarray(q.D.boundary)
    for k, label in enumerate(q.W.labels):
        diff = (d_C[n1:, n1 + k].astype(np.int64) + d_D[n2:, n2 + k]) % 2
        diff_norm = norm_of(q.W, from_vector(q.W, diff))
        bound = q.W.norm[label] - q.eta
        if not diff_norm < bound - tol:
            errors.append(
                PreconditionError(
                    "hypothesis (2)",
                    f"l(pi_W(d_C {label} - d_D {label})) = {diff_norm} >= l({label}) - eta = {bound}",
                    label,
                )
            )
    return errors


def compare_short_bars(q: ShortBarQuery, tol: Optional[float] = None) -> ShortBarComparison:
    """Short bars above E on both sides of a query.

    Returns the bars of length < eta with left endpoint > E for C = V1+W and
    D = V2+W, and whether the two multisets coincide.

    Raises:
        PreconditionError: Naming the first violated hypothesis and its witness
    """
    errors = query_violations(q, tol)
    if errors:
        raise errors[0]
    tol = _tol_for(q.W, tol)

    def short_above(c: FilteredComplex) -> Barcode:
        bars = finite_bars(c, tol)
        return Barcode(bars=tuple(b for b in bars if b.left > q.E and b.length < q.eta - tol))

    c_bars = short_above(q.C)
    d_bars = short_above(q.D)
    equal = same_barcode(c_bars, d_bars, tol=max(tol, 1e-12))
    logger.debug(f"Short bars above E={q.E}: C={len(c_bars)}, D={len(d_bars)}, equal={equal}")
    return ShortBarComparison(c_bars=c_bars, d_bars=d_bars, equal=equal)


def perturb_actions(
    c: FilteredComplex,
    delta_map: Mapping[str, ActionValue],
    tol: Optional[float] = None,
) -> FilteredComplex:
    """Same differential with every action shifted by ``delta_map[label]`` (default 0).

    Raises:
        InputError: If ``delta_map`` names an unknown label
        PreconditionError: If the shifted actions are no longer decreasing along d
    """
    unknown = set(delta_map) - set(c.space.labels)
    if unknown:
        raise InputError(f"Unknown labels in delta map: {sorted(unknown)}")
    norm: dict[str, ActionValue] = {}
    for label in c.space.labels:
        value = c.space.norm[label]
        delta = delta_map.get(label, 0)
        if isinstance(value, Fraction) and not isinstance(delta, Fraction):
            delta = Fraction(delta)
        norm[label] = value + delta
    perturbed = FilteredComplex(space=c.space.with_values(norm), boundary=c.boundary)
    for violation in validate(perturbed, tol).violations:
        if violation.kind == ACTION_INCREASE:
            raise PreconditionError("action-decreasing", violation.detail, violation.label)
    return perturbed
