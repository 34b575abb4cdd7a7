"""Reeb period spectra, barcode templates and radial profiles."""

import bisect
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from models.barcode import Barcode


class SpectrumEntry(BaseModel):
    """One closed-orbit period with its multiplicity."""

    period: float = Field(description="Orbit period", gt=0.0)
    mult: int = Field(default=1, description="Number of orbits with this period", ge=1)


class ReebSpectrum(BaseModel):
    """Sorted multiset of closed-orbit periods."""

    entries: list[SpectrumEntry] = Field(default_factory=list)
    oracle_growth: Optional[float] = Field(
        default=None, description="Known exponential growth rate of N(T), if generated"
    )
    label: str = Field(default="", description="Provenance of the spectrum")

    @field_validator("entries")
    @classmethod
    def validate_increasing(cls, v: list[SpectrumEntry]) -> list[SpectrumEntry]:
        """Validate periods are strictly increasing."""
        for prev, cur in zip(v, v[1:]):
            if not cur.period > prev.period:
                raise ValueError(
                    f"Periods must be strictly increasing: {prev.period} then {cur.period}"
                )
        return v

    @classmethod
    def from_periods(
        cls,
        periods: "np.ndarray | list[float]",
        oracle_growth: Optional[float] = None,
        label: str = "",
        merge_tol: float = 1e-9,
    ) -> "ReebSpectrum":
        """Collapse periods into multiplicities.

        Sorted periods whose consecutive gap is at most ``merge_tol`` form one
        entry at the smallest of them, so the resulting ``min_gap`` exceeds
        ``merge_tol``.
        """
        arr = np.sort(np.asarray(periods, dtype=float))
        if arr.size and arr[0] <= 0:
            raise ValueError("Periods must be positive")
        if arr.size == 0:
            return cls.model_construct(entries=[], oracle_growth=oracle_growth, label=label)
        starts = np.flatnonzero(np.concatenate([[True], np.diff(arr) > merge_tol]))
        counts = np.diff(np.append(starts, arr.size))
        entries = [
            SpectrumEntry.model_construct(period=float(arr[s]), mult=int(m))
            for s, m in zip(starts, counts)
        ]
        return cls.model_construct(entries=entries, oracle_growth=oracle_growth, label=label)

    @property
    def periods(self) -> np.ndarray:
        return np.array([e.period for e in self.entries], dtype=float)

    @property
    def mults(self) -> np.ndarray:
        return np.array([e.mult for e in self.entries], dtype=np.int64)

    @property
    def total(self) -> int:
        return sum(e.mult for e in self.entries)

    @property
    def min_gap(self) -> float:
        """Smallest gap between consecutive periods (inf with fewer than two)."""
        p = self.periods
        return float(np.min(np.diff(p))) if p.size > 1 else math.inf

    @property
    def t_min(self) -> float:
        return self.entries[0].period if self.entries else math.inf

    def count_below(self, T: float) -> int:
        """N(T): number of orbits with period < T, counted with multiplicity."""
        k = bisect.bisect_left([e.period for e in self.entries], T)
        return sum(e.mult for e in self.entries[:k])

    def counts_below(self, T_grid: "np.ndarray | list[float]") -> np.ndarray:
        """Vectorized N(T) over a grid."""
        cumulative = np.concatenate([[0], np.cumsum(self.mults)])
        idx = np.searchsorted(self.periods, np.asarray(T_grid, dtype=float), side="left")
        return cumulative[idx]

    def mult_at(self, t: float, tol: float = 0.0) -> int:
        for e in self.entries:
            if abs(e.period - t) <= tol:
                return e.mult
        return 0

    def contains(self, t: float, tol: float = 0.0) -> bool:
        p = self.periods
        if p.size == 0:
            return False
        i = int(np.searchsorted(p, t))
        near = [p[j] for j in (i - 1, i) if 0 <= j < p.size]
        return any(abs(x - t) <= tol for x in near)

    def below(self, T: float) -> "ReebSpectrum":
        """Sub-spectrum of periods < T."""
        return ReebSpectrum.model_construct(
            entries=[e for e in self.entries if e.period < T],
            oracle_growth=self.oracle_growth,
            label=self.label,
        )


class BarcodeTemplate(BaseModel):
    """Period-axis barcode pairing the endpoint incidences of a spectrum.

    Each spectral value t must carry 2 * mult(t) endpoint incidences and exactly
    ``betti`` bars start at 0.
    """

    betti: int = Field(description="Total Betti number of the filling", ge=1)
    spectrum: ReebSpectrum = Field(description="Underlying period spectrum")
    period_bars: Barcode = Field(description="Bars on the period axis")

    @property
    def positive_bars(self) -> Barcode:
        return Barcode.model_construct(bars=tuple(b for b in self.period_bars if b.left > 0))


@dataclass(frozen=True)
class RadialProfile:
    """Convex radial profile h on [1, inf), linear of slope T beyond r0.

    ``h`` and ``dh`` must accept numpy arrays.
    """

    h: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    dh: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    r0: float
    T: float
    name: str = "h"

    @property
    def C(self) -> float:
        """Constant with h(r) = T r - C for r >= r0."""
        return float(self.r0 * self.T - self.h(np.asarray(self.r0)))

    def scaled(self, a: float) -> "RadialProfile":
        """Profile of a*h: slope a*T, constant a*C, same r0."""
        if a <= 0:
            raise ValueError("Scale factor must be positive")
        h, dh = self.h, self.dh
        return RadialProfile(
            h=lambda r: a * h(r),
            dh=lambda r: a * dh(r),
            r0=self.r0,
            T=a * self.T,
            name=f"{a}*{self.name}",
        )
