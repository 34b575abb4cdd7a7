"""Entropy estimate models."""

from typing import Optional

from pydantic import BaseModel, Field

from models.enums import Counting


class EntropySeries(BaseModel):
    """Bar counts over a T-grid at fixed epsilon with a fitted growth rate."""

    eps: float = Field(description="Bar length threshold", gt=0.0)
    counting: Counting = Field(default=Counting.TRUNCATION, description="Count definition")
    samples: list[tuple[float, int]] = Field(
        default_factory=list, description="(T, count) pairs sorted by T"
    )
    slope_estimate: float = Field(default=0.0, description="Least-squares slope of log count")
    max_proxy: float = Field(default=0.0, description="max log(count)/T over the window")
    window: tuple[float, float] = Field(description="(T_lo, T_hi) of the fit window")
    residuals: list[float] = Field(default_factory=list, description="Fit residuals")
    count_floor_hits: int = Field(default=0, description="Zero counts skipped in the window", ge=0)
    intercept: float = Field(default=0.0, description="Intercept of the log-count fit")
    degenerate: bool = Field(default=False, description="Too little growth data for a fit")

    @property
    def T_values(self) -> list[float]:
        return [t for t, _ in self.samples]

    @property
    def counts(self) -> list[int]:
        return [c for _, c in self.samples]


class EntropyProfile(BaseModel):
    """Entropy estimates over a decreasing epsilon grid."""

    value: float = Field(description="Slope at the smallest epsilon")
    series: list[EntropySeries] = Field(default_factory=list)
    monotone: bool = Field(default=True, description="Slopes non-decreasing as eps shrinks")

    @property
    def slopes(self) -> list[float]:
        return [s.slope_estimate for s in self.series]


class TypeCounts(BaseModel):
    """Counts of Type I-IV bars among bars with left endpoint <= T."""

    n_I: int = Field(default=0, ge=0)
    n_II: int = Field(default=0, ge=0)
    n_III: int = Field(default=0, ge=0)
    n_IV: int = Field(default=0, ge=0)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n_I, self.n_II, self.n_III, self.n_IV)

    @property
    def long_bars(self) -> int:
        return self.n_I + self.n_II

    @property
    def weighted_total(self) -> int:
        """Endpoint-weighted total nI + 2nII + nIII + 2nIV."""
        return self.n_I + 2 * self.n_II + self.n_III + 2 * self.n_IV


class InvarianceReport(BaseModel):
    """Type bookkeeping for one (eps, T) on a model barcode."""

    eps: float
    T: float
    counts: TypeCounts
    n_Y: int = Field(description="nI + 2nII - betti")
    identity_ok: bool = Field(description="Weighted total equals betti + 2 N(T)")
    sandwich_ok: bool = Field(description="(n_Y+betti)/2 <= nI+nII <= n_Y+betti")
    expected_total: Optional[int] = None
