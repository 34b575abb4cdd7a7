"""Barcode data models."""

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Interval = Union[tuple[float, float], tuple[float, float, bool]]


class Bar(BaseModel):
    """Interval (left, right] or (left, inf); (left, right) when right_open."""

    model_config = ConfigDict(frozen=True)

    left: float = Field(description="Left endpoint (excluded)")
    right: float = Field(default=math.inf, description="Right endpoint, inf for infinite bars")
    right_open: bool = Field(default=False, description="True for truncation artifacts")

    @model_validator(mode="after")
    def validate_endpoints(self) -> "Bar":
        """Validate left < right with a finite left endpoint."""
        if not math.isfinite(self.left):
            raise ValueError(f"Left endpoint must be finite, got {self.left}")
        if math.isnan(self.right) or not self.left < self.right:
            raise ValueError(f"Empty bar: ({self.left}, {self.right}]")
        return self

    @property
    def length(self) -> float:
        return self.right - self.left

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.right)

    def sort_key(self) -> tuple[float, float, bool]:
        return (self.left, self.right, self.right_open)

    def __str__(self) -> str:
        if self.is_infinite:
            return f"({self.left}, inf)"
        closer = ")" if self.right_open else "]"
        return f"({self.left}, {self.right}{closer}"


class Barcode(BaseModel):
    """Finite multiset of bars, stored in sorted order.

    Sorting on construction makes ``==`` multiset equality.
    """

    model_config = ConfigDict(frozen=True)

    bars: tuple[Bar, ...] = Field(default=(), description="Bars sorted by (left, right)")

    @field_validator("bars")
    @classmethod
    def sort_bars(cls, v: tuple[Bar, ...]) -> tuple[Bar, ...]:
        """Keep bars in canonical order."""
        return tuple(sorted(v, key=Bar.sort_key))

    @classmethod
    def from_intervals(cls, intervals: Iterable[Interval]) -> "Barcode":
        """Build from (left, right) or (left, right, right_open) tuples."""
        bars = []
        for item in intervals:
            if len(item) == 3:
                left, right, right_open = item  # type: ignore[misc]
            else:
                left, right = item  # type: ignore[misc]
                right_open = False
            bars.append(Bar(left=float(left), right=float(right), right_open=bool(right_open)))
        return cls(bars=tuple(bars))

    @classmethod
    def from_arrays(
        cls,
        lefts: Sequence[float] | np.ndarray,
        rights: Sequence[float] | np.ndarray,
        right_open: Optional[Sequence[bool] | np.ndarray] = None,
    ) -> "Barcode":
        """Build a large barcode from endpoint arrays with vectorized validation."""
        left_arr = np.asarray(lefts, dtype=float)
        right_arr = np.asarray(rights, dtype=float)
        open_arr = (
            np.zeros(left_arr.shape, dtype=bool)
            if right_open is None
            else np.asarray(right_open, dtype=bool)
        )
        if not (left_arr.shape == right_arr.shape == open_arr.shape):
            raise ValueError("Endpoint arrays must have equal length")
        if not np.all(np.isfinite(left_arr)):
            raise ValueError("Left endpoints must be finite")
        bad = np.flatnonzero(~(left_arr < right_arr))
        if bad.size:
            i = int(bad[0])
            raise ValueError(f"Empty bar: ({left_arr[i]}, {right_arr[i]}]")
        order = np.lexsort((open_arr, right_arr, left_arr))
        bars = tuple(
            Bar.model_construct(
                left=float(left_arr[i]), right=float(right_arr[i]), right_open=bool(open_arr[i])
            )
            for i in order
        )
        return cls.model_construct(bars=bars)

    @classmethod
    def empty(cls) -> "Barcode":
        return cls(bars=())

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self):  # type: ignore[override]
        return iter(self.bars)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (lefts, rights, right_open) arrays in bar order."""
        n = len(self.bars)
        lefts = np.fromiter((b.left for b in self.bars), dtype=float, count=n)
        rights = np.fromiter((b.right for b in self.bars), dtype=float, count=n)
        opens = np.fromiter((b.right_open for b in self.bars), dtype=bool, count=n)
        return lefts, rights, opens

    @property
    def lengths(self) -> np.ndarray:
        lefts, rights, _ = self.as_arrays()
        return rights - lefts

    @property
    def infinite_count(self) -> int:
        return sum(1 for b in self.bars if b.is_infinite)

    def intervals(self) -> list[tuple[float, float]]:
        return [(b.left, b.right) for b in self.bars]

    def __add__(self, other: "Barcode") -> "Barcode":
        """Multiset union."""
        return Barcode(bars=self.bars + other.bars)


class Matching(BaseModel):
    """Partial matching between two barcodes by bar index."""

    pairs: list[tuple[int, int]] = Field(default_factory=list)
    unmatched1: list[int] = Field(default_factory=list)
    unmatched2: list[int] = Field(default_factory=list)

    def is_partition_of(self, n1: int, n2: int) -> bool:
        """Check that the indices partition both barcodes."""
        left = [i for i, _ in self.pairs] + self.unmatched1
        right = [j for _, j in self.pairs] + self.unmatched2
        return sorted(left) == list(range(n1)) and sorted(right) == list(range(n2))


@dataclass(frozen=True)
class Reparametrization:
    """Strictly increasing bijection of the action axis with its inverse."""

    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    name: str = "f"

    @classmethod
    def identity(cls) -> "Reparametrization":
        return cls(forward=lambda t: t, inverse=lambda t: t, name="id")

    @classmethod
    def linear(cls, scale: float, offset: float = 0.0) -> "Reparametrization":
        """t -> scale * t + offset with scale > 0."""
        if scale <= 0:
            raise ValueError("Linear reparametrization needs a positive scale")
        return cls(
            forward=lambda t: scale * t + offset,
            inverse=lambda s: (s - offset) / scale,
            name=f"{scale}*t+{offset}",
        )

    def compose(self, inner: "Reparametrization") -> "Reparametrization":
        """self o inner."""
        return Reparametrization(
            forward=lambda t: self.forward(inner.forward(t)),
            inverse=lambda s: inner.inverse(self.inverse(s)),
            name=f"{self.name}o{inner.name}",
        )
