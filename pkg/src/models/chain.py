"""Filtered chain complex models."""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from models.barcode import Barcode
from models.linalg import FilteredMap, OrthoSpace


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """Generators with action values and an F2 differential on them."""

    space: OrthoSpace
    boundary: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.asarray(self.boundary, dtype=np.int64) % 2
        if matrix.size == 0:
            matrix = matrix.reshape(self.space.dim, self.space.dim)
        if matrix.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"Boundary shape {matrix.shape} does not match dimension {self.space.dim}"
            )
        matrix = matrix.astype(np.uint8)
        matrix.setflags(write=False)
        object.__setattr__(self, "boundary", matrix)

    @classmethod
    def from_boundaries(
        cls, space: OrthoSpace, boundaries: dict[str, list[str]]
    ) -> "FilteredComplex":
        """Build from a label -> boundary labels mapping (repeats cancel mod 2)."""
        matrix = np.zeros((space.dim, space.dim), dtype=np.int64)
        for label, targets in boundaries.items():
            j = space.index[label]
            for target in targets:
                matrix[space.index[target], j] += 1
        return cls(space=space, boundary=matrix)

    @property
    def dim(self) -> int:
        return self.space.dim

    def as_map(self) -> FilteredMap:
        return FilteredMap(domain=self.space, codomain=self.space, matrix=self.boundary)

    def boundary_of(self, label: str) -> frozenset[str]:
        j = self.space.index[label]
        return frozenset(self.space.labels[i] for i in np.flatnonzero(self.boundary[:, j]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.boundary, other.boundary)

    __hash__ = None  # type: ignore[assignment]


class Violation(NamedTuple):
    """One failed complex invariant at a generator."""

    kind: str
    label: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Violations of the differential and action-decrease invariants."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


@dataclass(frozen=True, eq=False)
class ShortBarQuery:
    """Two complexes C = V1+W and D = V2+W sharing the high-action part W.

    ``d_C`` is indexed by the labels of V1 followed by W, ``d_D`` by V2 followed by W.
    """

    V1: OrthoSpace
    V2: OrthoSpace
    W: OrthoSpace
    d_C: np.ndarray
    d_D: np.ndarray
    E: float
    eta: float

    @property
    def C(self) -> FilteredComplex:
        return FilteredComplex(space=self.V1.direct_sum(self.W), boundary=self.d_C)

    @property
    def D(self) -> FilteredComplex:
        return FilteredComplex(space=self.V2.direct_sum(self.W), boundary=self.d_D)


class ShortBarComparison(NamedTuple):
    """Short bars above E on both sides and whether they agree."""

    c_bars: Barcode
    d_bars: Barcode
    equal: bool
