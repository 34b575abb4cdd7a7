"""Normed F2 vector spaces and filtered linear maps."""

import math
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Union

import numpy as np

ActionValue = Union[float, Fraction]

# An F2 combination is the set of labels with coefficient 1.
Combination = frozenset[str]

NEG_INF = -math.inf


def combo(*labels: str) -> Combination:
    """Build an F2 combination from labels (repeated labels cancel)."""
    acc: set[str] = set()
    for label in labels:
        acc ^= {label}
    return frozenset(acc)


@dataclass(frozen=True, eq=False)
class OrthoSpace:
    """Finite F2 vector space with a non-Archimedean norm on its standard basis.

    The standard basis is orthogonal by construction: the norm of a combination is
    the maximum of the values of its support.
    """

    labels: tuple[str, ...]
    norm: Mapping[str, ActionValue] = field(repr=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        dupes = sorted(x for x, n in Counter(labels).items() if n > 1)
        if dupes:
            raise ValueError(f"Duplicate labels: {dupes}")
        missing = [x for x in labels if x not in self.norm]
        if missing:
            raise ValueError(f"Labels without a norm value: {missing}")
        for label in labels:
            value = self.norm[label]
            if isinstance(value, Fraction):
                continue
            if not math.isfinite(float(value)):
                raise ValueError(f"Norm of generator {label!r} must be finite, got {value}")
        object.__setattr__(self, "norm", {x: self.norm[x] for x in labels})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, ActionValue]]) -> "OrthoSpace":
        """Build a space from (label, value) pairs in order."""
        pairs = list(pairs)
        return cls(labels=tuple(x for x, _ in pairs), norm=dict(pairs))

    @classmethod
    def empty(cls) -> "OrthoSpace":
        return cls(labels=(), norm={})

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def exact(self) -> bool:
        """True when every value is a Fraction (exact-rational mode)."""
        return bool(self.labels) and all(isinstance(v, Fraction) for v in self.norm.values())

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def filtration_order(self) -> tuple[int, ...]:
        """Positions sorted by (value, label position): ascending filtration."""
        return tuple(sorted(range(self.dim), key=lambda i: (self.norm[self.labels[i]], i)))

    @cached_property
    def filtration_rank(self) -> dict[str, int]:
        """Rank of each label in the ascending filtration order."""
        return {self.labels[i]: r for r, i in enumerate(self.filtration_order)}

    def value(self, label: str) -> ActionValue:
        return self.norm[label]

    def direct_sum(self, other: "OrthoSpace") -> "OrthoSpace":
        """Direct sum; labels must be disjoint."""
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise ValueError(f"Direct sum needs disjoint labels, shared: {sorted(overlap)}")
        return OrthoSpace(
            labels=self.labels + other.labels, norm={**self.norm, **other.norm}
        )

    def with_values(self, norm: Mapping[str, ActionValue]) -> "OrthoSpace":
        return OrthoSpace(labels=self.labels, norm=norm)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrthoSpace):
            return NotImplemented
        return self.labels == other.labels and dict(self.norm) == dict(other.norm)

    def __hash__(self) -> int:
        return hash((self.labels, tuple(self.norm[x] for x in self.labels)))


@dataclass(frozen=True, eq=False)
class FilteredMap:
    """F2-linear map between normed spaces.

    ``matrix`` has one row per codomain label and one column per domain label.
    """

    domain: OrthoSpace
    codomain: OrthoSpace
    matrix: np.ndarray
    norm_nonincreasing: bool = False

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=np.int64) % 2
        if matrix.ndim == 1 and matrix.size == 0:
            matrix = matrix.reshape(self.codomain.dim, self.domain.dim)
        if matrix.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError(
                f"Matrix shape {matrix.shape} does not match "
                f"({self.codomain.dim}, {self.domain.dim})"
            )
        matrix = matrix.astype(np.uint8)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def column(self, label: str) -> Combination:
        """Image of a standard generator of the domain."""
        j = self.domain.index[label]
        return frozenset(self.codomain.labels[i] for i in np.flatnonzero(self.matrix[:, j]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilteredMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None  # type: ignore[assignment]


class SvdPair(NamedTuple):
    """One singular pair: A v = w with gap = l(v) - l(w)."""

    v: Combination
    w: Combination
    gap: ActionValue


@dataclass(frozen=True)
class SvdResult:
    """Orthogonal singular value decomposition of a filtered map."""

    paired: tuple[SvdPair, ...] = ()
    kernel_basis: tuple[Combination, ...] = ()
    image_basis: tuple[Combination, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.paired)

    @property
    def gaps(self) -> list[ActionValue]:
        return [p.gap for p in self.paired]


@dataclass(frozen=True)
class OrthogonalityCheck:
    """Result of an orthogonality test.

    ``exhaustive`` is False when only the reduction-based sufficient test ran, in
    which case a negative answer is inconclusive. ``witness`` holds the indices of
    a sub-family whose sum breaks the max-law.
    """

    orthogonal: bool
    exhaustive: bool
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.orthogonal
