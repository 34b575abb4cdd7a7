"""Exact-triangle barcode models."""

from typing import Optional

from pydantic import BaseModel, Field

from models.barcode import Barcode
from models.enums import SandwichVerdict, TriangleTag


class TriangleInstance(BaseModel):
    """Barcodes U, V, W of a triangle U -> V -> W."""

    U: Barcode
    V: Barcode
    W: Barcode
    tag: TriangleTag = Field(default=TriangleTag.SH0_SH_SHPLUS)


class SandwichRow(BaseModel):
    """Bounds on the positive-part count at one T."""

    T: float
    lower: int
    middle: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.middle <= self.upper


class SandwichReport(BaseModel):
    """Per-T count sandwich plus the slope comparison it implies."""

    eps: float
    tag: TriangleTag
    rows: list[SandwichRow] = Field(default_factory=list)
    full_slope: float = Field(default=0.0, description="Fitted slope of the full barcode")
    part_slope: float = Field(default=0.0, description="Fitted slope of the derived barcode")
    verdict: SandwichVerdict = Field(default=SandwichVerdict.UNDETERMINED)
    first_violation: Optional[SandwichRow] = None

    @property
    def bounds_hold(self) -> bool:
        return all(r.holds for r in self.rows)
