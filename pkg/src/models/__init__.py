"""Data models for barcode computations."""

from models.barcode import Bar, Barcode, Matching, Reparametrization
from models.chain import (
    FilteredComplex,
    ShortBarComparison,
    ShortBarQuery,
    ValidationReport,
    Violation,
)
from models.entropy import EntropyProfile, EntropySeries, InvarianceReport, TypeCounts
from models.enums import (
    BarType,
    ConnectingMap,
    Counting,
    Mode,
    OutputFormat,
    SandwichVerdict,
    SpectrumKind,
    TemplatePolicy,
    TriangleTag,
)
from models.linalg import (
    Combination,
    FilteredMap,
    OrthogonalityCheck,
    OrthoSpace,
    SvdPair,
    SvdResult,
    combo,
)
from models.reeb import BarcodeTemplate, RadialProfile, ReebSpectrum, SpectrumEntry
from models.run import RunConfig, SuiteReport
from models.triangle import SandwichReport, SandwichRow, TriangleInstance

__all__ = [
    "Bar",
    "Barcode",
    "Matching",
    "Reparametrization",
    "FilteredComplex",
    "ShortBarComparison",
    "ShortBarQuery",
    "ValidationReport",
    "Violation",
    "EntropyProfile",
    "EntropySeries",
    "InvarianceReport",
    "TypeCounts",
    "BarType",
    "ConnectingMap",
    "Counting",
    "Mode",
    "OutputFormat",
    "SandwichVerdict",
    "SpectrumKind",
    "TemplatePolicy",
    "TriangleTag",
    "Combination",
    "FilteredMap",
    "OrthogonalityCheck",
    "OrthoSpace",
    "SvdPair",
    "SvdResult",
    "combo",
    "BarcodeTemplate",
    "RadialProfile",
    "ReebSpectrum",
    "SpectrumEntry",
    "RunConfig",
    "SuiteReport",
    "SandwichReport",
    "SandwichRow",
    "TriangleInstance",
]
