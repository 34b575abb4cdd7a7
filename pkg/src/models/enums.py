"""Enumerations for barcode models and runs."""

from enum import Enum


class Mode(str, Enum):
    """Arithmetic mode for action values."""

    FLOAT = "float"
    RATIONAL = "rational"


class OutputFormat(str, Enum):
    """Serialization format for CLI outputs."""

    TEXT = "text"
    JSON = "json"


class SpectrumKind(str, Enum):
    """Family of generated period spectra."""

    QUASIPERIODIC = "quasiperiodic"
    HYPERBOLIC = "hyperbolic"
    CUSTOM = "custom"


class TemplatePolicy(str, Enum):
    """How endpoint incidences of a spectrum are paired into bars."""

    NESTED = "nested"
    RANDOM = "random"
    SHORT_BIAS = "short_bias"
    SEPARATED = "separated"


class BarType(str, Enum):
    """Classification of a bar by length and right endpoint."""

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"


class Counting(str, Enum):
    """Which count drives an entropy estimate."""

    TRUNCATION = "truncation"
    LEFT_ENDPOINT = "left_endpoint"


class TriangleTag(str, Enum):
    """Exact triangle modelled by a barcode triple."""

    SH0_SH_SHPLUS = "SH0->SH->SH+"
    SH_SHPLUS_SH0 = "SH->SH+->SH0"
    RFH = "SH->RFH>=0->SH0"


class ConnectingMap(str, Enum):
    """Model of the connecting map when forming the positive part."""

    ZERO = "zero"
    DUAL = "dual"


class SandwichVerdict(str, Enum):
    """Outcome of comparing fitted slopes of two count functions."""

    AGREE = "agree"
    DISAGREE = "disagree"
    UNDETERMINED = "undetermined"
