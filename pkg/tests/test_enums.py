"""Tests for enumerations."""

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


def test_mode_values():
    """Test Mode enum values."""
    assert Mode.FLOAT.value == "float"
    assert Mode.RATIONAL.value == "rational"


def test_output_format_values():
    """Test OutputFormat enum values."""
    assert OutputFormat.TEXT.value == "text"
    assert OutputFormat.JSON.value == "json"


def test_spectrum_kind_values():
    """Test SpectrumKind enum values."""
    assert SpectrumKind("hyperbolic") == SpectrumKind.HYPERBOLIC
    assert SpectrumKind.QUASIPERIODIC.value == "quasiperiodic"
    assert SpectrumKind.CUSTOM.value == "custom"


def test_template_policy_values():
    """Test TemplatePolicy enum values."""
    assert [p.value for p in TemplatePolicy] == ["nested", "random", "short_bias", "separated"]


def test_bar_type_values():
    """Test BarType enum values."""
    assert [t.value for t in BarType] == ["I", "II", "III", "IV"]


def test_counting_values():
    """Test Counting enum values."""
    assert Counting.TRUNCATION.value == "truncation"
    assert Counting.LEFT_ENDPOINT.value == "left_endpoint"


def test_triangle_values():
    """Test TriangleTag, ConnectingMap and SandwichVerdict values."""
    assert TriangleTag.SH0_SH_SHPLUS.value == "SH0->SH->SH+"
    assert ConnectingMap.DUAL.value == "dual"
    assert SandwichVerdict.UNDETERMINED.value == "undetermined"


def test_enums_are_strings():
    """Test str enums compare equal to their values."""
    assert Mode.FLOAT == "float"
    assert TemplatePolicy.NESTED == "nested"
