"""Shared fixtures."""

import pytest

from core.reeb_model import gen_spectrum, gen_template
from models.enums import SpectrumKind, TemplatePolicy
from models.reeb import BarcodeTemplate


def hyperbolic_template(rate: float, T_max: float, seed: int = 7) -> BarcodeTemplate:
    """Separated template over a hyperbolic spectrum, bars of length >= 0.2."""
    spectrum = gen_spectrum(SpectrumKind.HYPERBOLIC, {"rate": rate, "T_max": T_max}, seed=seed)
    return gen_template(spectrum, 1, TemplatePolicy.SEPARATED, min_length=0.2)


@pytest.fixture(scope="session")
def hyperbolic_03() -> BarcodeTemplate:
    """Rate 0.3 up to T = 40, about 1.6e5 orbits."""
    return hyperbolic_template(0.3, 40.0)
