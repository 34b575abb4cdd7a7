"""Randomized and exhaustive property suites over the whole library.

Each suite runs a number of independent instances. Instance ``i`` of a run with
seed ``s`` draws from ``default_rng([s, i])``, so outcomes do not depend on how
instances are scheduled across workers. Results are merged in instance order
and the first failing instance becomes the report's counterexample.
"""

import itertools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple, Optional

import numpy as np
from joblib import Parallel, delayed

from config.settings import resolve_tol
from core.bottleneck import bottleneck
from core.entropy import default_eps_grid, equivalence_counts, invariance_counts
from core.errors import BarcodeError, InputError
from core.filtered_complex import barcode_of, compare_short_bars, perturb_actions
from core.generators import (
    random_complex,
    random_filtered_map,
    random_short_bar_query,
    random_spectrum,
    separated_spectrum,
)
from core.na_linalg import check_svd, svd
from core.oracles import exhaustive_svd_gaps, interleaving_oracle
from core.reeb_model import (
    build_BH,
    build_SH,
    gen_template,
    morse_perturb,
    random_profile,
    refill_template,
    reparametrization_identity,
    restrict_template,
    s_h_array,
    s_h_bounds_check,
)
from core.triangle import model_triangles, triangle_count_check
from models.barcode import Bar, Barcode
from models.enums import TemplatePolicy
from models.reeb import BarcodeTemplate, ReebSpectrum
from models.run import SuiteReport
from utils.logger import log_check_event

logger = logging.getLogger(__name__)

ISOMETRY_ENDPOINTS = (0.0, 1.0, 2.0, 3.0, math.inf)
CAUCHY_STEPS = range(2, 13)


@dataclass
class InstanceOutcome:
    """Checks evaluated on one instance and the first one that failed."""

    checks: int = 0
    failures: int = 0
    counterexample: Optional[dict[str, Any]] = field(default=None)

    def record(self, ok: bool, **witness: Any) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = {k: _jsonable(v) for k, v in witness.items()}


def _jsonable(value: Any) -> Any:
    if isinstance(value, Barcode):
        return [str(b) for b in value.bars]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _random_template(rng: np.random.Generator, spectrum: ReebSpectrum) -> BarcodeTemplate:
    policy = TemplatePolicy(rng.choice([p.value for p in TemplatePolicy]))
    return gen_template(
        spectrum,
        betti=int(rng.integers(1, 4)),
        policy=policy,
        seed=int(rng.integers(0, 2**31)),
        fraction=float(rng.uniform(0.2, 0.9)),
        min_length=float(rng.uniform(0.1, 2.0)),
    )


def _off_spectrum(
    rng: np.random.Generator, spectrum: ReebSpectrum, low: float, high: float
) -> float:
    T = float(rng.uniform(low, high))
    while spectrum.contains(T, tol=1e-6):
        T += 1e-3
    return T


# Suites


def check_svd_oracle(seed: int, index: int) -> InstanceOutcome:
    """Gap multiset of svd equals the exhaustive orthogonal-basis oracle."""
    rng = _instance_rng(seed, index)
    A = random_filtered_map(rng, max_dim=4, exact=bool(index % 2))
    result = svd(A)
    gaps = tuple(sorted(result.gaps))
    oracle = exhaustive_svd_gaps(A)
    out = InstanceOutcome()
    out.record(oracle == {gaps}, check="gap multiset", svd=list(gaps), oracle=sorted(oracle))
    problems = check_svd(A, result)
    out.record(not problems, check="svd conclusions", problems=problems)
    return out


def check_equivalence(seed: int, index: int) -> InstanceOutcome:
    """Count sandwich between B(H) and B_SH and the reparametrization identity."""
    rng = _instance_rng(seed, index)
    spectrum = random_spectrum(rng)
    tmpl = _random_template(rng, spectrum)
    p = random_profile(rng, spectrum, T_range=(2.0, 12.0))
    out = InstanceOutcome()
    for eps in default_eps_grid(float(rng.uniform(0.2, 1.0))):
        lower, middle, upper = equivalence_counts(tmpl, p, eps)
        out.record(
            lower <= middle <= upper,
            check="count sandwich",
            eps=eps,
            T=p.T,
            r0=p.r0,
            counts=[lower, middle, upper],
        )
    out.record(reparametrization_identity(tmpl, p), check="act/tru identity", T=p.T, r0=p.r0)
    return out


def check_invariance(seed: int, index: int) -> InstanceOutcome:
    """Type bookkeeping identity, and equal n_Y for two fillings sharing short bars."""
    rng = _instance_rng(seed, index)
    spectrum = random_spectrum(rng)
    tmpl = _random_template(rng, spectrum)
    B = build_SH(tmpl)
    C = float(rng.uniform(0.3, 1.5))
    other = refill_template(tmpl, int(rng.integers(1, 4)), C, min_length=C + 0.5)
    eps_cap = min(C, spectrum.t_min / 2)
    out = InstanceOutcome()
    for _ in range(10):
        T = _off_spectrum(rng, spectrum, 0.1, float(spectrum.periods[-1]) + 1.0)
        eps = float(rng.uniform(0.05, 1.0)) * eps_cap
        N_T = spectrum.count_below(T)
        report = invariance_counts(B, eps, T, tmpl.betti, N_T)
        out.record(
            report.identity_ok and report.sandwich_ok,
            check="type bookkeeping",
            eps=eps,
            T=T,
            counts=list(report.counts.as_tuple()),
            expected_total=report.expected_total,
        )
        refilled = invariance_counts(build_SH(other), eps, T, other.betti, N_T)
        out.record(
            refilled.n_Y == report.n_Y,
            check="n_Y across fillings",
            eps=eps,
            T=T,
            C=C,
            n_Y=[report.n_Y, refilled.n_Y],
        )
    return out


def check_triangle(seed: int, index: int) -> InstanceOutcome:
    """Bar-count inequality on the model triangles of a random template."""
    rng = _instance_rng(seed, index)
    spectrum = random_spectrum(rng)
    triangles = model_triangles(_random_template(rng, spectrum))
    out = InstanceOutcome()
    for _ in range(5):
        delta = float(rng.uniform(0.05, 1.0))
        T = float(rng.uniform(0.5, 15.0))
        for t in triangles:
            out.record(
                triangle_count_check(t, delta, T),
                check="triangle count",
                tag=t.tag.value,
                delta=delta,
                T=T,
            )
    return out


def check_reparam(seed: int, index: int) -> InstanceOutcome:
    """t2 - t1 <= s_h(t2) - s_h(t1) <= r0 (t2 - t1) for a random profile."""
    rng = _instance_rng(seed, index)
    p = random_profile(rng)
    t1, t2 = sorted(rng.uniform(0.0, p.T, size=2).tolist())
    out = InstanceOutcome()
    out.record(s_h_bounds_check(p, t1, t2), check="s_h bounds", t1=t1, t2=t2, T=p.T, r0=p.r0)
    return out


def check_short_bars(seed: int, index: int) -> InstanceOutcome:
    """Short bars above E agree on both sides of a random query."""
    rng = _instance_rng(seed, index)
    q = random_short_bar_query(rng, max_dim=8)
    result = compare_short_bars(q)
    out = InstanceOutcome()
    out.record(result.equal, check="short bars", C=result.c_bars, D=result.d_bars)
    return out


def check_stability(seed: int, index: int) -> InstanceOutcome:
    """Perturbing actions by at most delta moves the barcode by at most delta."""
    rng = _instance_rng(seed, index)
    c = random_complex(rng, int(rng.integers(2, 9)))
    delta = float(rng.uniform(0.0, 0.1))
    shifts = {x: float(rng.uniform(-delta, delta)) for x in c.space.labels}
    perturbed = perturb_actions(c, shifts)
    sup = max((abs(v) for v in shifts.values()), default=0.0)
    B1, B2 = barcode_of(c), barcode_of(perturbed)
    distance = bottleneck(B1, B2)
    out = InstanceOutcome()
    out.record(
        distance <= sup + resolve_tol(), check="stability", sup=sup, d=distance, B1=B1, B2=B2
    )
    return out


def _small_barcodes() -> list[Barcode]:
    bars = [Bar(left=a, right=b) for a, b in itertools.combinations(ISOMETRY_ENDPOINTS, 2)]
    codes = [Barcode.empty()] + [Barcode(bars=(b,)) for b in bars]
    codes += [Barcode(bars=pair) for pair in itertools.combinations_with_replacement(bars, 2)]
    return codes


@lru_cache(maxsize=1)
def _isometry_pairs() -> list[tuple[Barcode, Barcode]]:
    return list(itertools.combinations_with_replacement(_small_barcodes(), 2))


def check_isometry(seed: int, index: int) -> InstanceOutcome:
    """Matching-based bottleneck distance equals the interleaving-search distance.

    Interleaving is monotone in delta and the distance is a critical value, so
    equality holds iff the oracle interleaves at d and not at the largest
    critical value below d.
    """
    B1, B2 = _isometry_pairs()[index]
    d = bottleneck(B1, B2)
    ends = [b.left for b in B1.bars + B2.bars]
    ends += [b.right for b in B1.bars + B2.bars if not b.is_infinite]
    critical = {0.0} | {abs(x - y) for x in ends for y in ends}
    critical |= {b.length / 2 for b in B1.bars + B2.bars if not b.is_infinite}
    out = InstanceOutcome()
    if math.isinf(d):
        top = max(critical)
        out.record(not interleaving_oracle(B1, B2, top), check="isometry", B1=B1, B2=B2, d=d)
        return out
    below = [c for c in critical if c < d - resolve_tol()]
    ok = interleaving_oracle(B1, B2, d)
    if below:
        ok = ok and not interleaving_oracle(B1, B2, max(below))
    out.record(ok, check="isometry", B1=B1, B2=B2, d=d)
    return out


def check_cauchy(seed: int, index: int) -> InstanceOutcome:
    """Morse perturbations with delta = 2^-i approach B(H) monotonically within delta."""
    rng = _instance_rng(seed, index)
    spectrum = separated_spectrum(rng)
    tmpl = _random_template(rng, spectrum)
    T = _off_spectrum(rng, spectrum, 1.5, float(spectrum.periods[-1]) + 1.0)
    p = random_profile(rng, spectrum, T=T)
    visible = restrict_template(tmpl, p.T)
    B_H = build_BH(visible, p)
    actions = s_h_array(p, visible.spectrum.periods) if visible.spectrum.entries else []
    n_crit = visible.betti + 2 * int(rng.integers(0, 3))
    out = InstanceOutcome()
    previous = math.inf
    for i in CAUCHY_STEPS:
        delta = 2.0**-i
        B_delta = morse_perturb(B_H, p, visible, delta, n_crit)
        d = bottleneck(B_delta, B_H)
        out.record(
            d <= delta + resolve_tol() and d <= previous + resolve_tol(),
            check="cauchy",
            i=i,
            delta=delta,
            d=d,
            previous=previous,
        )
        forbidden = any(
            abs(b.left - s) <= 1e-9 and abs(b.right - (s + delta)) <= 1e-9
            for b in B_delta.bars
            for s in actions
        )
        out.record(not forbidden, check="no split bar", i=i, delta=delta)
        previous = d
    return out


class Suite(NamedTuple):
    run: Callable[[int, int], InstanceOutcome]
    instances: Callable[[], int]
    # Instances index a fixed table; the standard count is also the maximum.
    exhaustive: bool = False


SUITES: dict[str, Suite] = {
    "svd": Suite(check_svd_oracle, lambda: 200),
    "equivalence": Suite(check_equivalence, lambda: 50),
    "invariance": Suite(check_invariance, lambda: 100),
    "triangle": Suite(check_triangle, lambda: 100),
    "reparam": Suite(check_reparam, lambda: 1000),
    "short_bars": Suite(check_short_bars, lambda: 100),
    "stability": Suite(check_stability, lambda: 200),
    "isometry": Suite(check_isometry, lambda: len(_isometry_pairs()), exhaustive=True),
    "cauchy": Suite(check_cauchy, lambda: 20),
}


def _run_instance(name: str, seed: int, index: int) -> InstanceOutcome:
    try:
        return SUITES[name].run(seed, index)
    except BarcodeError as e:
        out = InstanceOutcome()
        out.record(False, check="error", error=type(e).__name__, message=str(e))
        return out


def run_suite(
    name: str, seed: int = 0, instances: Optional[int] = None, jobs: int = 1
) -> SuiteReport:
    """Run one suite and merge its instance outcomes in order.

    Args:
        name: Suite name (see ``SUITES``)
        seed: Base seed
        instances: Number of instances; defaults to the suite's standard count
        jobs: Worker processes; 1 runs inline

    Raises:
        KeyError: If the suite is unknown
        InputError: If instances is negative or exceeds an exhaustive suite's table
    """
    suite = SUITES[name]
    count = suite.instances() if instances is None else instances
    if count < 0:
        raise InputError(f"instances must be non-negative, got {count}")
    if suite.exhaustive and count > suite.instances():
        raise InputError(f"{name} has {suite.instances()} instances, got {count}")
    log_check_event(logger, "suite_started", name, f"Running {name} on {count} instances")

    if jobs == 1:
        outcomes = [_run_instance(name, seed, i) for i in range(count)]
    else:
        outcomes = Parallel(n_jobs=jobs)(
            delayed(_run_instance)(name, seed, i) for i in range(count)
        )

    report = SuiteReport(name=name, instances=count)
    for index, outcome in enumerate(outcomes):
        report.checks += outcome.checks
        report.failures += outcome.failures
        if outcome.counterexample is not None and report.counterexample is None:
            report.counterexample = {"instance": index, "seed": seed, **outcome.counterexample}
            log_check_event(
                logger,
                "counterexample",
                name,
                f"{name}: first failure at instance {index}",
                instance=index,
                extra_data=report.counterexample,
            )

    log_check_event(
        logger,
        "suite_finished",
        name,
        f"{name}: {report.checks - report.failures}/{report.checks} checks passed",
        extra_data={"failures": report.failures},
    )
    return report
