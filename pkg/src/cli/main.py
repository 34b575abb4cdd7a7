"""barc: spectra, barcodes, entropy estimates, distances and check suites.

Usage:
    barc gen spectrum --kind quasiperiodic --base-periods 1,1.5 --T-max 10 --out qp.json
    barc gen complex --dim 6 --seed 1 --mode rational --out c.fcx
    barc build --complex c.fcx --mode rational
    barc build --spectrum qp.json --betti 1 --policy separated --slope 10.3 --delta 0.05 \
        --out model/
    barc entropy model/sh.barcode --eps 0.1 --T-grid 1:10:10
    barc dist a.barcode b.barcode
    barc check --suite equivalence --seed 7

Exit codes: 0 on success, 1 when a check fails or a hypothesis is violated,
2 on unreadable input or bad parameters.
"""

import argparse
import json
import logging
import math
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import ValidationError

from config.settings import get_config
from core.bottleneck import bottleneck
from core.check_suites import SUITES, run_suite
from core.entropy import entropy, infinite_bar_growth
from core.errors import BarcodeError, InputError
from core.filtered_complex import barcode_of
from core.generators import random_complex
from core.reeb_model import (
    build_BH,
    build_SH,
    gen_spectrum,
    gen_template,
    morse_perturb,
    polynomial_profile,
    restrict_template,
)
from models.barcode import Barcode
from models.enums import Counting, Mode, OutputFormat, SpectrumKind, TemplatePolicy
from models.run import RunConfig, SuiteReport
from utils.formats import (
    barcode_to_json,
    format_barcode,
    format_complex,
    format_series,
    format_value,
    read_barcode,
    read_complex,
    series_summary,
    spectrum_to_json,
)
from utils.logger import setup_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _split_grid(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}") from e


def parse_T_grid(text: str) -> list[float]:
    """``a:b:n`` -> n evenly spaced values from a to b."""
    a, b, n = _split_grid(text)
    if n < 1 or (n > 1 and not b > a):
        raise argparse.ArgumentTypeError(f"T-grid needs n >= 1 and b > a, got {text!r}")
    return [float(t) for t in np.linspace(a, b, n)]


def parse_eps_grid(text: str) -> list[float]:
    """``a:b:n`` -> n geometrically spaced values from a down to b."""
    a, b, n = _split_grid(text)
    if n < 1 or a <= 0 or b <= 0 or (n > 1 and not a > b):
        raise argparse.ArgumentTypeError(f"eps-grid needs a > b > 0 and n >= 1, got {text!r}")
    return [float(e) for e in np.geomspace(a, b, n)]


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def _barcode_text(B: Barcode, run: RunConfig) -> str:
    if run.format == OutputFormat.JSON:
        return barcode_to_json(B, run.header())
    return format_barcode(B, run.header_lines())


def _run_config(args: argparse.Namespace, command: str, **params: Any) -> RunConfig:
    return RunConfig(
        command=command,
        inputs=[str(p) for p in getattr(args, "inputs", [])],
        out=args.out,
        eps=getattr(args, "eps", None),
        eps_grid=getattr(args, "eps_grid", None) or [],
        T_grid=getattr(args, "T_grid", None) or [],
        seed=getattr(args, "seed", None),
        mode=getattr(args, "mode", Mode.FLOAT.value),
        format=args.format,
        jobs=getattr(args, "jobs", 1),
        params={k: v for k, v in params.items() if v is not None},
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    """Generate a spectrum file or a random valid filtered complex."""
    if args.what == "complex":
        run = _run_config(args, "gen complex", dim=args.dim)
        rng = np.random.default_rng(args.seed)
        c = random_complex(rng, args.dim, exact=Mode(args.mode) == Mode.RATIONAL)
        _emit(format_complex(c, run.header_lines()), args.out)
        return EXIT_OK

    kind = SpectrumKind(args.kind)
    params: dict[str, Any]
    if kind == SpectrumKind.HYPERBOLIC:
        params = {"rate": args.rate, "T_max": args.T_max}
    elif kind == SpectrumKind.QUASIPERIODIC:
        params = {"base_periods": args.base_periods, "T_max": args.T_max}
    else:
        params = {"path": args.path}
    run = _run_config(args, "gen spectrum", kind=kind.value, **params)
    spectrum = gen_spectrum(kind, {k: v for k, v in params.items() if v is not None}, args.seed)
    _emit(spectrum_to_json(spectrum, run.header()), args.out)
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    """Barcode of a complex, or the model barcodes B_SH, B(H) and B(H_delta)."""
    if args.complex:
        args.inputs = [args.complex]
        run = _run_config(args, "build")
        B = barcode_of(read_complex(args.complex, Mode(args.mode)))
        _emit(_barcode_text(B, run), args.out)
        return EXIT_OK

    args.inputs = [args.spectrum]
    run = _run_config(
        args,
        "build",
        betti=args.betti,
        policy=args.policy,
        min_length=args.min_length,
        slope=args.slope,
        r0=args.r0,
        coeffs=",".join(repr(c) for c in args.coeffs),
        delta=args.delta,
    )
    spectrum = gen_spectrum(SpectrumKind.CUSTOM, {"path": args.spectrum})
    tmpl = gen_template(
        spectrum, args.betti, TemplatePolicy(args.policy), args.seed, min_length=args.min_length
    )
    suffix = ".json" if run.format == OutputFormat.JSON else ".barcode"
    outputs = {"sh": build_SH(tmpl)}
    if args.slope is not None:
        p = polynomial_profile(args.slope, args.r0, args.coeffs)
        restricted = restrict_template(tmpl, p.T)
        B_H = build_BH(restricted, p)
        outputs["bh"] = B_H
        if args.delta is not None:
            outputs["bh_delta"] = morse_perturb(B_H, p, restricted, args.delta)
        logger.info(f"Profile {p.name}: T={p.T}, r0={p.r0}, C={p.C:.6g}")

    if len(outputs) == 1 and not args.out:
        _emit(_barcode_text(outputs["sh"], run), None)
        return EXIT_OK
    if not args.out:
        raise InputError("--out DIR is required when building B(H)")
    for name, B in outputs.items():
        _emit(_barcode_text(B, run), str(Path(args.out) / f"{name}{suffix}"))
    return EXIT_OK


def cmd_entropy(args: argparse.Namespace) -> int:
    """Entropy series per epsilon plus a summary."""
    args.inputs = [args.barcode]
    eps_grid = args.eps_grid or [args.eps]
    run = _run_config(args, "entropy", counting=args.counting)
    B = read_barcode(args.barcode)
    profile = entropy(B, eps_grid, args.T_grid, Counting(args.counting))
    growth = infinite_bar_growth(B, args.T_grid)

    if args.out:
        for k, series in enumerate(profile.series):
            path = Path(args.out) / f"series_{k}.tsv"
            _emit(format_series(series, run.header_lines()), str(path))

    if run.format == OutputFormat.JSON:
        summary = {
            "header": run.header(),
            "entropy": profile.value,
            "monotone": profile.monotone,
            "series": [series_summary(s) for s in profile.series],
            "infinite_bar_growth": series_summary(growth),
        }
        text = json.dumps(summary, indent=2) + "\n"
    else:
        lines = [*run.header_lines(), "eps\tcounting\tslope\tmax_proxy\tdegenerate"]
        for s in profile.series:
            lines.append(
                f"{s.eps!r}\t{s.counting.value}\t{s.slope_estimate!r}\t{s.max_proxy!r}\t"
                f"{s.degenerate}"
            )
        lines.append(f"entropy\t{profile.value!r}")
        lines.append(f"monotone\t{profile.monotone}")
        lines.append(f"infinite_bar_growth\t{growth.slope_estimate!r}")
        text = "\n".join(lines) + "\n"
    _emit(text, str(Path(args.out) / "summary.txt") if args.out else None)
    return EXIT_OK


def _format_distance(d: float) -> str:
    if math.isfinite(d) and d == int(d):
        return str(int(d))
    return format_value(d)


def cmd_dist(args: argparse.Namespace) -> int:
    """Bottleneck distance between two barcode files."""
    args.inputs = [args.first, args.second]
    run = _run_config(args, "dist")
    d = bottleneck(read_barcode(args.first), read_barcode(args.second))
    if run.format == OutputFormat.JSON:
        text = json.dumps({"header": run.header(), "bottleneck": _format_distance(d)}) + "\n"
    else:
        text = "\n".join([*run.header_lines(), _format_distance(d)]) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _report_text(reports: Sequence[SuiteReport], run: RunConfig) -> str:
    lines = [*run.header_lines(), "suite\tinstances\tchecks\tfailures\tstatus"]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"{r.name}\t{r.instances}\t{r.checks}\t{r.failures}\t{status}")
    failed = next((r for r in reports if not r.passed), None)
    if failed is not None:
        lines.append(f"# first counterexample ({failed.name})")
        lines.append(json.dumps(failed.counterexample, sort_keys=True))
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    """Run check suites; exit 1 with the first counterexample on failure."""
    names = args.suite or list(SUITES)
    run = _run_config(args, "check", suites=",".join(names), instances=args.instances)
    reports = [run_suite(name, args.seed, args.instances, args.jobs) for name in names]

    if run.format == OutputFormat.JSON:
        payload = {
            "header": run.header(),
            "passed": all(r.passed for r in reports),
            "suites": [r.model_dump(mode="json") for r in reports],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = _report_text(reports, run)
    _emit(text, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common(
    parser: argparse.ArgumentParser, seed: Optional[int] = None, mode: bool = False
) -> None:
    parser.add_argument("--seed", type=int, default=seed, help="Random seed")
    # Only commands that create or parse complexes have an arithmetic choice.
    if mode:
        parser.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            default=Mode.FLOAT.value,
            help="Arithmetic for action values (float or rational)",
        )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (text or json)",
    )
    parser.add_argument("--out", type=str, default=None, help="Output path (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barc", description="Barcode entropy for synthetic Reeb flows"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a spectrum or a random complex")
    gen.add_argument("what", choices=["spectrum", "complex"])
    gen.add_argument(
        "--kind", choices=[k.value for k in SpectrumKind], default=SpectrumKind.HYPERBOLIC.value
    )
    gen.add_argument("--rate", type=float, default=None, help="Growth rate (hyperbolic)")
    gen.add_argument("--T-max", dest="T_max", type=float, default=None, help="Largest period")
    gen.add_argument(
        "--base-periods", type=parse_floats, default=None, help="Base periods (quasiperiodic)"
    )
    gen.add_argument("--path", type=str, default=None, help="Spectrum JSON (custom)")
    gen.add_argument("--dim", type=int, default=6, help="Number of generators (complex)")
    _common(gen, seed=0, mode=True)
    gen.set_defaults(handler=cmd_gen)

    build = sub.add_parser("build", help="Build barcodes from a complex or a spectrum")
    source = build.add_mutually_exclusive_group(required=True)
    source.add_argument("--complex", type=str, help="Filtered complex file")
    source.add_argument("--spectrum", type=str, help="Spectrum JSON file")
    build.add_argument("--betti", type=int, default=1, help="Bars starting at 0")
    build.add_argument(
        "--policy",
        choices=[p.value for p in TemplatePolicy],
        default=TemplatePolicy.NESTED.value,
        help="Pairing of endpoint incidences",
    )
    build.add_argument("--min-length", type=float, default=0.2, help="Separated policy length")
    build.add_argument("--slope", type=float, default=None, help="Profile slope T for B(H)")
    build.add_argument("--r0", type=float, default=2.0, help="Profile radius of linearity")
    build.add_argument(
        "--coeffs", type=parse_floats, default=[1.0], help="Profile coefficients of (r-1)^2, ..."
    )
    build.add_argument("--delta", type=float, default=None, help="Morse perturbation size")
    _common(build, seed=0, mode=True)
    build.set_defaults(handler=cmd_build)

    ent = sub.add_parser("entropy", help="Estimate barcode entropy")
    ent.add_argument("barcode", type=str, help="Barcode file")
    eps = ent.add_mutually_exclusive_group(required=True)
    eps.add_argument("--eps", type=float, help="Single bar length threshold")
    eps.add_argument("--eps-grid", type=parse_eps_grid, help="a:b:n geometric, a > b")
    ent.add_argument("--T-grid", dest="T_grid", type=parse_T_grid, required=True, help="a:b:n")
    ent.add_argument(
        "--counting", choices=[c.value for c in Counting], default=Counting.TRUNCATION.value
    )
    _common(ent)
    ent.set_defaults(handler=cmd_entropy)

    dist = sub.add_parser("dist", help="Bottleneck distance between two barcodes")
    dist.add_argument("first", type=str)
    dist.add_argument("second", type=str)
    _common(dist)
    dist.set_defaults(handler=cmd_dist)

    check = sub.add_parser("check", help="Run property check suites")
    check.add_argument(
        "--suite", action="append", choices=list(SUITES), help="Suite to run (repeatable)"
    )
    check.add_argument("--instances", type=int, default=None, help="Override instance count")
    check.add_argument("--jobs", type=int, default=1, help="Worker processes")
    _common(check, seed=0)
    check.set_defaults(handler=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = get_config()
    except ValidationError as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logger(
        name="",
        level="DEBUG" if args.verbose else config.log_level,
        json_format=config.log_json,
        context={"command": args.command, "seed": args.seed},
    )

    try:
        return int(args.handler(args))
    except (InputError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BarcodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
