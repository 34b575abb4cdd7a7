"""Text and JSON file formats for complexes, barcodes, spectra and entropy series.

Every text format starts with a magic line (``# fcomplex v1``, ``# barcode v1``)
followed by optional ``#`` header lines. Parse errors raise ``FormatError``
carrying the path and line number.
"""

import json
import math
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import ValidationError

from core.errors import FormatError
from models.barcode import Bar, Barcode
from models.chain import FilteredComplex
from models.entropy import EntropySeries
from models.enums import Mode
from models.linalg import ActionValue, OrthoSpace
from models.reeb import ReebSpectrum

COMPLEX_MAGIC = "# fcomplex v1"
BARCODE_MAGIC = "# barcode v1"

PathLike = Union[str, Path]


def format_value(value: ActionValue) -> str:
    """Lossless text form: str for fractions, repr for floats."""
    if isinstance(value, Fraction):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _parse_value(token: str, mode: Mode, path: Optional[str], line: int) -> ActionValue:
    try:
        if mode == Mode.RATIONAL:
            return Fraction(token)
        return float(token)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad number {token!r}", path, line) from e


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", str(path)) from e


def _body(text: str, magic: str, path: Optional[str]) -> list[tuple[int, str]]:
    """Numbered non-comment lines after the magic line."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != magic:
        raise FormatError(f"expected header {magic!r}", path, 1)
    body = []
    for number, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            body.append((number, stripped))
    return body


def _with_header(magic: str, header: Sequence[str], rows: list[str]) -> str:
    return "\n".join([magic, *header, *rows]) + "\n"


# Filtered complexes


def format_complex(c: FilteredComplex, header: Sequence[str] = ()) -> str:
    """Serialize as ``gen <label> <action>`` and ``bnd <label> = a+b`` lines."""
    rows = [f"gen {x} {format_value(c.space.norm[x])}" for x in c.space.labels]
    for x in c.space.labels:
        image = c.boundary_of(x)
        if image:
            ordered = sorted(image, key=c.space.index.__getitem__)
            rows.append(f"bnd {x} = {'+'.join(ordered)}")
    return _with_header(COMPLEX_MAGIC, header, rows)


def parse_complex(
    text: str, mode: Mode = Mode.FLOAT, path: Optional[str] = None
) -> FilteredComplex:
    """Parse the ``# fcomplex v1`` format.

    Raises:
        FormatError: On malformed lines, duplicate or unknown labels
    """
    pairs: list[tuple[str, ActionValue]] = []
    seen: set[str] = set()
    boundaries: dict[str, list[str]] = {}
    bnd_lines: dict[str, int] = {}
    for number, line in _body(text, COMPLEX_MAGIC, path):
        parts = line.split()
        if parts[0] == "gen":
            if len(parts) != 3:
                raise FormatError("expected 'gen <label> <action>'", path, number)
            label = parts[1]
            if label in seen:
                raise FormatError(f"duplicate generator {label!r}", path, number)
            seen.add(label)
            pairs.append((label, _parse_value(parts[2], mode, path, number)))
        elif parts[0] == "bnd":
            if len(parts) != 4 or parts[2] != "=":
                raise FormatError("expected 'bnd <label> = a+b+...'", path, number)
            label = parts[1]
            if label in boundaries:
                raise FormatError(f"second boundary for {label!r}", path, number)
            boundaries[label] = [t for t in parts[3].split("+") if t]
            bnd_lines[label] = number
        else:
            raise FormatError(f"unknown record {parts[0]!r}", path, number)

    for label, targets in boundaries.items():
        unknown = [t for t in [label, *targets] if t not in seen]
        if unknown:
            raise FormatError(f"unknown generator {unknown[0]!r}", path, bnd_lines[label])
    try:
        space = OrthoSpace.from_pairs(pairs)
    except ValueError as e:
        raise FormatError(str(e), path) from e
    return FilteredComplex.from_boundaries(space, boundaries)


def read_complex(path: PathLike, mode: Mode = Mode.FLOAT) -> FilteredComplex:
    return parse_complex(_read(path), mode, str(path))


# Barcodes


def format_barcode(B: Barcode, header: Sequence[str] = ()) -> str:
    """Serialize as ``<left> <right|inf>[ o]`` lines."""
    rows = []
    for b in B.bars:
        row = f"{format_value(b.left)} {format_value(b.right)}"
        rows.append(row + " o" if b.right_open else row)
    return _with_header(BARCODE_MAGIC, header, rows)


def barcode_to_json(B: Barcode, header: Optional[dict[str, Any]] = None) -> str:
    """JSON form ``{"bars": [{"l", "r" | "inf", "open"}]}``."""
    bars = [
        {"l": b.left, "r": "inf" if b.is_infinite else b.right, "open": b.right_open}
        for b in B.bars
    ]
    payload: dict[str, Any] = {"bars": bars}
    if header:
        payload = {"header": header, **payload}
    return json.dumps(payload, indent=2) + "\n"


def _barcode_from_json(text: str, path: Optional[str]) -> Barcode:
    try:
        payload = json.loads(text)
        bars = []
        for item in payload["bars"]:
            right = math.inf if item["r"] == "inf" else float(item["r"])
            bars.append(
                Bar(left=float(item["l"]), right=right, right_open=bool(item.get("open", False)))
            )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        line = getattr(e, "lineno", None)
        raise FormatError(f"invalid barcode JSON: {e}", path, line) from e
    return Barcode(bars=tuple(bars))


def parse_barcode(text: str, path: Optional[str] = None) -> Barcode:
    """Parse either barcode form; JSON is recognized by a leading ``{``.

    Raises:
        FormatError: On malformed lines or empty bars
    """
    if text.lstrip().startswith("{"):
        return _barcode_from_json(text, path)
    bars = []
    for number, line in _body(text, BARCODE_MAGIC, path):
        parts = line.split()
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "o"):
            raise FormatError("expected '<left> <right|inf>[ o]'", path, number)
        left = _parse_value(parts[0], Mode.FLOAT, path, number)
        right = math.inf if parts[1] == "inf" else _parse_value(parts[1], Mode.FLOAT, path, number)
        try:
            bars.append(Bar(left=left, right=right, right_open=len(parts) == 3))
        except ValidationError as e:
            raise FormatError(f"empty bar ({left}, {right}]", path, number) from e
    return Barcode(bars=tuple(bars))


def read_barcode(path: PathLike) -> Barcode:
    return parse_barcode(_read(path), str(path))


# Spectra


def spectrum_to_json(spectrum: ReebSpectrum, header: Optional[dict[str, Any]] = None) -> str:
    """Spectrum JSON; an optional run header is stored under ``header`` and ignored on read."""
    payload = spectrum.model_dump(mode="json")
    if header:
        payload = {"header": header, **payload}
    return json.dumps(payload, indent=2) + "\n"


def read_spectrum(path: PathLike) -> ReebSpectrum:
    """Read a spectrum JSON file.

    Raises:
        FormatError: If the file is missing, not JSON, or violates the spectrum schema
    """
    text = _read(path)
    try:
        return ReebSpectrum.model_validate_json(text)
    except ValidationError as e:
        raise FormatError(f"invalid spectrum: {e.errors()[0]['msg']}", str(path)) from e


def write_spectrum(
    spectrum: ReebSpectrum, path: PathLike, header: Optional[dict[str, Any]] = None
) -> None:
    Path(path).write_text(spectrum_to_json(spectrum, header), encoding="utf-8")


# Entropy series


def format_series(series: EntropySeries, header: Sequence[str] = ()) -> str:
    """TSV ``T<TAB>count<TAB>logcount``; logcount is empty for zero counts."""
    rows = [
        *header,
        f"# eps={series.eps!r} counting={series.counting.value}",
        "T\tcount\tlogcount",
    ]
    for T, count in series.samples:
        log_count = repr(math.log(count)) if count > 0 else ""
        rows.append(f"{T!r}\t{count}\t{log_count}")
    return "\n".join(rows) + "\n"


def series_summary(series: EntropySeries) -> dict[str, Any]:
    """Slope, window and diagnostics of a series, without the samples."""
    return {
        "eps": series.eps,
        "counting": series.counting.value,
        "slope": series.slope_estimate,
        "max_proxy": series.max_proxy,
        "intercept": series.intercept,
        "window": list(series.window),
        "count_floor_hits": series.count_floor_hits,
        "degenerate": series.degenerate,
        "max_abs_residual": max((abs(r) for r in series.residuals), default=0.0),
    }
