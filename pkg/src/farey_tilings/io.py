"""JSON and CSV readers/writers for every object type.

Integers of any size survive a round trip.  ``FAREY_TILINGS_MAX_DIGITS``
(default 100000) caps the number of digits accepted in a single integer.
"""

from __future__ import annotations

import contextlib
import csv
import json
import os
import sys
from pathlib import Path
from typing import Any, Union

from .farey import FareyPath
from .friezes import Frieze, WeightedPolygon
from .hypertilings import Hypertiling, as_cube
from .tilings import Tiling

DEFAULT_MAX_DIGITS = 100_000


class ParseError(ValueError):
    pass


def max_digits() -> int:
    raw = os.environ.get("FAREY_TILINGS_MAX_DIGITS", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_DIGITS
    except ValueError:
        raise ParseError(f"FAREY_TILINGS_MAX_DIGITS is not an integer: {raw!r}") from None


@contextlib.contextmanager
def _big_ints():
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def _parse_int(s: str) -> int:
    limit = max_digits()
    if len(s.lstrip("-")) > limit:
        raise ParseError(f"integer with {len(s.lstrip('-'))} digits exceeds FAREY_TILINGS_MAX_DIGITS={limit}")
    return int(s)


def _no_float(s: str):
    raise ParseError(f"non-integer number {s!r}; use a string like \"3/2\" for rationals")


def loads(text: str) -> Any:
    with _big_ints():
        try:
            return json.loads(text, parse_int=_parse_int, parse_float=_no_float)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from e


def dumps(obj: Any) -> str:
    with _big_ints():
        return json.dumps(obj if isinstance(obj, dict) else to_dict(obj))


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e


def load(path: Union[str, Path]) -> Any:
    """Parse a file into the matching object (tiling, path, frieze, ...)."""
    p = Path(path)
    if p.suffix.lower() == ".csv":
        return load_tiling_csv(p)
    return from_dict(loads(read_text(p)))


def kind_of(d: Any) -> str:
    if not isinstance(d, dict):
        raise ParseError("top-level JSON value must be an object")
    if "cube" in d:
        return "cube"
    if "vertices" in d or "level" in d:
        return "path"
    if "paths" in d:
        return "paths"
    if "width" in d:
        return "frieze"
    if "diagonals" in d or "m" in d:
        return "polygon"
    if "ranges" in d:
        return "hypertiling"
    if "entries" in d:
        e = d["entries"]
        if isinstance(e, list) and e and isinstance(e[0], list) and e[0] and isinstance(e[0][0], list):
            return "hypertiling"
        return "tiling"
    raise ParseError(f"unrecognised object with keys {sorted(d)}")


_REQUIRED = {
    "cube": ("cube",),
    "path": ("level", "vertices"),
    "frieze": ("width", "denom", "gcd", "rows"),
    "polygon": ("m", "diagonals"),
    "hypertiling": ("entries",),
    "tiling": ("entries",),
}
_LISTS = {"vertices", "rows", "diagonals", "entries", "paths", "cube", "marked", "ranges", "cols"}


def _check_fields(kind: str, d: dict) -> None:
    for f in _REQUIRED.get(kind, ()):
        if f not in d:
            raise ParseError(f"{kind}: missing field '{f}'")
    for f, v in d.items():
        if f in _LISTS and not isinstance(v, list):
            raise ParseError(f"{kind}: field '{f}' must be an array")
        if f in ("level", "width", "denom", "gcd", "m", "base") and (isinstance(v, bool) or not isinstance(v, int)):
            raise ParseError(f"{kind}: field '{f}' must be an integer")
    if kind == "path" and any(not isinstance(v, list) or len(v) != 2 or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in v) for v in d["vertices"]):
        raise ParseError("path: field 'vertices' must be a list of integer pairs")


def from_dict(d: Any):
    kind = kind_of(d)
    _check_fields(kind, d)
    if kind == "paths":
        for x in d["paths"]:
            if not isinstance(x, dict):
                raise ParseError("paths: field 'paths' must hold path objects")
            _check_fields("path", x)
    try:
        if kind == "cube":
            c = d["cube"]
            if len(c) != 2 or any(len(s) != 2 or any(len(r) != 2 for r in s) for s in c):
                raise ParseError("field 'cube' must be a 2x2x2 array")
            return as_cube(c)
        if kind == "path":
            return FareyPath.from_dict(d)
        if kind == "paths":
            return [FareyPath.from_dict(x) for x in d["paths"]]
        if kind == "frieze":
            return Frieze.from_dict(d)
        if kind == "polygon":
            return WeightedPolygon.from_dict(d)
        if kind == "hypertiling":
            return Hypertiling.from_dict(d)
        return Tiling.from_dict(d)
    except ParseError:
        raise
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed {kind}: missing or bad field {e}") from e


def to_dict(obj: Any) -> Any:
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, tuple) and len(obj) == 2 and all(isinstance(x, tuple) and len(x) == 2 for x in obj):
        try:
            return {"cube": [[list(r) for r in s] for s in as_cube(obj)]}
        except (TypeError, ValueError):
            pass
    if isinstance(obj, list) and all(isinstance(x, FareyPath) for x in obj):
        return {"paths": [p.to_dict() for p in obj]}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def load_tiling_csv(path: Union[str, Path], row_base: int = 0, col_base: int = 0) -> Tiling:
    text = read_text(path)
    rows = []
    with _big_ints():
        for n, rec in enumerate(csv.reader(text.splitlines()), 1):
            if not rec or all(not x.strip() for x in rec):
                continue
            try:
                rows.append([_parse_int(x.strip()) for x in rec])
            except ValueError as e:
                raise ParseError(f"CSV line {n}: {e}") from e
    return Tiling(tuple(map(tuple, rows)), row_base, col_base)


def dump_tiling_csv(t: Tiling) -> str:
    return "\n".join(",".join(str(x) for x in r) for r in t.entries) + "\n"
