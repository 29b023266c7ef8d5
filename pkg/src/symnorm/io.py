"""JSON reading and writing.

Output is canonical: keys sorted, no insignificant whitespace variation, floats
written with ``%.17g`` so they round-trip exactly.  Non-finite floats are
written as the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
"""

from __future__ import annotations

import enum
import json
import math
from pathlib import Path

import numpy as np

from .errors import DomainError
from .grid import Grid, GridFunction
from .norms import NormSpec, spec_from_dict, spec_to_dict

__all__ = [
    "canonical_dumps",
    "to_jsonable",
    "gridfunction_to_dict",
    "gridfunction_from_dict",
    "load_gridfunction",
    "save_gridfunction",
    "load_spec",
    "save_spec",
]


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _dump(obj, out: list[str], indent: int | None, level: int) -> None:
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        pad, inner = _pads(indent, level)
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            out.append(("," if i else "") + inner + json.dumps(str(key)) + ": ")
            _dump(obj[key], out, indent, level + 1)
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        # numeric leaf rows stay on one line
        flat = indent is None or all(not isinstance(v, (dict, list, tuple)) for v in obj)
        pad, inner = _pads(None if flat else indent, level)
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + (inner if not flat else (" " if i else "")))
            _dump(v, out, indent, level + 1)
        out.append(pad + "]")
    else:
        _dump(to_jsonable(obj), out, indent, level)


def _pads(indent, level):
    if indent is None:
        return "", ""
    return "\n" + " " * (indent * level), "\n" + " " * (indent * (level + 1))


def canonical_dumps(obj, indent: int | None = 1) -> str:
    """Serialize ``obj`` deterministically (sorted keys, ``%.17g`` floats)."""
    out: list[str] = []
    _dump(to_jsonable(obj), out, indent, 0)
    return "".join(out)


def to_jsonable(obj):
    """Convert library values (grid functions, specs, results) to plain JSON data."""
    from dataclasses import fields, is_dataclass

    if isinstance(obj, GridFunction):
        return gridfunction_to_dict(obj)
    if isinstance(obj, NormSpec):
        return spec_to_dict(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        d = {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
        for extra in ("success", "certified"):
            if hasattr(type(obj), extra):
                d[extra] = bool(getattr(obj, extra))
        return d
    return obj


def gridfunction_to_dict(f: GridFunction) -> dict:
    return {"n": f.n, "samples": [[float(z.real), float(z.imag)] for z in f.samples]}


def gridfunction_from_dict(d: dict) -> GridFunction:
    try:
        n = d["n"]
        raw = d["samples"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"grid function needs 'n' and 'samples': {exc}") from exc
    grid = Grid(n)
    if len(raw) != grid.n:
        raise DomainError(f"'n' is {grid.n} but {len(raw)} samples were given")
    vals = []
    for s in raw:
        if isinstance(s, (list, tuple)) and len(s) == 2:
            vals.append(complex(float(s[0]), float(s[1])))
        elif isinstance(s, (int, float)):
            vals.append(complex(float(s), 0.0))
        else:
            raise DomainError(f"bad sample {s!r}; expected [re, im]")
    return GridFunction(grid, np.array(vals))


def load_gridfunction(path) -> GridFunction:
    with open(path) as fh:
        return gridfunction_from_dict(json.load(fh))


def save_gridfunction(f: GridFunction, path) -> None:
    Path(path).write_text(canonical_dumps(gridfunction_to_dict(f)) + "\n")


def load_spec(path) -> NormSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))


def save_spec(spec: NormSpec, path) -> None:
    Path(path).write_text(canonical_dumps(spec_to_dict(spec)) + "\n")
