"""Machine-readable output.

JSON carries every rational as a ``"p/q"`` string so nothing is lost to
floats; :func:`decode` turns such strings back into ``Fraction``. Floats
only show up in SVG coordinates.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import re
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .exact import IntVec3, RationalPoint

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(obj: Any) -> Any:
    """Plain JSON values; rationals become strings, points become ``[x, y]``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, RationalPoint):
        return [rational(obj.x), rational(obj.y)]
    if isinstance(obj, IntVec3):
        return list(obj.as_tuple())
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def decode(value: Any) -> Any:
    """Inverse of the rational encoding: ``"p/q"`` strings come back as ``Fraction``."""
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    if isinstance(value, list):
        return [decode(v) for v in value]
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    return value


def loads(text: str) -> Any:
    return decode(json.loads(text))


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([rational(v) if isinstance(v, Fraction) else v for v in row])
    return buf.getvalue()


def _num(v: Fraction) -> str:
    return format(float(v), ".12g")


def svg_triangles(triangles: Sequence[Sequence[RationalPoint]], size: int = 600) -> str:
    """Nested polygons in data coordinates; the group flips ``y`` upward."""
    pad = Fraction(1, 20)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_num(-pad)} {_num(-pad)} {_num(1 + 2 * pad)} {_num(1 + 2 * pad)}">',
        '<g transform="translate(0 1) scale(1 -1)" fill="none" stroke="black" stroke-width="0.002">',
    ]
    for depth, tri in enumerate(triangles):
        pts = " ".join(f"{_num(p.x)},{_num(p.y)}" for p in tri)
        lines.append(f'<polygon data-depth="{depth}" points="{pts}"/>')
    lines += ["</g>", "</svg>"]
    return "\n".join(lines) + "\n"
