"""Plain-Python JSON values and small helpers shared across the package.

A JSON value is represented directly by the objects ``json.loads`` produces:
``None``, ``bool``, ``int``/``float`` (both are "number"), ``str``, ``list``,
and ``dict`` (insertion-ordered). All values are treated as immutable once
constructed; nothing in this package mutates an input value.
"""

from __future__ import annotations

import json
import math
from typing import Union

Json = Union[None, bool, int, float, str, list, dict]


def is_number(v: Json) -> bool:
    # bool is a subclass of int in Python; JSON keeps them distinct.
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def is_finite_number(v: Json) -> bool:
    return is_number(v) and math.isfinite(v)


def _reject_constant(name: str) -> float:
    raise ValueError(f"non-finite number {name!r} is not valid JSON")


def loads_strict(text: str) -> Json:
    """Parse JSON text, rejecting the NaN/Infinity extensions."""
    return json.loads(text, parse_constant=_reject_constant)


def dumps(v: Json) -> str:
    """Serialize a JSON value without ASCII escaping (files are UTF-8)."""
    return json.dumps(v, ensure_ascii=False, allow_nan=False)


def json_equal(a: Json, b: Json) -> bool:
    """Structural equality with numbers compared as doubles.

    Unlike plain ``==``, this never conflates booleans with numbers
    (``True == 1`` in Python) and compares ``2`` equal to ``2.0``.
    """
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a is b
    if is_number(a) and is_number(b):
        return float(a) == float(b)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(json_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(json_equal(a[k], b[k]) for k in a)
    return type(a) is type(b) and a == b
