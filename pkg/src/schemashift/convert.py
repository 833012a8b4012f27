"""Conversions between every ordered pair of ground types.

The table is fixed so that each cell coincides with what the corresponding
native JavaScript coercion produces (``String(x)``, ``Boolean(x)``,
``parseInt(x)``, ...). That keeps the interpreter and the generated-code
backend in exact agreement without any helper library on the JS side.

string -> number is the one partial cell: it parses a leading optional-sign
decimal integer and fails hard when no digit is found. A silent null (or a
NaN, which JSON cannot carry) would amount to quietly destroying data.
"""

from __future__ import annotations

import re

from .schema import GroundType, ground_type_of
from .values import Json

NUMBER = GroundType.NUMBER
STRING = GroundType.STRING
BOOLEAN = GroundType.BOOLEAN
NULL = GroundType.NULL


class ConversionFailure(Exception):
    def __init__(self, src: GroundType, dst: GroundType, value: Json) -> None:
        super().__init__(
            f"cannot convert {src.value} value {value!r} to {dst.value}"
        )
        self.src = src
        self.dst = dst
        self.value = value


class UnexpectedType(Exception):
    def __init__(self, expected: GroundType, value: Json) -> None:
        actual = ground_type_of(value)
        super().__init__(
            f"expected a {expected.value} value, got "
            f"{actual.value if actual else 'a nested value'}: {value!r}"
        )
        self.expected = expected
        self.value = value


_LEADING_INT_RE = re.compile(r"\s*([+-]?)([0-9]+)")

# Once past 2**53 consecutive integers are no longer representable as
# doubles, so fall back to float and take the rounding JS would take.
_SAFE_INT = 2**53


def parse_leading_int(text: str) -> Json:
    """Parse a leading optional-sign decimal integer (parseInt semantics).

    Skips leading whitespace, reads an optional sign and one or more decimal
    digits, and ignores everything after the first non-digit. Raises
    :class:`ConversionFailure` when no digit is found.
    """
    m = _LEADING_INT_RE.match(text)
    if m is None:
        raise ConversionFailure(STRING, NUMBER, text)
    value = int(m.group(1) + m.group(2))
    return value if abs(value) <= _SAFE_INT else float(value)


def number_to_string(v: Json) -> str:
    """Render a finite number exactly as JavaScript's ``String(x)`` does.

    Implements the ECMAScript Number-to-String algorithm on the shortest
    round-trip digits: plain notation while the decimal exponent stays in
    (-7, 21], exponent notation outside.
    """
    x = float(v)
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite number {x!r}")
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    digits, k = _shortest_digits(abs(x))
    n = len(digits)
    if n <= k <= 21:
        return sign + digits + "0" * (k - n)
    if 0 < k <= 21:
        return sign + digits[:k] + "." + digits[k:]
    if -6 < k <= 0:
        return sign + "0." + "0" * -k + digits
    exp = k - 1
    mantissa = digits if n == 1 else digits[0] + "." + digits[1:]
    return f"{sign}{mantissa}e{'+' if exp >= 0 else '-'}{abs(exp)}"


def _shortest_digits(x: float) -> tuple[str, int]:
    """Shortest digit string s and exponent k with x = 0.s * 10**k."""
    text = repr(x)  # Python's repr is already shortest-round-trip
    if "e" in text or "E" in text:
        mant, _, exp_part = text.lower().partition("e")
        exp = int(exp_part)
    else:
        mant, exp = text, 0
    int_part, _, frac_part = mant.partition(".")
    digits = (int_part + frac_part).lstrip("0")
    k = exp + len(int_part.lstrip("0")) if int_part.strip("0") else exp - _leading_zeros(frac_part)
    digits = digits.rstrip("0")
    return digits, k


def _leading_zeros(s: str) -> int:
    return len(s) - len(s.lstrip("0"))


def convert(src: GroundType, dst: GroundType, v: Json) -> Json:
    """Convert ``v`` from ground type ``src`` to ``dst`` per the fixed table."""
    if ground_type_of(v) is not src:
        raise UnexpectedType(src, v)
    if src is dst:
        return v
    if dst is NULL:
        return None
    if src is NUMBER:
        return number_to_string(v) if dst is STRING else v != 0
    if src is STRING:
        return parse_leading_int(v) if dst is NUMBER else v != ""
    if src is BOOLEAN:
        return (1 if v else 0) if dst is NUMBER else ("true" if v else "false")
    assert src is NULL
    return {NUMBER: 0, STRING: "", BOOLEAN: False}[dst]


def js_conversion_expr(src: GroundType, dst: GroundType, operand: str) -> str:
    """The JavaScript expression computing the same cell as :func:`convert`.

    ``operand`` must be a primary expression (a dotted/indexed path), so no
    extra parentheses are needed.
    """
    if src is dst:
        return operand
    if dst is NULL:
        return "null"
    if src is NUMBER:
        return f"String({operand})" if dst is STRING else f"{operand} !== 0"
    if src is STRING:
        return f"parseInt({operand})" if dst is NUMBER else f"Boolean({operand})"
    if src is BOOLEAN:
        return f"{operand} ? 1 : 0" if dst is NUMBER else f'{operand} ? "true" : "false"'
    assert src is NULL
    return {NUMBER: "0", STRING: '""', BOOLEAN: "false"}[dst]
