"""Rewrite instructions, sequence well-formedness, and textual serialization.

A rewrite sequence is a flat list of instructions. Push/Pop pairs delimit
nested scopes: ``push_arr``/``pop_arr`` lift the enclosed subsequence over
array elements, ``push_obj``/``pop_obj`` enclose a list of per-property
blocks, each bracketed by ``push_prop``/``pop_prop``.

Well-formedness is stricter than the balanced-bracket grammar: property
blocks inside one object must have distinct names, and at any single nesting
level an ``extract_prop p1`` may never be followed by a ``nest_obj p2`` with
``p1 != p2`` — that combination is an effective property rename, which is
exactly the kind of silent meaning change the rewrite rules exist to prevent.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence as Seq, Union

from .schema import GROUND_NAMES, GroundType


@dataclass(frozen=True)
class B2B:
    """Convert a ground value from ``src`` to ``dst``; never degenerate."""

    src: GroundType
    dst: GroundType

    def __post_init__(self) -> None:
        if self.src is self.dst:
            raise ValueError(
                f"degenerate conversion {self.src.value} -> {self.dst.value}; use Copy"
            )


@dataclass(frozen=True)
class Copy:
    pass


@dataclass(frozen=True)
class PushArr:
    pass


@dataclass(frozen=True)
class PopArr:
    pass


@dataclass(frozen=True)
class PushObj:
    pass


@dataclass(frozen=True)
class PopObj:
    pass


@dataclass(frozen=True)
class PushProp:
    name: str


@dataclass(frozen=True)
class PopProp:
    pass


@dataclass(frozen=True)
class ExtractProp:
    name: str


@dataclass(frozen=True)
class NestObj:
    name: str


def _named_tuple_field(obj: object, names: Iterable[str], label: str) -> None:
    names = tuple(names)
    if not names:
        raise ValueError(f"{label} requires at least one property name")
    object.__setattr__(obj, "prop_names", names)


@dataclass(frozen=True)
class InvertArr:
    """Array of uniform objects -> object of arrays (one per carried name)."""

    prop_names: tuple[str, ...]

    def __post_init__(self) -> None:
        _named_tuple_field(self, self.prop_names, "invert_arr")


@dataclass(frozen=True)
class InvertObj:
    """Object of equal-length arrays -> array of objects."""

    prop_names: tuple[str, ...]

    def __post_init__(self) -> None:
        _named_tuple_field(self, self.prop_names, "invert_obj")


Rewrite = Union[
    B2B, Copy, PushArr, PopArr, PushObj, PopObj,
    PushProp, PopProp, ExtractProp, NestObj, InvertArr, InvertObj,
]

RewriteSeq = Seq[Rewrite]


class WellFormednessError(Exception):
    pass


class Unbalanced(WellFormednessError):
    def __init__(self, index: int, detail: str = "") -> None:
        suffix = f": {detail}" if detail else ""
        super().__init__(f"unbalanced sequence at instruction {index}{suffix}")
        self.index = index


class StrayPushProp(WellFormednessError):
    def __init__(self, index: int) -> None:
        super().__init__(
            f"push_prop at instruction {index} is not directly inside a push_obj block"
        )
        self.index = index


class DuplicatePropBlock(WellFormednessError):
    def __init__(self, name: str, index: int) -> None:
        super().__init__(
            f"duplicate property block {name!r} at instruction {index}"
        )
        self.name = name
        self.index = index


class RenamePattern(WellFormednessError):
    def __init__(self, p1: str, p2: str, indices: tuple[int, int]) -> None:
        super().__init__(
            f"extract_prop {p1!r} (instruction {indices[0]}) followed by "
            f"nest_obj {p2!r} (instruction {indices[1]}) at the same level "
            f"would rename the property"
        )
        self.p1 = p1
        self.p2 = p2
        self.indices = indices


# Frame kinds for the well-formedness walk.
_ARR, _OBJ, _PROP = "arr", "obj", "prop"


def well_formed(seq: RewriteSeq) -> WellFormednessError | None:
    """Return None when every sequence invariant holds, else the first error."""
    frames: list[tuple[str, int, set[str]]] = []
    # One extract-record list per open value-thread level (top, arr bodies,
    # prop bodies). Object blocks group property blocks but are not levels.
    extracts: list[list[tuple[int, str]]] = [[]]

    for i, ins in enumerate(seq):
        in_obj = bool(frames) and frames[-1][0] == _OBJ
        if isinstance(ins, PushProp):
            if not in_obj:
                return StrayPushProp(i)
            seen = frames[-1][2]
            if ins.name in seen:
                return DuplicatePropBlock(ins.name, i)
            seen.add(ins.name)
            frames.append((_PROP, i, set()))
            extracts.append([])
        elif isinstance(ins, PopProp):
            if not frames or frames[-1][0] != _PROP:
                return Unbalanced(i, "pop_prop without open property block")
            frames.pop()
            extracts.pop()
        elif isinstance(ins, PushObj):
            if in_obj:
                return Unbalanced(i, "push_obj directly inside a push_obj block")
            frames.append((_OBJ, i, set()))
        elif isinstance(ins, PopObj):
            if not frames or frames[-1][0] != _OBJ:
                return Unbalanced(i, "pop_obj without open object block")
            frames.pop()
        elif isinstance(ins, PushArr):
            if in_obj:
                return Unbalanced(i, "push_arr directly inside a push_obj block")
            frames.append((_ARR, i, set()))
            extracts.append([])
        elif isinstance(ins, PopArr):
            if not frames or frames[-1][0] != _ARR:
                return Unbalanced(i, "pop_arr without open array block")
            frames.pop()
            extracts.pop()
        else:
            # B2B, Copy, ExtractProp, NestObj, InvertArr, InvertObj act on
            # the current value thread, which does not exist between the
            # property blocks of an object.
            if in_obj:
                return Unbalanced(i, "instruction directly inside a push_obj block")
            if isinstance(ins, ExtractProp):
                extracts[-1].append((i, ins.name))
            elif isinstance(ins, NestObj):
                for j, name in extracts[-1]:
                    if name != ins.name:
                        return RenamePattern(name, ins.name, (j, i))

    if frames:
        return Unbalanced(frames[-1][1], "block never closed")
    return None


def require_well_formed(seq: RewriteSeq) -> None:
    err = well_formed(seq)
    if err is not None:
        raise err


def _quote(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def serialize_ir(seq: RewriteSeq) -> str:
    """Serialize a well-formed sequence, one instruction per LF-ended line."""
    require_well_formed(seq)
    lines = []
    for ins in seq:
        if isinstance(ins, Copy):
            lines.append("copy")
        elif isinstance(ins, B2B):
            lines.append(f"b2b {ins.src.value} {ins.dst.value}")
        elif isinstance(ins, PushArr):
            lines.append("push_arr")
        elif isinstance(ins, PopArr):
            lines.append("pop_arr")
        elif isinstance(ins, PushObj):
            lines.append("push_obj")
        elif isinstance(ins, PopObj):
            lines.append("pop_obj")
        elif isinstance(ins, PushProp):
            lines.append(f"push_prop {_quote(ins.name)}")
        elif isinstance(ins, PopProp):
            lines.append("pop_prop")
        elif isinstance(ins, ExtractProp):
            lines.append(f"extract_prop {_quote(ins.name)}")
        elif isinstance(ins, NestObj):
            lines.append(f"nest_obj {_quote(ins.name)}")
        elif isinstance(ins, InvertArr):
            lines.append("invert_arr " + ",".join(_quote(n) for n in ins.prop_names))
        else:
            assert isinstance(ins, InvertObj)
            lines.append("invert_obj " + ",".join(_quote(n) for n in ins.prop_names))
    return "".join(line + "\n" for line in lines)


class IrSyntaxError(Exception):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_BARE = {
    "copy": Copy,
    "push_arr": PushArr,
    "pop_arr": PopArr,
    "push_obj": PushObj,
    "pop_obj": PopObj,
    "pop_prop": PopProp,
}
_ONE_NAME = {"push_prop": PushProp, "extract_prop": ExtractProp, "nest_obj": NestObj}
_NAME_LIST = {"invert_arr": InvertArr, "invert_obj": InvertObj}

_B2B_RE = re.compile(r"([a-z]+) ([a-z]+)$")


def parse_ir(text: str) -> list[Rewrite]:
    """Parse the textual IR format; inverse of :func:`serialize_ir`.

    Raises :class:`IrSyntaxError` for malformed lines and the relevant
    :class:`WellFormednessError` when the parsed sequence violates an
    invariant.
    """
    seq: list[Rewrite] = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        mnemonic, _, rest = line.partition(" ")
        try:
            seq.append(_parse_instruction(mnemonic, rest, line_no))
        except ValueError as exc:
            raise IrSyntaxError(line_no, str(exc)) from None
    err = well_formed(seq)
    if err is not None:
        raise err
    return seq


def _parse_instruction(mnemonic: str, rest: str, line_no: int) -> Rewrite:
    if mnemonic in _BARE:
        if rest:
            raise IrSyntaxError(line_no, f"{mnemonic} takes no argument")
        return _BARE[mnemonic]()
    if mnemonic == "b2b":
        m = _B2B_RE.fullmatch(rest)
        if m is None:
            raise IrSyntaxError(line_no, "expected 'b2b <src> <dst>'")
        src, dst = m.group(1), m.group(2)
        for name in (src, dst):
            if name not in GROUND_NAMES:
                raise IrSyntaxError(line_no, f"unknown ground type {name!r}")
        return B2B(GROUND_NAMES[src], GROUND_NAMES[dst])
    if mnemonic in _ONE_NAME:
        names = _parse_name_list(rest, line_no)
        if len(names) != 1:
            raise IrSyntaxError(line_no, f"{mnemonic} takes exactly one name")
        return _ONE_NAME[mnemonic](names[0])
    if mnemonic in _NAME_LIST:
        return _NAME_LIST[mnemonic](tuple(_parse_name_list(rest, line_no)))
    raise IrSyntaxError(line_no, f"unknown instruction {mnemonic!r}")


def _parse_name_list(rest: str, line_no: int) -> list[str]:
    decoder = json.JSONDecoder()
    names: list[str] = []
    pos = 0
    while True:
        try:
            value, pos = decoder.raw_decode(rest, pos)
        except (ValueError, IndexError):
            raise IrSyntaxError(line_no, "expected a JSON string literal") from None
        if not isinstance(value, str):
            raise IrSyntaxError(line_no, "property names must be JSON strings")
        names.append(value)
        if pos == len(rest):
            return names
        if rest[pos] != ",":
            raise IrSyntaxError(line_no, f"unexpected text {rest[pos:]!r}")
        pos += 1
