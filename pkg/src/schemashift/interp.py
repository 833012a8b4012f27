"""Direct execution of rewrite sequences on JSON values.

This is the reference semantics: the code generators must agree with
:func:`apply` on every conforming input. Execution walks the instruction
list with a small frame stack instead of recursing over a nested structure,
which keeps the loop shape identical to the sequence's own Push/Pop shape.

A runtime error aborts the whole transformation; no partial output is ever
produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .convert import convert as _convert
from .ir import (
    B2B, Copy, ExtractProp, InvertArr, InvertObj, NestObj,
    PopArr, PopObj, PopProp, PushArr, PushObj, PushProp,
    Rewrite, RewriteSeq, require_well_formed,
)
from .schema import describe_value
from .values import Json


class RuntimeShapeError(Exception):
    """The current value's type does not match the instruction's expectation."""


class NonUniformInvert(Exception):
    """Invert input does not line up with the instruction's property names."""


@dataclass
class _ArrFrame:
    acc: list
    source: list
    index: int
    body_start: int


@dataclass
class _ObjFrame:
    acc: dict
    source: dict


@dataclass
class _PropFrame:
    name: str


@dataclass
class EvalState:
    """Execution state: the value being built plus the open block frames."""

    current: Json
    frames: list = field(default_factory=list)


def apply(seq: RewriteSeq, value: Json) -> Json:
    """Run a well-formed rewrite sequence on a value and return the result."""
    require_well_formed(seq)
    matching = _match_pops(seq)
    state = EvalState(current=value)
    frames = state.frames
    pc = 0
    while pc < len(seq):
        ins = seq[pc]
        if isinstance(ins, Copy):
            pc += 1
        elif isinstance(ins, B2B):
            state.current = _convert(ins.src, ins.dst, state.current)
            pc += 1
        elif isinstance(ins, PushArr):
            source = _expect_array(state.current, ins)
            if not source:
                state.current = []
                pc = matching[pc] + 1
            else:
                frames.append(_ArrFrame([], source, 0, pc + 1))
                state.current = source[0]
                pc += 1
        elif isinstance(ins, PopArr):
            frame = frames[-1]
            frame.acc.append(state.current)
            frame.index += 1
            if frame.index < len(frame.source):
                state.current = frame.source[frame.index]
                pc = frame.body_start
            else:
                frames.pop()
                state.current = frame.acc
                pc += 1
        elif isinstance(ins, PushObj):
            frames.append(_ObjFrame({}, _expect_object(state.current, ins)))
            pc += 1
        elif isinstance(ins, PushProp):
            obj_frame = frames[-1]
            state.current = _project(obj_frame.source, ins.name, ins)
            frames.append(_PropFrame(ins.name))
            pc += 1
        elif isinstance(ins, PopProp):
            prop_frame = frames.pop()
            obj_frame = frames[-1]
            obj_frame.acc[prop_frame.name] = state.current
            state.current = obj_frame.source
            pc += 1
        elif isinstance(ins, PopObj):
            state.current = frames.pop().acc
            pc += 1
        elif isinstance(ins, ExtractProp):
            state.current = _project(
                _expect_object(state.current, ins), ins.name, ins
            )
            pc += 1
        elif isinstance(ins, NestObj):
            state.current = {ins.name: state.current}
            pc += 1
        elif isinstance(ins, InvertArr):
            state.current = _invert_arr(state.current, ins)
            pc += 1
        else:
            assert isinstance(ins, InvertObj)
            state.current = _invert_obj(state.current, ins)
            pc += 1
    assert not frames
    return state.current


def _match_pops(seq: RewriteSeq) -> dict[int, int]:
    """Map each push_arr index to its matching pop_arr index."""
    matching: dict[int, int] = {}
    stack: list[tuple[type, int]] = []
    pairs = {PopArr: PushArr, PopObj: PushObj, PopProp: PushProp}
    for i, ins in enumerate(seq):
        if isinstance(ins, (PushArr, PushObj, PushProp)):
            stack.append((type(ins), i))
        elif isinstance(ins, (PopArr, PopObj, PopProp)):
            kind, start = stack.pop()
            assert kind is pairs[type(ins)]
            if kind is PushArr:
                matching[start] = i
    return matching


def _expect_array(v: Json, ins: Rewrite) -> list:
    if not isinstance(v, list):
        raise RuntimeShapeError(
            f"{type(ins).__name__} expects an array, got {describe_value(v)}"
        )
    return v


def _expect_object(v: Json, ins: Rewrite) -> dict:
    if not isinstance(v, dict):
        raise RuntimeShapeError(
            f"{type(ins).__name__} expects an object, got {describe_value(v)}"
        )
    return v


def _project(obj: dict, name: str, ins: Rewrite) -> Json:
    if name not in obj:
        raise RuntimeShapeError(
            f"{type(ins).__name__} expects property {name!r}, "
            f"object has {sorted(obj) or 'no properties'}"
        )
    return obj[name]


def _invert_arr(v: Json, ins: InvertArr) -> dict:
    source = _expect_array(v, ins)
    names = ins.prop_names
    result: dict[str, list] = {n: [] for n in names}
    for element in source:
        obj = _expect_object(element, ins)
        if obj.keys() != set(names):
            raise NonUniformInvert(
                f"invert_arr element properties {sorted(obj)} do not match "
                f"{sorted(names)}"
            )
        for n in names:
            result[n].append(obj[n])
    return result


def _invert_obj(v: Json, ins: InvertObj) -> list:
    source = _expect_object(v, ins)
    names = ins.prop_names
    if source.keys() != set(names):
        raise NonUniformInvert(
            f"invert_obj source properties {sorted(source)} do not match "
            f"{sorted(names)}"
        )
    columns = [_expect_array(source[n], ins) for n in names]
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise NonUniformInvert(
            f"invert_obj arrays have unequal lengths {sorted(lengths)}"
        )
    size = lengths.pop()
    return [{n: source[n][i] for n in names} for i in range(size)]
