"""JavaScript backend: lower a rewrite sequence to transformer source text.

Emission is purely syntactic. A stack tracks, for the current nesting level,
the expression where the in-flight value can be read and the lvalue where
the level's result must land. Every instruction that produces a value emits
one assignment; block instructions allocate a fresh variable (``arr0``,
``obj1``, ...) plus, for loops, a fresh index (``idx2``), all drawn from one
monotone counter so names never collide.

The produced program is an anonymous unary function whose ``output``
variable is left undeclared on purpose; the execution harness supplies the
binding. Output uses LF line endings and 4-space indentation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Union

from .convert import js_conversion_expr
from .ir import (
    B2B, Copy, ExtractProp, InvertArr, InvertObj, NestObj,
    PopArr, PopObj, PopProp, PushArr, PushObj, PushProp,
    RewriteSeq, require_well_formed,
)


class UnsupportedInstruction(Exception):
    """The backend cannot lower this instruction."""


@dataclass(frozen=True)
class GeneratedProgram:
    source_text: str
    backend: str = "js"
    entry_shape: str = "anonymous unary function"


@dataclass
class FreshVar:
    """A value-thread level: where to read the value, where to store it."""

    source: str
    dest: str
    assigned: bool = False
    block_var: str = ""  # arr/obj variable owning this level, "" at top


@dataclass
class PropKey:
    """An open object block grouping property sub-levels."""

    var: str
    source: str


@dataclass
class EmitStack:
    entries: list[Union[FreshVar, PropKey]] = field(default_factory=list)
    counter: int = 0

    def fresh(self, kind: str) -> str:
        name = f"{kind}{self.counter}"
        self.counter += 1
        return name

    @property
    def level(self) -> FreshVar:
        entry = self.entries[-1]
        assert isinstance(entry, FreshVar)
        return entry


_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")
_FRESH_RE = re.compile(r"(?:arr|obj|idx)\d+\Z")


def _member(expr: str, name: str) -> str:
    if _IDENT_RE.match(name):
        return f"{expr}.{name}"
    return f"{expr}[{json.dumps(name, ensure_ascii=False)}]"


def _key(name: str) -> str:
    return name if _IDENT_RE.match(name) else json.dumps(name, ensure_ascii=False)


def emit(seq: RewriteSeq, input_name: str = "input", output_name: str = "output") -> GeneratedProgram:
    """Lower a well-formed sequence to a JavaScript transformer function."""
    for name in (input_name, output_name):
        if not _IDENT_RE.match(name) or _FRESH_RE.match(name):
            raise ValueError(f"{name!r} is not usable as a program variable name")
    require_well_formed(seq)
    lines: list[str] = [f"function({input_name}) {{"]
    indent = 1

    def put(text: str) -> None:
        lines.append("    " * indent + text)

    stack = EmitStack()
    stack.entries.append(FreshVar(source=input_name, dest=output_name))

    def assign(rhs: str) -> None:
        level = stack.level
        put(f"{level.dest} = {rhs};")
        level.source = level.dest
        level.assigned = True

    for ins in seq:
        if isinstance(ins, Copy):
            assign(stack.level.source)
        elif isinstance(ins, B2B):
            assign(js_conversion_expr(ins.src, ins.dst, stack.level.source))
        elif isinstance(ins, ExtractProp):
            assign(_member(stack.level.source, ins.name))
        elif isinstance(ins, NestObj):
            assign(f"{{ {_key(ins.name)}: {stack.level.source} }}")
        elif isinstance(ins, PushArr):
            arr = stack.fresh("arr")
            idx = stack.fresh("idx")
            source = stack.level.source
            put(f"let {arr} = [];")
            put(f"for (let {idx} = 0; {idx} < {source}.length; {idx}++) {{")
            indent += 1
            stack.entries.append(
                FreshVar(source=f"{source}[{idx}]", dest=f"{arr}[{idx}]", block_var=arr)
            )
        elif isinstance(ins, PopArr):
            inner = stack.entries.pop()
            assert isinstance(inner, FreshVar)
            if not inner.assigned:
                put(f"{inner.dest} = {inner.source};")
            indent -= 1
            put("}")
            assign(inner.block_var)
        elif isinstance(ins, PushObj):
            obj = stack.fresh("obj")
            put(f"let {obj} = {{}};")
            stack.entries.append(PropKey(var=obj, source=stack.level.source))
        elif isinstance(ins, PushProp):
            group = stack.entries[-1]
            assert isinstance(group, PropKey)
            stack.entries.append(
                FreshVar(
                    source=_member(group.source, ins.name),
                    dest=_member(group.var, ins.name),
                )
            )
        elif isinstance(ins, PopProp):
            inner = stack.entries.pop()
            assert isinstance(inner, FreshVar)
            if not inner.assigned:
                put(f"{inner.dest} = {inner.source};")
        elif isinstance(ins, PopObj):
            group = stack.entries.pop()
            assert isinstance(group, PropKey)
            assign(group.var)
        elif isinstance(ins, InvertArr):
            obj = stack.fresh("obj")
            idx = stack.fresh("idx")
            source = stack.level.source
            init = ", ".join(f"{_key(n)}: []" for n in ins.prop_names)
            put(f"let {obj} = {{ {init} }};")
            put(f"for (let {idx} = 0; {idx} < {source}.length; {idx}++) {{")
            indent += 1
            for n in ins.prop_names:
                put(f"{_member(obj, n)}[{idx}] = {_member(f'{source}[{idx}]', n)};")
            indent -= 1
            put("}")
            assign(obj)
        elif isinstance(ins, InvertObj):
            arr = stack.fresh("arr")
            idx = stack.fresh("idx")
            source = stack.level.source
            first = _member(source, ins.prop_names[0])
            put(f"let {arr} = [];")
            put(f"for (let {idx} = 0; {idx} < {first}.length; {idx}++) {{")
            indent += 1
            fields = ", ".join(
                f"{_key(n)}: {_member(source, n)}[{idx}]" for n in ins.prop_names
            )
            put(f"{arr}[{idx}] = {{ {fields} }};")
            indent -= 1
            put("}")
            assign(arr)
        else:
            raise UnsupportedInstruction(f"cannot lower {ins!r} to JavaScript")

    top = stack.entries.pop()
    assert isinstance(top, FreshVar) and not stack.entries
    if not top.assigned:
        put(f"{top.dest} = {top.source};")
    put(f"return {output_name};")
    lines.append("}")
    return GeneratedProgram(source_text="\n".join(lines))
