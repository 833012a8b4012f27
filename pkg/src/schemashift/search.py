"""Top-down, type-directed search for a rewrite path between two schemas.

Rules are tried in a fixed order, so equal inputs always produce the same
sequence. Structural descent into matching objects is preferred over
extract/nest wrapping because it yields shorter, structure-preserving
programs; extraction, nesting, and inversion only fire when the direct
shapes disagree.

Candidate paths that would amount to renaming a property are discarded
before any uniqueness decision, so a rename can never win by being the
only survivor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import (
    B2B, Copy, ExtractProp, InvertArr, InvertObj, NestObj,
    PopArr, PopObj, PopProp, PushArr, PushObj, PushProp, Rewrite, well_formed,
)
from .schema import (
    ArraySchema, Ground, ObjectSchema, Schema, Trivial,
    describe_schema, schema_equal,
)

DEFAULT_DEPTH_LIMIT = 64


@dataclass(frozen=True)
class Found:
    path: tuple[Rewrite, ...]


@dataclass(frozen=True)
class NoPath:
    reason: str


@dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[str, ...]


SearchOutcome = Found | NoPath | Ambiguous


def find_path(src: Schema, tgt: Schema, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SearchOutcome:
    """Search for a well-formed rewrite sequence relating ``src`` to ``tgt``."""
    return _search(src, tgt, "", "", depth_limit)


def _search(src: Schema, tgt: Schema, src_loc: str, tgt_loc: str, fuel: int) -> SearchOutcome:
    if fuel <= 0:
        return NoPath(
            f"depth limit reached while relating {_at(src, src_loc)} to {_at(tgt, tgt_loc)}"
        )
    fuel -= 1

    if schema_equal(src, tgt):
        return Found((Copy(),))

    if isinstance(tgt, Trivial):
        if tgt.accept:
            return Found((Copy(),))
        return NoPath(f"{_at(tgt, tgt_loc)} accepts no values")
    if isinstance(src, Trivial):
        return NoPath(
            f"{_at(src, src_loc)} gives no structure to rewrite into {_at(tgt, tgt_loc)}"
        )

    if isinstance(src, Ground) and isinstance(tgt, Ground):
        return Found((B2B(src.kind, tgt.kind),))

    if isinstance(src, ArraySchema) and isinstance(tgt, ArraySchema):
        inner = _search(
            src.items, tgt.items, src_loc + "/items", tgt_loc + "/items", fuel
        )
        if isinstance(inner, Found):
            return Found((PushArr(), *inner.path, PopArr()))
        return inner

    deep_reason: str | None = None
    if (
        isinstance(src, ObjectSchema)
        and isinstance(tgt, ObjectSchema)
        and tgt.props.keys() <= src.props.keys()
    ):
        pairwise = _pairwise_object(src, tgt, src_loc, tgt_loc, fuel)
        if isinstance(pairwise, Found):
            return pairwise
        deep_reason = pairwise.reason

    if isinstance(src, ObjectSchema):
        outcome = _extract_from_source(src, tgt, src_loc, tgt_loc, fuel)
        if outcome is not None:
            return outcome

    # Nesting builds a single-property object, so it can only ever reach a
    # single-property target.
    if isinstance(tgt, ObjectSchema) and len(tgt.props) == 1:
        outcome = _nest_into_target(src, tgt, src_loc, tgt_loc, fuel)
        if outcome is not None:
            return outcome

    inverted = _invert_step(src, tgt, src_loc, tgt_loc, fuel)
    if inverted is not None:
        return inverted

    return NoPath(
        deep_reason
        or f"no rewrite rule relates {_at(src, src_loc)} to {_at(tgt, tgt_loc)}"
    )


def _pairwise_object(
    src: ObjectSchema, tgt: ObjectSchema, src_loc: str, tgt_loc: str, fuel: int
) -> Found | NoPath:
    """Property-wise descent; omitted source properties are deleted.

    A NoPath result records why the first failing property pair could not be
    bridged, so the caller can surface the deepest useful diagnostic when no
    other rule applies either.
    """
    blocks: list[Rewrite] = []
    for name, tgt_sub in tgt.props.items():  # target declaration order
        inner = _search(
            src.props[name],
            tgt_sub,
            f"{src_loc}/properties/{name}",
            f"{tgt_loc}/properties/{name}",
            fuel,
        )
        if isinstance(inner, NoPath):
            return inner
        if isinstance(inner, Ambiguous):
            names = ", ".join(repr(n) for n in inner.candidates)
            return NoPath(
                f"property {name!r} at {tgt_loc or '/'} has competing "
                f"candidates ({names})"
            )
        blocks.append(PushProp(name))
        blocks.extend(inner.path)
        blocks.append(PopProp())
    return Found((PushObj(), *blocks, PopObj()))


def _extract_from_source(
    src: ObjectSchema, tgt: Schema, src_loc: str, tgt_loc: str, fuel: int
) -> SearchOutcome | None:
    candidates: list[tuple[str, tuple[Rewrite, ...]]] = []
    for name, sub in src.props.items():
        inner = _search(sub, tgt, f"{src_loc}/properties/{name}", tgt_loc, fuel)
        if isinstance(inner, Found):
            path = (ExtractProp(name), *inner.path)
            if well_formed(path) is None:
                candidates.append((name, path))
    return _unique(candidates)


def _nest_into_target(
    src: Schema, tgt: ObjectSchema, src_loc: str, tgt_loc: str, fuel: int
) -> SearchOutcome | None:
    candidates: list[tuple[str, tuple[Rewrite, ...]]] = []
    for name, sub in tgt.props.items():
        inner = _search(src, sub, src_loc, f"{tgt_loc}/properties/{name}", fuel)
        if isinstance(inner, Found):
            path = (*inner.path, NestObj(name))
            if well_formed(path) is None:
                candidates.append((name, path))
    return _unique(candidates)


def _unique(candidates: list[tuple[str, tuple[Rewrite, ...]]]) -> SearchOutcome | None:
    if not candidates:
        return None
    if len(candidates) == 1:
        return Found(candidates[0][1])
    return Ambiguous(tuple(name for name, _ in candidates))


def _invert_step(
    src: Schema, tgt: Schema, src_loc: str, tgt_loc: str, fuel: int
) -> SearchOutcome | None:
    if (
        isinstance(src, ArraySchema)
        and isinstance(src.items, ObjectSchema)
        and src.items.props
        and isinstance(tgt, ObjectSchema)
    ):
        names = tuple(src.items.props)
        transposed: Schema = ObjectSchema(
            {n: ArraySchema(s) for n, s in src.items.props.items()}
        )
        inner = _search(transposed, tgt, src_loc, tgt_loc, fuel)
        if isinstance(inner, Found):
            return Found((InvertArr(names), *inner.path))
        if isinstance(inner, Ambiguous):
            return inner
        return None

    if (
        isinstance(src, ObjectSchema)
        and src.props
        and all(isinstance(s, ArraySchema) for s in src.props.values())
        and isinstance(tgt, ArraySchema)
    ):
        names = tuple(src.props)
        transposed = ArraySchema(
            ObjectSchema({n: s.items for n, s in src.props.items()})  # type: ignore[union-attr]
        )
        inner = _search(transposed, tgt, src_loc, tgt_loc, fuel)
        if isinstance(inner, Found):
            return Found((InvertObj(names), *inner.path))
        if isinstance(inner, Ambiguous):
            return inner
    return None


def _at(s: Schema, loc: str) -> str:
    return f"{describe_schema(s)} at {loc or '/'}"
