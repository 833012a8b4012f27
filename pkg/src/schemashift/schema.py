"""Restricted JSON Schema model: parsing, validation, structural equality.

The supported subset is deliberately small: the boolean schemas ``true`` and
``false``, the four ground types, ``array`` with a mandatory ``items``
subschema, and ``object`` with a mandatory ``properties`` map. Validation of
object values is conservative: a value's property set must equal the schema's
property set exactly (no implicit extras, no missing keys).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from .values import Json, is_number


class GroundType(str, Enum):
    """The non-nested JSON types. Declaration order is the canonical order."""

    NUMBER = "number"
    STRING = "string"
    BOOLEAN = "boolean"
    NULL = "null"

    def __repr__(self) -> str:  # keeps error messages short
        return f"GroundType.{self.name}"


GROUND_NAMES = {g.value: g for g in GroundType}


@dataclass(frozen=True)
class Trivial:
    """The boolean schemas: ``true`` accepts everything, ``false`` nothing."""

    accept: bool


@dataclass(frozen=True)
class Ground:
    kind: GroundType


@dataclass(frozen=True)
class ArraySchema:
    items: "Schema"


@dataclass(frozen=True)
class ObjectSchema:
    # Insertion order is preserved for deterministic iteration/serialization
    # but never semantically significant (dict equality ignores order).
    props: Mapping[str, "Schema"] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "props", dict(self.props))


Schema = Trivial | Ground | ArraySchema | ObjectSchema


class SchemaError(Exception):
    """A document failed to parse as a schema of the supported subset."""

    def __init__(self, message: str, pointer: str = "") -> None:
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


class NotASchema(SchemaError):
    pass


class InvalidType(SchemaError):
    def __init__(self, name: str, pointer: str = "") -> None:
        super().__init__(f"invalid type {name!r}", pointer)
        self.name = name


class MissingField(SchemaError):
    def __init__(self, fieldname: str, pointer: str = "") -> None:
        super().__init__(f"missing required field {fieldname!r}", pointer)
        self.fieldname = fieldname


def parse_schema(doc: Json, warnings: Optional[list[str]] = None) -> Schema:
    """Parse a JSON document into a :data:`Schema`.

    Unknown sibling fields (``title``, ``required``, ...) are ignored; a note
    for each is appended to ``warnings`` when a list is supplied. Raises
    :class:`SchemaError` subclasses carrying a JSON-Pointer-style location.
    """
    return _parse(doc, "", warnings if warnings is not None else [])


def _parse(doc: Json, pointer: str, warnings: list[str]) -> Schema:
    if isinstance(doc, bool):
        return Trivial(doc)
    if not isinstance(doc, dict):
        raise NotASchema(
            f"expected a boolean or object, got {describe_value(doc)}", pointer
        )

    if "type" not in doc:
        raise MissingField("type", pointer)
    type_name = doc["type"]
    if not isinstance(type_name, str):
        # A JSON array of type names is legal in the official spec but not in
        # this subset; report it the same way as an unrecognized name.
        raise InvalidType(_render_short(type_name), f"{pointer}/type")

    consumed = {"type"}
    if type_name in GROUND_NAMES:
        parsed: Schema = Ground(GROUND_NAMES[type_name])
    elif type_name == "array":
        if "items" not in doc:
            raise MissingField("items", pointer)
        consumed.add("items")
        parsed = ArraySchema(_parse(doc["items"], f"{pointer}/items", warnings))
    elif type_name == "object":
        if "properties" not in doc:
            raise MissingField("properties", pointer)
        consumed.add("properties")
        props_doc = doc["properties"]
        if not isinstance(props_doc, dict):
            raise NotASchema(
                f"'properties' must be an object, got {describe_value(props_doc)}",
                f"{pointer}/properties",
            )
        props = {
            name: _parse(sub, f"{pointer}/properties/{_escape_pointer(name)}", warnings)
            for name, sub in props_doc.items()
        }
        parsed = ObjectSchema(props)
    else:
        raise InvalidType(type_name, f"{pointer}/type")

    for key in doc:
        if key not in consumed:
            warnings.append(f"ignoring unknown field {key!r} at {pointer or '/'}")
    return parsed


def validate(v: Json, s: Schema) -> bool:
    """Total predicate: does ``v`` conform to ``s`` (conservative semantics)?"""
    if isinstance(s, Trivial):
        return s.accept
    if isinstance(s, Ground):
        return ground_type_of(v) is s.kind
    if isinstance(s, ArraySchema):
        return isinstance(v, list) and all(validate(x, s.items) for x in v)
    assert isinstance(s, ObjectSchema)
    return (
        isinstance(v, dict)
        and v.keys() == s.props.keys()
        and all(validate(v[k], sub) for k, sub in s.props.items())
    )


def ground_type_of(v: Json) -> Optional[GroundType]:
    """The ground type of a value, or None for arrays and objects."""
    if v is None:
        return GroundType.NULL
    if isinstance(v, bool):
        return GroundType.BOOLEAN
    if is_number(v):
        return GroundType.NUMBER
    if isinstance(v, str):
        return GroundType.STRING
    return None


def schema_equal(a: Schema, b: Schema) -> bool:
    """Structural equality; object property order is irrelevant."""
    # dict equality already ignores insertion order, so dataclass equality
    # is exactly the structural equality we want.
    return a == b


def schema_to_doc(s: Schema) -> Json:
    """Serialize a schema back to a JSON document (inverse of parsing)."""
    if isinstance(s, Trivial):
        return s.accept
    if isinstance(s, Ground):
        return {"type": s.kind.value}
    if isinstance(s, ArraySchema):
        return {"type": "array", "items": schema_to_doc(s.items)}
    assert isinstance(s, ObjectSchema)
    return {
        "type": "object",
        "properties": {name: schema_to_doc(sub) for name, sub in s.props.items()},
    }


def describe_schema(s: Schema) -> str:
    """Short human-readable rendering used in diagnostics."""
    if isinstance(s, Trivial):
        return "the true schema" if s.accept else "the false schema"
    if isinstance(s, Ground):
        return s.kind.value
    if isinstance(s, ArraySchema):
        return f"array of {describe_schema(s.items)}"
    assert isinstance(s, ObjectSchema)
    names = ", ".join(s.props) or ""
    return "object {" + names + "}"


def describe_value(v: Json) -> str:
    g = ground_type_of(v)
    if g is not None:
        return g.value
    return "array" if isinstance(v, list) else "object"


def _escape_pointer(token: str) -> str:
    return token.replace("~", "~0").replace("/", "~1")


def _render_short(v: Json) -> str:
    text = repr(v)
    return text if len(text) <= 40 else text[:37] + "..."
