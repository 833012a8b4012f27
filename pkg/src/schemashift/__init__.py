"""schemashift: synthesize safe data transformers between JSON Schemas.

Given a source and a target schema (a restricted JSON Schema subset), the
package searches for a sequence of safe rewrite rules relating them and
realizes that sequence both as a directly executable transformation and as
generated JavaScript source code.
"""

from .convert import ConversionFailure, UnexpectedType, convert
from .interp import NonUniformInvert, RuntimeShapeError, apply
from .ir import (
    B2B, Copy, ExtractProp, InvertArr, InvertObj, NestObj,
    PopArr, PopObj, PopProp, PushArr, PushObj, PushProp,
    Rewrite, WellFormednessError, parse_ir, serialize_ir, well_formed,
)
from .jsgen import GeneratedProgram, emit
from .schema import (
    ArraySchema, Ground, GroundType, ObjectSchema, Schema, SchemaError,
    Trivial, parse_schema, schema_equal, schema_to_doc, validate,
)
from .search import Ambiguous, Found, NoPath, SearchOutcome, find_path

__version__ = "0.1.0"

__all__ = [
    "Ambiguous", "ArraySchema", "B2B", "ConversionFailure", "Copy",
    "ExtractProp", "Found", "GeneratedProgram", "Ground", "GroundType",
    "InvertArr", "InvertObj", "NestObj", "NoPath", "NonUniformInvert",
    "ObjectSchema", "PopArr", "PopObj", "PopProp", "PushArr", "PushObj",
    "PushProp", "Rewrite", "RuntimeShapeError", "Schema", "SchemaError",
    "SearchOutcome", "Trivial", "UnexpectedType", "WellFormednessError",
    "apply", "convert", "emit", "find_path", "parse_ir", "parse_schema",
    "schema_equal", "schema_to_doc", "serialize_ir", "validate",
    "well_formed",
]
