"""Command-line front door.

Subcommands:
  synth     synthesize a transformer (JavaScript source or textual IR)
  apply     run the transformation directly on a data file
  ir        print the rewrite sequence for a schema pair
  validate  check a data file against one schema

Exit codes: 0 success, 2 schema parse error, 3 no path, 4 ambiguous path,
5 runtime conversion/shape error (including failed data validation),
6 I/O error. Output files are written atomically: on any failure the
destination is left untouched.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional, Sequence

from . import interp
from .convert import ConversionFailure, UnexpectedType
from .interp import NonUniformInvert, RuntimeShapeError
from .ir import IrSyntaxError, Rewrite, WellFormednessError, parse_ir, serialize_ir
from .jsgen import emit
from .schema import Schema, SchemaError, parse_schema, validate
from .search import Ambiguous, Found, NoPath, find_path
from .values import Json, loads_strict

EXIT_OK = 0
EXIT_SCHEMA_ERROR = 2
EXIT_NO_PATH = 3
EXIT_AMBIGUOUS = 4
EXIT_RUNTIME_ERROR = 5
EXIT_IO_ERROR = 6


class _CliFailure(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except _CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schemashift",
        description="Synthesize safe data transformers between JSON Schemas.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, *, schemas_required: bool = True) -> None:
        p.add_argument("--input-schema", required=schemas_required, metavar="PATH")
        p.add_argument("--output-schema", required=schemas_required, metavar="PATH")
        p.add_argument("-o", "--out", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--quiet", action="store_true", help="suppress warnings")

    synth = sub.add_parser("synth", help="synthesize a transformer program")
    add_common(synth)
    synth.add_argument("--backend", choices=["js", "ir"], default="js")

    apply_p = sub.add_parser("apply", help="transform a data file")
    add_common(apply_p, schemas_required=False)
    apply_p.add_argument("--data", required=True, metavar="PATH")
    apply_p.add_argument(
        "--ir", metavar="PATH",
        help="run a pre-synthesized IR file instead of searching for a path",
    )
    apply_p.add_argument(
        "--no-validate", action="store_true",
        help="skip validating the data against the schemas",
    )

    ir_p = sub.add_parser("ir", help="print the rewrite sequence for a schema pair")
    add_common(ir_p)

    val = sub.add_parser("validate", help="check a data file against a schema")
    val.add_argument("--schema", required=True, metavar="PATH")
    val.add_argument("--data", required=True, metavar="PATH")
    val.add_argument("--quiet", action="store_true", help="suppress warnings")
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.subcommand == "synth":
        return _cmd_synth(args)
    if args.subcommand == "apply":
        return _cmd_apply(args)
    if args.subcommand == "ir":
        return _cmd_ir(args)
    assert args.subcommand == "validate"
    return _cmd_validate(args)


def _cmd_synth(args: argparse.Namespace) -> int:
    src = _load_schema(args.input_schema, args.quiet)
    tgt = _load_schema(args.output_schema, args.quiet)
    path = _find_path_or_fail(src, tgt)
    if args.backend == "ir":
        text = serialize_ir(path)
    else:
        text = emit(path).source_text + "\n"
    _write_output(args.out, text)
    return EXIT_OK


def _cmd_ir(args: argparse.Namespace) -> int:
    src = _load_schema(args.input_schema, args.quiet)
    tgt = _load_schema(args.output_schema, args.quiet)
    path = _find_path_or_fail(src, tgt)
    _write_output(args.out, serialize_ir(path))
    return EXIT_OK


def _cmd_apply(args: argparse.Namespace) -> int:
    src = _load_schema(args.input_schema, args.quiet) if args.input_schema else None
    tgt = _load_schema(args.output_schema, args.quiet) if args.output_schema else None
    data = _load_json(args.data)

    if args.ir is not None:
        path = _load_ir(args.ir)
    else:
        if src is None or tgt is None:
            raise _CliFailure(
                EXIT_IO_ERROR,
                "apply requires --input-schema and --output-schema unless --ir is given",
            )
        path = _find_path_or_fail(src, tgt)

    if not args.no_validate and src is not None and not validate(data, src):
        raise _CliFailure(
            EXIT_RUNTIME_ERROR, f"data in {args.data} does not conform to the input schema"
        )
    try:
        result = interp.apply(path, data)
    except (ConversionFailure, UnexpectedType, RuntimeShapeError, NonUniformInvert) as exc:
        raise _CliFailure(EXIT_RUNTIME_ERROR, str(exc)) from None
    if not args.no_validate and tgt is not None and not validate(result, tgt):
        raise _CliFailure(
            EXIT_RUNTIME_ERROR, "transformed data does not conform to the output schema"
        )
    _write_output(args.out, _pretty(result))
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    schema = _load_schema(args.schema, args.quiet)
    data = _load_json(args.data)
    if validate(data, schema):
        print("valid")
        return EXIT_OK
    raise _CliFailure(
        EXIT_RUNTIME_ERROR, f"data in {args.data} does not conform to the schema"
    )


def _find_path_or_fail(src: Schema, tgt: Schema) -> tuple[Rewrite, ...]:
    outcome = find_path(src, tgt)
    if isinstance(outcome, Found):
        return outcome.path
    if isinstance(outcome, NoPath):
        raise _CliFailure(EXIT_NO_PATH, f"no transformation path: {outcome.reason}")
    assert isinstance(outcome, Ambiguous)
    names = ", ".join(repr(n) for n in outcome.candidates)
    raise _CliFailure(
        EXIT_AMBIGUOUS, f"ambiguous transformation path: properties {names} compete"
    )


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CliFailure(EXIT_IO_ERROR, f"cannot read {path}: {exc}") from None


def _load_json(path: str) -> Json:
    text = _read_text(path)
    try:
        return loads_strict(text)
    except ValueError as exc:
        raise _CliFailure(EXIT_IO_ERROR, f"invalid JSON in {path}: {exc}") from None


def _load_schema(path: str, quiet: bool) -> Schema:
    text = _read_text(path)
    try:
        doc = loads_strict(text)
    except ValueError as exc:
        raise _CliFailure(EXIT_SCHEMA_ERROR, f"invalid JSON in schema {path}: {exc}") from None
    warnings: list[str] = []
    try:
        schema = parse_schema(doc, warnings)
    except SchemaError as exc:
        raise _CliFailure(EXIT_SCHEMA_ERROR, f"in schema {path}: {exc}") from None
    if not quiet:
        for note in warnings:
            print(f"warning: {path}: {note}", file=sys.stderr)
    return schema


def _load_ir(path: str) -> list[Rewrite]:
    text = _read_text(path)
    try:
        return parse_ir(text)
    except (IrSyntaxError, WellFormednessError) as exc:
        raise _CliFailure(EXIT_SCHEMA_ERROR, f"in IR file {path}: {exc}") from None


def _pretty(value: Json) -> str:
    return json.dumps(value, ensure_ascii=False, indent=2) + "\n"


def _write_output(out_path: Optional[str], text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    try:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".schemashift-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp_path, out_path)
        except BaseException:
            os.unlink(tmp_path)
            raise
    except OSError as exc:
        raise _CliFailure(EXIT_IO_ERROR, f"cannot write {out_path}: {exc}") from None
