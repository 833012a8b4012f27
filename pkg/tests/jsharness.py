"""Bridge to the JavaScript execution harness under ``frontend/``.

The harness is a separate Node package; when Node or the built harness is
missing, every test that needs it skips. Protocol: program and input are
delivered as files, the result comes back on stdout as a single JSON line.
"""

from __future__ import annotations

import json
import random
import shutil
import subprocess
import tempfile
from pathlib import Path

from schemashift import interp
from schemashift.jsgen import emit
from schemashift.search import Found, find_path
from schemashift.values import Json, json_equal

from genvalues import gen_pair, value_for_path

REPO_ROOT = Path(__file__).resolve().parent.parent
HARNESS_MAIN = REPO_ROOT / "frontend" / "dist" / "main.js"


def harness_available() -> bool:
    return shutil.which("node") is not None and HARNESS_MAIN.exists()


def skip_reason() -> str:
    return "requires a JS runtime and the built frontend harness (frontend/dist)"


class HarnessError(Exception):
    """The harness exited nonzero; carries its stderr."""


def run_program(program_text: str, input_value: Json) -> Json:
    """Execute one generated program on one input in a fresh Node process."""
    with tempfile.TemporaryDirectory(prefix="schemashift-js-") as workdir:
        program_path = Path(workdir) / "program.js"
        input_path = Path(workdir) / "input.json"
        program_path.write_text(program_text + "\n", encoding="utf-8")
        input_path.write_text(json.dumps(input_value), encoding="utf-8")
        proc = subprocess.run(
            ["node", str(HARNESS_MAIN), str(program_path), str(input_path)],
            capture_output=True,
            text=True,
            timeout=30,
        )
    if proc.returncode != 0:
        raise HarnessError(proc.stderr.strip())
    return json.loads(proc.stdout)


def differential_sweep(seed: int, min_cases: int) -> int:
    """Run generated found-path cases through both backends and compare.

    Returns the number of agreeing cases; raises AssertionError on the first
    disagreement. String-to-number cases are generated with canonical integer
    strings only, so both sides stay inside the conversion table's domain.
    """
    rng = random.Random(seed)
    cases = 0
    attempts = 0
    while cases < min_cases:
        attempts += 1
        assert attempts < min_cases * 40, "generator stopped producing found paths"
        src, tgt = gen_pair(rng, depth=3, fanout=3)
        outcome = find_path(src, tgt)
        if not isinstance(outcome, Found):
            continue
        value = value_for_path(rng, src, outcome.path)
        expected = interp.apply(outcome.path, value)
        got = run_program(emit(outcome.path).source_text, value)
        assert json_equal(got, expected), (
            f"backends disagree\npath: {outcome.path}\nvalue: {value}\n"
            f"interpreter: {expected}\njs runtime: {got}"
        )
        cases += 1
    return cases
