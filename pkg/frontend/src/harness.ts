/**
 * Runs generated transformer programs against JSON inputs.
 *
 * A program is a single anonymous unary function expression that assigns to
 * a free variable named `output`; the harness supplies that binding. Results
 * are JSON-round-tripped before they are reported, which normalizes -0 to 0
 * and keeps NaN/Infinity out of the output (JSON cannot carry them).
 */

export interface HarnessCase {
  programText: string;
  inputJson: string;
  expectedJson?: string;
}

export type RunResult =
  | { ok: true; resultJson: string }
  | { ok: false; error: string };

export function runCase(c: HarnessCase): RunResult {
  let input: unknown;
  try {
    input = JSON.parse(c.inputJson);
  } catch (err) {
    return { ok: false, error: `invalid input JSON: ${String(err)}` };
  }

  let transform: (value: unknown) => unknown;
  try {
    // `let output` precedes the program text so the generated function's
    // bare `output` references resolve to a real binding.
    const factory = new Function(`let output; return (${c.programText});`);
    const candidate = factory();
    if (typeof candidate !== "function") {
      return { ok: false, error: "program text is not a function expression" };
    }
    transform = candidate as (value: unknown) => unknown;
  } catch (err) {
    return { ok: false, error: `program failed to evaluate: ${String(err)}` };
  }

  let result: unknown;
  try {
    result = transform(input);
  } catch (err) {
    return { ok: false, error: `program threw: ${String(err)}` };
  }

  const resultJson = JSON.stringify(result);
  if (resultJson === undefined) {
    return { ok: false, error: "program produced no JSON-serializable result" };
  }

  if (c.expectedJson !== undefined) {
    let expected: unknown;
    try {
      expected = JSON.parse(c.expectedJson);
    } catch (err) {
      return { ok: false, error: `invalid expected JSON: ${String(err)}` };
    }
    if (!jsonEqual(JSON.parse(resultJson), expected)) {
      return {
        ok: false,
        error: `result ${resultJson} differs from expected ${c.expectedJson}`,
      };
    }
  }

  return { ok: true, resultJson };
}

/** Structural equality on parsed JSON; object key order is irrelevant. */
export function jsonEqual(a: unknown, b: unknown): boolean {
  if (Array.isArray(a) || Array.isArray(b)) {
    return (
      Array.isArray(a) &&
      Array.isArray(b) &&
      a.length === b.length &&
      a.every((x, i) => jsonEqual(x, b[i]))
    );
  }
  if (typeof a === "object" && a !== null && typeof b === "object" && b !== null) {
    const keysA = Object.keys(a).sort();
    const keysB = Object.keys(b).sort();
    if (keysA.length !== keysB.length || keysA.some((k, i) => k !== keysB[i])) {
      return false;
    }
    return keysA.every((k) =>
      jsonEqual((a as Record<string, unknown>)[k], (b as Record<string, unknown>)[k]),
    );
  }
  return a === b;
}
