import { execFileSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { jsonEqual, runCase } from "../src/harness";

const ARRAY_PROGRAM = `function(input) {
    let arr0 = [];
    for (let idx1 = 0; idx1 < input.length; idx1++) {
        arr0[idx1] = parseInt(input[idx1]);
    }
    output = arr0;
    return output;
}`;

const COPY_PROGRAM = `function(input) {
    output = input;
    return output;
}`;

describe("runCase", () => {
  it("runs the array conversion program", () => {
    const result = runCase({ programText: ARRAY_PROGRAM, inputJson: '["1","2"]' });
    expect(result).toEqual({ ok: true, resultJson: "[1,2]" });
  });

  it("runs the copy program on an object", () => {
    const result = runCase({ programText: COPY_PROGRAM, inputJson: '{"a":5}' });
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(JSON.parse(result.resultJson)).toEqual({ a: 5 });
    }
  });

  it("documents the parseInt failure set: NaN becomes null in JSON", () => {
    // The interpreter treats this as a hard conversion failure; the raw JS
    // runtime yields NaN, which the JSON round trip renders as null. The
    // case generator keeps such inputs out of the agreement suite.
    const result = runCase({ programText: ARRAY_PROGRAM, inputJson: '["abc"]' });
    expect(result).toEqual({ ok: true, resultJson: "[null]" });
  });

  it("normalizes -0 to 0", () => {
    const result = runCase({ programText: COPY_PROGRAM, inputJson: "-0" });
    expect(result).toEqual({ ok: true, resultJson: "0" });
  });

  it("checks the optional expectation", () => {
    const good = runCase({
      programText: ARRAY_PROGRAM,
      inputJson: '["7"]',
      expectedJson: "[7]",
    });
    expect(good.ok).toBe(true);
    const bad = runCase({
      programText: ARRAY_PROGRAM,
      inputJson: '["7"]',
      expectedJson: "[8]",
    });
    expect(bad.ok).toBe(false);
  });

  it("reports runtime errors instead of throwing", () => {
    const result = runCase({
      programText: "function(input) {\n    output = input.missing.deeper;\n    return output;\n}",
      inputJson: "{}",
    });
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.error).toContain("program threw");
    }
  });

  it("rejects non-function program text", () => {
    const result = runCase({ programText: "42", inputJson: "1" });
    expect(result.ok).toBe(false);
  });

  it("rejects invalid input JSON", () => {
    const result = runCase({ programText: COPY_PROGRAM, inputJson: "{nope" });
    expect(result.ok).toBe(false);
  });
});

describe("jsonEqual", () => {
  it("ignores object key order", () => {
    expect(jsonEqual({ a: 1, b: [2] }, { b: [2], a: 1 })).toBe(true);
  });

  it("distinguishes shapes and values", () => {
    expect(jsonEqual([1], [1, 1])).toBe(false);
    expect(jsonEqual({ a: 1 }, { a: 2 })).toBe(false);
    expect(jsonEqual(null, 0)).toBe(false);
    expect(jsonEqual(true, 1)).toBe(false);
  });
});

describe("command line protocol", () => {
  it("prints one JSON line for a case delivered as files", () => {
    const dir = mkdtempSync(join(tmpdir(), "harness-"));
    const programPath = join(dir, "program.js");
    const inputPath = join(dir, "input.json");
    writeFileSync(programPath, ARRAY_PROGRAM);
    writeFileSync(inputPath, '["30","4"]');
    const stdout = execFileSync(
      process.execPath,
      [join(__dirname, "..", "dist", "main.js"), programPath, inputPath],
      { encoding: "utf8" },
    );
    expect(stdout).toBe("[30,4]\n");
  });

  it("exits nonzero with stderr on runtime failure", () => {
    const dir = mkdtempSync(join(tmpdir(), "harness-"));
    const programPath = join(dir, "program.js");
    const inputPath = join(dir, "input.json");
    writeFileSync(programPath, "function(input) {\n    output = input.a.b;\n    return output;\n}");
    writeFileSync(inputPath, "{}");
    let failed = false;
    try {
      execFileSync(
        process.execPath,
        [join(__dirname, "..", "dist", "main.js"), programPath, inputPath],
        { encoding: "utf8", stdio: ["ignore", "pipe", "pipe"] },
      );
    } catch (err: unknown) {
      failed = true;
      const stderr = (err as { stderr: string }).stderr;
      expect(stderr).toContain("program threw");
    }
    expect(failed).toBe(true);
  });
});
