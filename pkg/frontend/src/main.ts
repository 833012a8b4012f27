/**
 * CLI entry: `node dist/main.js <program.js> <input.json>`
 *
 * Prints the transformation result to stdout as a single JSON line and exits
 * 0; any evaluation or runtime failure goes to stderr with exit 1.
 */

import { readFileSync } from "node:fs";
import { runCase } from "./harness";

function main(argv: string[]): number {
  const [programPath, inputPath] = argv;
  if (!programPath || !inputPath) {
    process.stderr.write("usage: main.js <program.js> <input.json>\n");
    return 2;
  }

  let programText: string;
  let inputJson: string;
  try {
    programText = readFileSync(programPath, "utf8");
    inputJson = readFileSync(inputPath, "utf8");
  } catch (err) {
    process.stderr.write(`cannot read case files: ${String(err)}\n`);
    return 2;
  }

  const result = runCase({ programText, inputJson });
  if (!result.ok) {
    process.stderr.write(result.error + "\n");
    return 1;
  }
  process.stdout.write(result.resultJson + "\n");
  return 0;
}

process.exit(main(process.argv.slice(2)));
