// Loads the wire fixture recorded from the real service
// (scripts/record-fixture.py regenerates it).

import { readFileSync } from "node:fs";
import { resolve } from "node:path";

export function loadFixture(): Record<string, any> {
  // resolved from the package root, where vitest runs
  const path = resolve(process.cwd(), "tests/fixtures/wire.json");
  return JSON.parse(readFileSync(path, "utf8"));
}
