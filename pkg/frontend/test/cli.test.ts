import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main, parseArgs, UsageError } from "../src/cli.js";

const VALID = [
  "k,u1,u2,v1,v2,residual,dist,A,B",
  "0,5,5,5,5,4.08,7.07,,",
  "1,7.88,2.11,10.77,-0.77,4.71,8.16,,",
].join("\n");

function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "viproj-plots-"));
}

describe("argument parsing", () => {
  it("parses a full render invocation", () => {
    const args = parseArgs([
      "render", "--csv", "a.csv", "--kind", "phase", "--out", "a.svg",
      "--annotate-radius", "7.07",
    ]);
    expect(args).toEqual({
      csv: "a.csv", kind: "phase", out: "a.svg", annotateRadius: 7.07,
    });
  });

  it("rejects unknown kinds, flags and non-svg outputs", () => {
    expect(() => parseArgs(["render", "--kind", "surface"])).toThrowError(UsageError);
    expect(() => parseArgs(["render", "--wat", "1"])).toThrowError(UsageError);
    expect(() =>
      parseArgs(["render", "--csv", "a.csv", "--kind", "phase", "--out", "a.png"]),
    ).toThrowError(/\.svg only/);
    expect(() => parseArgs(["plot"])).toThrowError(UsageError);
  });
});

describe("render command", () => {
  it("writes an image and exits 0", () => {
    const dir = tempDir();
    const csv = join(dir, "run.csv");
    const out = join(dir, "run.svg");
    writeFileSync(csv, VALID);
    expect(main(["render", "--csv", csv, "--kind", "phase", "--out", out])).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("<svg");
  });

  it("exits 1 and names the missing column on schema mismatch", () => {
    const dir = tempDir();
    const csv = join(dir, "bad.csv");
    writeFileSync(csv, VALID.replace(",dist,", ",distance,"));
    const out = join(dir, "bad.svg");
    expect(main(["render", "--csv", csv, "--kind", "phase", "--out", out])).toBe(1);
  });

  it("exits 1 on a header-only trajectory", () => {
    const dir = tempDir();
    const csv = join(dir, "empty.csv");
    writeFileSync(csv, "k,u1,u2,v1,v2,residual,dist,A,B\n");
    expect(
      main(["render", "--csv", csv, "--kind", "residual", "--out", join(dir, "e.svg")]),
    ).toBe(1);
  });

  it("exits 1 when the file does not exist", () => {
    const dir = tempDir();
    expect(
      main(["render", "--csv", join(dir, "nope.csv"), "--kind", "phase",
            "--out", join(dir, "n.svg")]),
    ).toBe(1);
  });
});
