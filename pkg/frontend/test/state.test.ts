import { describe, expect, it } from "vitest";

import { compile, ServiceError } from "../src/api.js";
import {
  buildRequest,
  failGenerate,
  finishGenerate,
  initialState,
  onSet,
  resultView,
  rowBits,
  setCell,
  setFamily,
  setInputCount,
  startGenerate,
  toggleCell,
  type CompileResponse,
} from "../src/state.js";

const SAMPLE_RESPONSE: CompileResponse = {
  unoptimized_expression: "(~A & ~B & C) | (A & ~B & C) | (A & B & C)",
  optimized_expression: "(~B & C) | (A & C)",
  netlist: { family: "sbv" },
  schematic: { pages: [] },
  svg_pages: ["<svg>page</svg>"],
  report: {
    counts: { NOT: 1, AND2: 2, OR2: 1 },
    total_devices: 4,
    depth_gates: 3,
    max_propagation_delay: 3,
    devices_removed_by_optimization: 7,
    unoptimized_counts: { NOT: 3, AND2: 6, OR2: 2 },
  },
  verified: true,
};

describe("editor state", () => {
  it("starts with 2^n zeroed output cells in ascending row order", () => {
    const state = initialState(3);
    expect(state.outputCells).toHaveLength(8);
    expect(state.outputCells.every((bit) => bit === 0)).toBe(true);
    expect(state.inputNames).toEqual(["A", "B", "C"]);
  });

  it("toggling a fresh 3-input table's row 001 yields on-set {1}", () => {
    let state = initialState(3);
    state = toggleCell(state, 1);
    expect(onSet(state)).toEqual([1]);
    expect(state.outputCells.filter((b) => b === 1)).toHaveLength(1);
  });

  it("builds the three-minterm demo table request", () => {
    let state = initialState(3);
    for (const row of [1, 5, 7]) state = setCell(state, row, 1);
    const request = buildRequest(state);
    expect(request.inputs).toEqual(["A", "B", "C"]);
    expect(request.outputs).toEqual(["Q"]);
    expect(request.family).toBe("sbv");
    expect(request.rows).toHaveLength(8);
    expect(request.rows[1]).toEqual({ in: "001", out: "1" });
    expect(request.rows[5]).toEqual({ in: "101", out: "1" });
    expect(request.rows[6]).toEqual({ in: "110", out: "0" });
  });

  it("resizing 3 -> 4 inputs re-initializes to 16 zeroed rows", () => {
    let state = initialState(3);
    state = setCell(state, 1, 1);
    state = setInputCount(state, 4);
    expect(state.outputCells).toHaveLength(16);
    expect(state.outputCells.every((bit) => bit === 0)).toBe(true);
    expect(state.inputNames).toEqual(["A", "B", "C", "D"]);
  });

  it("rejects out-of-range sizes and rows", () => {
    expect(() => setInputCount(initialState(3), 9)).toThrow(RangeError);
    expect(() => setCell(initialState(2), 4, 1)).toThrow(RangeError);
  });

  it("renders row bits MSB-first", () => {
    expect(rowBits(5, 3)).toBe("101");
    expect(rowBits(0, 4)).toBe("0000");
  });
});

describe("staleness", () => {
  it("editing after a result marks it stale; regenerate clears it", () => {
    let state = initialState(3);
    state = finishGenerate(startGenerate(state), SAMPLE_RESPONSE);
    expect(state.stale).toBe(false);
    expect(state.pending).toBe(false);

    state = toggleCell(state, 2);
    expect(state.stale).toBe(true);
    expect(state.lastResult).toBe(SAMPLE_RESPONSE); // still shown, flagged

    state = finishGenerate(startGenerate(state), SAMPLE_RESPONSE);
    expect(state.stale).toBe(false);
  });

  it("editing before any result does not mark stale", () => {
    let state = initialState(3);
    state = toggleCell(state, 0);
    expect(state.stale).toBe(false);
  });

  it("family and size changes also flag a held result", () => {
    let state = finishGenerate(initialState(3), SAMPLE_RESPONSE);
    expect(setFamily(state, "nand-demo").stale).toBe(true);
    expect(setInputCount(state, 2).stale).toBe(true);
  });
});

describe("generate flow", () => {
  it("stores the service response object verbatim", () => {
    const state = finishGenerate(startGenerate(initialState(3)), SAMPLE_RESPONSE);
    expect(state.lastResult).toBe(SAMPLE_RESPONSE);
    const view = resultView(state.lastResult!);
    expect(view.expression).toBe(SAMPLE_RESPONSE.optimized_expression);
    expect(view.svgPages).toBe(SAMPLE_RESPONSE.svg_pages);
    expect(view.gatesRemoved).toBe("7 gates removed");
    expect(view.totalDevices).toBe(4);
  });

  it("failure keeps the table and raises the banner", () => {
    let state = initialState(3);
    state = setCell(state, 1, 1);
    const before = state.outputCells;
    state = failGenerate(startGenerate(state), "MissingRow: expected 8 rows");
    expect(state.errorBanner).toBe("MissingRow: expected 8 rows");
    expect(state.pending).toBe(false);
    expect(state.outputCells).toEqual(before);
  });

  it("startGenerate flags a pending request and clears the banner", () => {
    let state = failGenerate(initialState(3), "boom");
    state = startGenerate(state);
    expect(state.pending).toBe(true);
    expect(state.errorBanner).toBeNull();
  });
});

describe("api client", () => {
  const jsonResponse = (status: number, body: unknown): Response =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });

  it("posts the request body and returns the parsed payload", async () => {
    const calls: { url: string; init?: RequestInit }[] = [];
    const fetchFn = async (url: string, init?: RequestInit) => {
      calls.push({ url, init });
      return jsonResponse(200, SAMPLE_RESPONSE);
    };
    const request = buildRequest(initialState(2));
    const result = await compile(request, fetchFn);
    expect(calls[0].url).toBe("/api/compile");
    expect(JSON.parse(calls[0].init!.body as string)).toEqual(request);
    expect(result).toEqual(SAMPLE_RESPONSE);
  });

  it("surfaces the service's machine-readable error code", async () => {
    const fetchFn = async () =>
      jsonResponse(400, { error: "MissingRow", message: "expected 8 rows" });
    await expect(
      compile(buildRequest(initialState(3)), fetchFn),
    ).rejects.toMatchObject(
      new ServiceError("MissingRow", "expected 8 rows"),
    );
  });
});
