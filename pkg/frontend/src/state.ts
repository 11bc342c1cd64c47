/**
 * Pure editor state for the truth-table design loop.
 *
 * All circuit math happens server-side; this module only tracks what the
 * user typed, the last compile response verbatim, and staleness.
 */

export interface GateReport {
  counts: Record<string, number>;
  total_devices: number;
  depth_gates: number;
  max_propagation_delay: number;
  devices_removed_by_optimization: number;
  unoptimized_counts: Record<string, number>;
}

export interface CompileResponse {
  unoptimized_expression: string;
  optimized_expression: string;
  netlist: unknown;
  schematic: unknown;
  svg_pages: string[];
  report: GateReport;
  verified: boolean;
}

export interface CompileRequest {
  inputs: string[];
  outputs: string[];
  rows: { in: string; out: string }[];
  family: string;
}

export interface EditorState {
  inputCount: number;
  inputNames: string[];
  familyId: string;
  outputCells: (0 | 1)[];
  lastResult: CompileResponse | null;
  stale: boolean;
  pending: boolean;
  errorBanner: string | null;
}

export const MAX_INPUTS = 8;
export const INPUT_NAMES = ["A", "B", "C", "D", "E", "F", "G", "H"];

export function initialState(inputCount = 3, familyId = "sbv"): EditorState {
  return {
    inputCount,
    inputNames: INPUT_NAMES.slice(0, inputCount),
    familyId,
    outputCells: new Array<0 | 1>(2 ** inputCount).fill(0),
    lastResult: null,
    stale: false,
    pending: false,
    errorBanner: null,
  };
}

/** Bits of one table row, most significant input first. */
export function rowBits(row: number, inputCount: number): string {
  return row.toString(2).padStart(inputCount, "0");
}

function markEdited(state: EditorState): Pick<EditorState, "stale"> {
  return { stale: state.lastResult !== null };
}

/** Changing the input count re-initializes every output cell to 0. */
export function setInputCount(state: EditorState, inputCount: number): EditorState {
  if (inputCount < 1 || inputCount > MAX_INPUTS) {
    throw new RangeError(`input count must be 1..${MAX_INPUTS}`);
  }
  return {
    ...state,
    inputCount,
    inputNames: INPUT_NAMES.slice(0, inputCount),
    outputCells: new Array<0 | 1>(2 ** inputCount).fill(0),
    ...markEdited(state),
  };
}

export function setFamily(state: EditorState, familyId: string): EditorState {
  return { ...state, familyId, ...markEdited(state) };
}

export function setCell(state: EditorState, row: number, bit: 0 | 1): EditorState {
  if (row < 0 || row >= state.outputCells.length) {
    throw new RangeError(`row ${row} out of range`);
  }
  const outputCells = state.outputCells.slice();
  outputCells[row] = bit;
  return { ...state, outputCells, ...markEdited(state) };
}

export function toggleCell(state: EditorState, row: number): EditorState {
  const current = state.outputCells[row];
  return setCell(state, row, current === 1 ? 0 : 1);
}

/** Rows with output 1 (handy for tests and summaries). */
export function onSet(state: EditorState): number[] {
  const rows: number[] = [];
  state.outputCells.forEach((bit, row) => {
    if (bit === 1) rows.push(row);
  });
  return rows;
}

/** Request body for POST /api/compile, exactly as the service expects. */
export function buildRequest(state: EditorState): CompileRequest {
  return {
    inputs: state.inputNames,
    outputs: ["Q"],
    rows: state.outputCells.map((bit, row) => ({
      in: rowBits(row, state.inputCount),
      out: String(bit),
    })),
    family: state.familyId,
  };
}

export function startGenerate(state: EditorState): EditorState {
  return { ...state, pending: true, errorBanner: null };
}

export function finishGenerate(
  state: EditorState,
  result: CompileResponse,
): EditorState {
  return {
    ...state,
    lastResult: result,
    stale: false,
    pending: false,
    errorBanner: null,
  };
}

export function failGenerate(state: EditorState, message: string): EditorState {
  return { ...state, pending: false, errorBanner: message };
}

/**
 * Display model: every field is taken verbatim from the service response,
 * never recomputed client-side.
 */
export function resultView(result: CompileResponse) {
  return {
    expression: result.optimized_expression,
    unoptimizedExpression: result.unoptimized_expression,
    gatesRemoved: `${result.report.devices_removed_by_optimization} gates removed`,
    totalDevices: result.report.total_devices,
    maxDelay: result.report.max_propagation_delay,
    svgPages: result.svg_pages,
    verified: result.verified,
  };
}
