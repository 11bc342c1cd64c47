/** DOM wiring: renders the editor state and talks to the service. */

import { ServiceError, compile, fetchFamilies } from "./api.js";
import {
  EditorState,
  MAX_INPUTS,
  buildRequest,
  failGenerate,
  finishGenerate,
  initialState,
  resultView,
  rowBits,
  setFamily,
  setInputCount,
  startGenerate,
  toggleCell,
} from "./state.js";

let state: EditorState = initialState();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderTable() {
  const head = el<HTMLTableRowElement>("table-head");
  head.innerHTML = "";
  for (const name of state.inputNames) {
    const th = document.createElement("th");
    th.textContent = name;
    head.appendChild(th);
  }
  const qth = document.createElement("th");
  qth.textContent = "Q";
  qth.className = "out-col";
  head.appendChild(qth);

  const body = el<HTMLTableSectionElement>("table-body");
  body.innerHTML = "";
  state.outputCells.forEach((bit, row) => {
    const tr = document.createElement("tr");
    for (const c of rowBits(row, state.inputCount)) {
      const td = document.createElement("td");
      td.textContent = c;
      tr.appendChild(td);
    }
    const td = document.createElement("td");
    const button = document.createElement("button");
    button.className = `cell bit${bit}`;
    button.textContent = String(bit);
    button.addEventListener("click", () => {
      state = toggleCell(state, row);
      render();
    });
    td.appendChild(button);
    tr.appendChild(td);
    body.appendChild(tr);
  });
}

function renderResult() {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = state.errorBanner ?? "";
  banner.hidden = state.errorBanner === null;

  el<HTMLSpanElement>("stale").hidden = !(state.stale && state.lastResult);
  el<HTMLButtonElement>("generate").disabled = state.pending;

  const results = el<HTMLDivElement>("results");
  if (!state.lastResult) {
    results.hidden = true;
    return;
  }
  results.hidden = false;
  const view = resultView(state.lastResult);
  el<HTMLElement>("expr").textContent = view.expression;
  el<HTMLElement>("unopt-expr").textContent = view.unoptimizedExpression;
  el<HTMLSpanElement>("devices").textContent = String(view.totalDevices);
  el<HTMLSpanElement>("removed").textContent = view.gatesRemoved;
  el<HTMLSpanElement>("delay").textContent = String(view.maxDelay);
  el<HTMLSpanElement>("verified").textContent = view.verified ? "yes" : "no";
  el<HTMLDivElement>("schematic").innerHTML = view.svgPages.join("\n");
}

function render() {
  renderTable();
  renderResult();
}

async function generate() {
  if (state.pending) return;
  state = startGenerate(state);
  render();
  try {
    const result = await compile(buildRequest(state));
    state = finishGenerate(state, result);
  } catch (err) {
    const message =
      err instanceof ServiceError
        ? `${err.code}: ${err.message}`
        : `service unreachable: ${String(err)}`;
    state = failGenerate(state, message);
  }
  render();
}

async function populateFamilies() {
  const select = el<HTMLSelectElement>("family");
  try {
    const families = await fetchFamilies();
    select.innerHTML = "";
    for (const family of families) {
      const option = document.createElement("option");
      option.value = family.id;
      option.textContent = family.display_name;
      select.appendChild(option);
    }
    select.value = state.familyId;
  } catch {
    // leave the static default option in place when the service is down
  }
}

export function start() {
  const countSelect = el<HTMLSelectElement>("input-count");
  countSelect.innerHTML = "";
  for (let n = 1; n <= MAX_INPUTS; n += 1) {
    const option = document.createElement("option");
    option.value = String(n);
    option.textContent = String(n);
    countSelect.appendChild(option);
  }
  countSelect.value = String(state.inputCount);
  countSelect.addEventListener("change", () => {
    state = setInputCount(state, Number(countSelect.value));
    render();
  });

  el<HTMLSelectElement>("family").addEventListener("change", (event) => {
    state = setFamily(state, (event.target as HTMLSelectElement).value);
    render();
  });

  el<HTMLButtonElement>("generate").addEventListener("click", () => {
    void generate();
  });

  void populateFamilies();
  render();
}

start();
