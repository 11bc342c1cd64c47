/** Thin fetch wrappers for the compile service. */

import type { CompileRequest, CompileResponse } from "./state.js";

export interface FamilyInfo {
  id: string;
  display_name: string;
  gates: string[];
  device_cost: Record<string, number>;
  gate_delay: Record<string, number>;
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ServiceError extends Error {
  code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

async function raiseForStatus(response: Response): Promise<never> {
  let code = `HTTP ${response.status}`;
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") {
      code = body.error;
      message = body.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the HTTP status text
  }
  throw new ServiceError(code, message);
}

export async function fetchFamilies(
  fetchFn: FetchLike = fetch,
): Promise<FamilyInfo[]> {
  const response = await fetchFn("/api/families");
  if (!response.ok) await raiseForStatus(response);
  return (await response.json()) as FamilyInfo[];
}

export async function compile(
  request: CompileRequest,
  fetchFn: FetchLike = fetch,
): Promise<CompileResponse> {
  const response = await fetchFn("/api/compile", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
  });
  if (!response.ok) await raiseForStatus(response);
  return (await response.json()) as CompileResponse;
}
