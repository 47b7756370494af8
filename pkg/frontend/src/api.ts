/** Thin client for the report API; all semantics live server side. */

import type {
  ExampleDetailPayload,
  ExampleListPayload,
  Label,
  PatternDetailPayload,
  PatternsPayload,
  SummaryPayload,
} from "./types";
import type { SortState } from "./state";

export function patternsUrl(sort: SortState | null): string {
  if (!sort) {
    return "/api/patterns";
  }
  const query = new URLSearchParams({ sort: sort.column, dir: sort.dir });
  return `/api/patterns?${query.toString()}`;
}

export function patternDetailUrl(rank: number): string {
  return `/api/patterns/${rank}`;
}

export function exampleListUrl(label: Label, page: number): string {
  const query = new URLSearchParams({ label, page: String(page) });
  return `/api/examples?${query.toString()}`;
}

export function exampleDetailUrl(label: Label, id: number): string {
  return `/api/examples/${label}/${id}`;
}

export async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) {
        detail = body.detail;
      }
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export const api = {
  summary: () => getJson<SummaryPayload>("/api/summary"),
  patterns: (sort: SortState | null) => getJson<PatternsPayload>(patternsUrl(sort)),
  patternDetail: (rank: number) =>
    getJson<PatternDetailPayload>(patternDetailUrl(rank)),
  exampleList: (label: Label, page: number) =>
    getJson<ExampleListPayload>(exampleListUrl(label, page)),
  exampleDetail: (label: Label, id: number) =>
    getJson<ExampleDetailPayload>(exampleDetailUrl(label, id)),
};
