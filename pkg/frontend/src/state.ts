/** View state, fully encoded in the URL hash so every view is deep-linkable
 * and back/forward navigation just works.
 *
 * Hash grammar:
 *   #/patterns[?sort=<col>&dir=asc|desc][&meanings=1]
 *   #/patterns/<rank>
 *   #/examples/<label>[?page=<k>]
 *   #/examples/<label>/<id>
 */

import type { Label } from "./types";

export type SortDir = "asc" | "desc";

export interface SortState {
  column: string;
  dir: SortDir;
}

export type ViewState =
  | { view: "pattern-list"; sort: SortState | null; meanings: boolean }
  | { view: "pattern-detail"; rank: number }
  | { view: "example-list"; label: Label; page: number }
  | { view: "example-detail"; label: Label; id: number };

export const DEFAULT_STATE: ViewState = {
  view: "pattern-list",
  sort: null,
  meanings: false,
};

function isLabel(text: string): text is Label {
  return text === "pos" || text === "neg";
}

export function parseState(hash: string): ViewState {
  const stripped = hash.replace(/^#\/?/, "");
  const [pathPart, queryPart] = stripped.split("?", 2);
  const segments = pathPart.split("/").filter((s) => s.length > 0);
  const query = new URLSearchParams(queryPart ?? "");

  if (segments.length === 0 || segments[0] === "patterns") {
    if (segments.length >= 2) {
      const rank = Number(segments[1]);
      if (Number.isInteger(rank) && rank >= 1) {
        return { view: "pattern-detail", rank };
      }
      return DEFAULT_STATE;
    }
    const column = query.get("sort");
    const dir = query.get("dir") === "desc" ? "desc" : "asc";
    return {
      view: "pattern-list",
      sort: column ? { column, dir } : null,
      meanings: query.get("meanings") === "1",
    };
  }

  if (segments[0] === "examples" && segments.length >= 2 && isLabel(segments[1])) {
    const label = segments[1];
    if (segments.length >= 3) {
      const id = Number(segments[2]);
      if (Number.isInteger(id) && id >= 0) {
        return { view: "example-detail", label, id };
      }
      return { view: "example-list", label, page: 1 };
    }
    const page = Number(query.get("page") ?? "1");
    return {
      view: "example-list",
      label,
      page: Number.isInteger(page) && page >= 1 ? page : 1,
    };
  }

  return DEFAULT_STATE;
}

export function encodeState(state: ViewState): string {
  switch (state.view) {
    case "pattern-list": {
      const query = new URLSearchParams();
      if (state.sort) {
        query.set("sort", state.sort.column);
        query.set("dir", state.sort.dir);
      }
      if (state.meanings) {
        query.set("meanings", "1");
      }
      const suffix = query.toString();
      return suffix ? `#/patterns?${suffix}` : "#/patterns";
    }
    case "pattern-detail":
      return `#/patterns/${state.rank}`;
    case "example-list":
      return state.page > 1
        ? `#/examples/${state.label}?page=${state.page}`
        : `#/examples/${state.label}`;
    case "example-detail":
      return `#/examples/${state.label}/${state.id}`;
  }
}

/** Header click: first click sorts a column descending, repeat clicks flip. */
export function nextSort(
  state: Extract<ViewState, { view: "pattern-list" }>,
  column: string
): ViewState {
  const dir: SortDir =
    state.sort && state.sort.column === column && state.sort.dir === "desc"
      ? "asc"
      : "desc";
  return { ...state, sort: { column, dir } };
}

/** Pattern-column header click: swap canonical strings and meanings. */
export function toggleMeanings(
  state: Extract<ViewState, { view: "pattern-list" }>
): ViewState {
  return { ...state, meanings: !state.meanings };
}
