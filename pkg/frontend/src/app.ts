/** Router and event wiring: URL hash -> fetch -> render, plus delegated
 * clicks for sorting, the meanings toggle, and token popovers.
 */

import { api } from "./api";
import {
  renderError,
  renderExampleDetail,
  renderExampleList,
  renderLoading,
  renderPatternList,
  renderPatternDetail,
  renderTokenPopover,
} from "./render";
import {
  encodeState,
  nextSort,
  parseState,
  toggleMeanings,
  type ViewState,
} from "./state";
import type { PatternRowPayload } from "./types";

const root = document.getElementById("app") as HTMLElement;

let currentState: ViewState = parseState(location.hash);

// The bundle is immutable, so the unsorted pattern table (used by token
// popovers for pattern strings) can be fetched once and kept.
let patternIndex: Map<number, PatternRowPayload> | null = null;

async function patternsByRank(): Promise<Map<number, PatternRowPayload>> {
  if (!patternIndex) {
    const table = await api.patterns(null);
    patternIndex = new Map(table.patterns.map((row) => [row.rank, row]));
  }
  return patternIndex;
}

async function route(): Promise<void> {
  currentState = parseState(location.hash);
  hidePopover();
  root.innerHTML = renderLoading();
  try {
    switch (currentState.view) {
      case "pattern-list": {
        const [summary, table] = await Promise.all([
          api.summary(),
          api.patterns(currentState.sort),
        ]);
        root.innerHTML = renderPatternList(summary, table, currentState);
        break;
      }
      case "pattern-detail": {
        root.innerHTML = renderPatternDetail(
          await api.patternDetail(currentState.rank)
        );
        break;
      }
      case "example-list": {
        const payload = await api.exampleList(
          currentState.label,
          currentState.page
        );
        if (payload.page !== currentState.page) {
          // Out-of-range page: the API clamps; reflect that in the URL.
          location.hash = encodeState({ ...currentState, page: payload.page });
          return;
        }
        root.innerHTML = renderExampleList(payload, currentState);
        break;
      }
      case "example-detail": {
        root.innerHTML = renderExampleDetail(
          await api.exampleDetail(currentState.label, currentState.id)
        );
        break;
      }
    }
  } catch (err) {
    root.innerHTML = renderError(err instanceof Error ? err.message : String(err));
  }
}

function hidePopover(): void {
  document.getElementById("popover")?.remove();
}

async function showPopover(anchor: HTMLElement, ranks: number[]): Promise<void> {
  hidePopover();
  const index = await patternsByRank();
  const popover = document.createElement("div");
  popover.id = "popover";
  popover.innerHTML = renderTokenPopover(ranks, index);
  document.body.appendChild(popover);
  const rect = anchor.getBoundingClientRect();
  popover.style.left = `${rect.left + window.scrollX}px`;
  popover.style.top = `${rect.bottom + window.scrollY + 4}px`;
}

document.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;

  const header = target.closest<HTMLElement>("th.sortable");
  if (header && currentState.view === "pattern-list") {
    location.hash = encodeState(
      nextSort(currentState, header.dataset.column as string)
    );
    return;
  }

  const patternHeader = target.closest<HTMLElement>("th[data-toggle-meanings]");
  if (patternHeader && currentState.view === "pattern-list") {
    location.hash = encodeState(toggleMeanings(currentState));
    return;
  }

  const row = target.closest<HTMLElement>("tr.pattern-row");
  if (row && row.dataset.rank && !target.closest("a")) {
    location.hash = encodeState({
      view: "pattern-detail",
      rank: Number(row.dataset.rank),
    });
    return;
  }

  const token = target.closest<HTMLElement>(".tok.has-patterns");
  if (token && token.dataset.ranks) {
    event.stopPropagation();
    const ranks = token.dataset.ranks.split(",").map(Number);
    void showPopover(token, ranks);
    return;
  }

  const retry = target.closest<HTMLElement>("button.retry");
  if (retry) {
    void route();
    return;
  }

  if (!target.closest("#popover")) {
    hidePopover();
  }
});

window.addEventListener("hashchange", () => void route());
void route();
