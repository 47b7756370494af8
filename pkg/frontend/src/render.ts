/** Pure payload+state -> HTML renderers for the four report views.
 *
 * No fetching, no matching, no statistics: everything shown comes verbatim
 * from the API payloads, so a view is a deterministic function of
 * (payloads, ViewState) and can be snapshot-tested with fixtures.
 */

import type {
  ExampleDetailPayload,
  ExampleListPayload,
  MatchedExamplePayload,
  PatternDetailPayload,
  PatternRowPayload,
  PatternsPayload,
  SummaryPayload,
  TokenPayload,
} from "./types";
import { encodeState, type SortState, type ViewState } from "./state";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const NUMERIC_FORMAT = new Set([
  "coverage",
  "metric",
  "precision",
  "recall",
  "f1",
]);

function formatCell(column: string, row: PatternRowPayload): string {
  const value = row[column as keyof PatternRowPayload] as number | string;
  if (NUMERIC_FORMAT.has(column) && typeof value === "number") {
    return value.toFixed(4);
  }
  return String(value);
}

function detailHref(rank: number): string {
  return encodeState({ view: "pattern-detail", rank });
}

function exampleDetailHref(label: "pos" | "neg", id: number): string {
  return encodeState({ view: "example-detail", label, id });
}

function sortIndicator(column: string, sort: SortState | null): string {
  if (!sort || sort.column !== column) {
    return "";
  }
  return sort.dir === "desc" ? " ▾" : " ▴";
}

function summaryBlock(summary: SummaryPayload): string {
  const cfg = summary.configuration;
  const cfgItems = Object.entries(cfg)
    .filter(([key]) => key !== "custom_extractors")
    .map(
      ([key, value]) =>
        `<span class="cfg-item"><b>${escapeHtml(key)}</b>=${escapeHtml(
          JSON.stringify(value)
        )}</span>`
    )
    .join(" ");
  const ds = summary.dataset;
  return `
<section class="summary">
  <div class="dataset-stats">
    <a href="${encodeState({ view: "example-list", label: "pos", page: 1 })}">
      ${ds.num_pos} positive examples</a> (${ds.num_tokens_pos} tokens) ·
    <a href="${encodeState({ view: "example-list", label: "neg", page: 1 })}">
      ${ds.num_neg} negative examples</a> (${ds.num_tokens_neg} tokens) ·
    ${summary.num_patterns} patterns over an alphabet of ${summary.alphabet_size}
  </div>
  <details class="configuration"><summary>Configuration</summary>
    <div>${cfgItems}</div>
  </details>
</section>`;
}

/** Pattern-centric level 1: the sortable statistics table. */
export function renderPatternList(
  summary: SummaryPayload,
  payload: PatternsPayload,
  state: Extract<ViewState, { view: "pattern-list" }>
): string {
  const headers = payload.columns
    .map((column) => {
      if (column === "pattern") {
        const title = state.meanings ? "pattern (meanings)" : "pattern";
        return `<th class="pattern-header" data-toggle-meanings="1" title="click to toggle meanings">${title}</th>`;
      }
      if (column === "meaning") {
        return "";
      }
      return `<th class="sortable" data-column="${column}">${column}${sortIndicator(
        column,
        state.sort
      )}</th>`;
    })
    .join("");
  const rows = payload.patterns
    .map((row) => {
      const patternCell = state.meanings ? row.meaning : row.pattern;
      const cells = payload.columns
        .map((column) => {
          if (column === "meaning") {
            return "";
          }
          if (column === "pattern") {
            return `<td class="pattern-cell"><a class="row-link" href="${detailHref(
              row.rank
            )}">${escapeHtml(patternCell)}</a></td>`;
          }
          return `<td class="num">${escapeHtml(formatCell(column, row))}</td>`;
        })
        .join("");
      return `<tr class="pattern-row polarity-${row.polarity}" data-rank="${row.rank}">${cells}</tr>`;
    })
    .join("\n");
  return `
${summaryBlock(summary)}
<table class="pattern-table">
  <thead><tr>${headers}</tr></thead>
  <tbody>
${rows}
  </tbody>
</table>`;
}

function markedTokens(example: MatchedExamplePayload): string {
  const emphasized = new Set(example.highlight_indices);
  return example.tokens
    .map((surface, idx) =>
      emphasized.has(idx)
        ? `<mark class="hit">${escapeHtml(surface)}</mark>`
        : escapeHtml(surface)
    )
    .join(" ");
}

function matchedExampleList(
  label: "pos" | "neg",
  title: string,
  entries: MatchedExamplePayload[]
): string {
  const items = entries.length
    ? entries
        .map(
          (entry) =>
            `<li class="example-line">${markedTokens(entry)} ` +
            `<a class="link-icon" title="example details" href="${exampleDetailHref(
              label,
              entry.id
            )}">&#128279;</a></li>`
        )
        .join("\n")
    : '<li class="empty">no matches</li>';
  return `
<section class="matched-${label}">
  <h3>${title} (${entries.length})</h3>
  <ul class="example-list">
${items}
  </ul>
</section>`;
}

/** Pattern-centric level 2: one pattern with its matched examples. */
export function renderPatternDetail(payload: PatternDetailPayload): string {
  const row = payload.pattern;
  return `
<section class="pattern-detail">
  <p class="crumbs"><a href="${encodeState({
    view: "pattern-list",
    sort: null,
    meanings: false,
  })}">&larr; all patterns</a></p>
  <h2>#${row.rank} <code>${escapeHtml(row.pattern)}</code></h2>
  <p class="meaning">${escapeHtml(row.meaning)}</p>
  <p class="stats">
    polarity <b class="polarity-${row.polarity}">${row.polarity}</b> ·
    matched ${row.num_pos_matched} positive / ${row.num_neg_matched} negative ·
    coverage ${row.coverage.toFixed(4)} · score ${row.metric.toFixed(4)} ·
    precision ${row.precision.toFixed(4)} · recall ${row.recall.toFixed(4)} ·
    F1 ${row.f1.toFixed(4)}
  </p>
  ${matchedExampleList("pos", "Positive examples matched", payload.matched.pos)}
  ${matchedExampleList("neg", "Negative examples matched", payload.matched.neg)}
</section>`;
}

function tokenSpan(token: TokenPayload): string {
  const ranks = token.patterns.join(",");
  const clickable = token.patterns.length ? " has-patterns" : "";
  return (
    `<span class="tok hl-${token.highlight}${clickable}"` +
    (ranks ? ` data-ranks="${ranks}"` : "") +
    `>${escapeHtml(token.surface)}</span>`
  );
}

function pager(payload: ExampleListPayload): string {
  const { label, page, page_count } = payload;
  const link = (target: number, text: string, enabled: boolean) =>
    enabled
      ? `<a class="page-link" href="${encodeState({
          view: "example-list",
          label,
          page: target,
        })}">${text}</a>`
      : `<span class="page-link disabled">${text}</span>`;
  return `
<nav class="pager">
  ${link(page - 1, "&laquo; prev", page > 1)}
  <span class="page-status">page ${page} of ${page_count}</span>
  ${link(page + 1, "next &raquo;", page < page_count)}
</nav>`;
}

/** Example-centric level 1: the paginated highlighted example browser. */
export function renderExampleList(
  payload: ExampleListPayload,
  state: Extract<ViewState, { view: "example-list" }>
): string {
  const other = state.label === "pos" ? "neg" : "pos";
  const entries = payload.examples
    .map(
      (entry) =>
        `<li class="example-line">` +
        `<span class="example-id">${state.label}/${entry.id}</span> ` +
        entry.tokens.map(tokenSpan).join(" ") +
        ` <a class="link-icon" title="example details" href="${exampleDetailHref(
          state.label,
          entry.id
        )}">&#128279;</a></li>`
    )
    .join("\n");
  return `
<section class="example-browser">
  <p class="crumbs">
    <a href="${encodeState({ view: "pattern-list", sort: null, meanings: false })}">&larr; all patterns</a> ·
    <b>${state.label === "pos" ? "positive" : "negative"}</b> examples
    (<a href="${encodeState({ view: "example-list", label: other, page: 1 })}">switch to ${other}</a>)
  </p>
  <p class="legend">
    <span class="tok hl-pos">positive patterns</span>
    <span class="tok hl-neg">negative patterns</span>
    <span class="tok hl-both">both</span>
    — click a highlighted word to list its patterns
  </p>
  ${pager(payload)}
  <ul class="example-list">
${entries}
  </ul>
  ${pager(payload)}
</section>`;
}

function patternGroup(
  title: string,
  rows: (PatternRowPayload & { occurrences: number[][] })[]
): string {
  const items = rows.length
    ? rows
        .map(
          (row) =>
            `<li><a href="${detailHref(row.rank)}">#${row.rank} ` +
            `<code>${escapeHtml(row.pattern)}</code></a> — ${escapeHtml(
              row.meaning
            )}</li>`
        )
        .join("\n")
    : '<li class="empty">none</li>';
  return `
<section class="pattern-group">
  <h3>${title} (${rows.length})</h3>
  <ul>
${items}
  </ul>
</section>`;
}

/** Example-centric level 2: one example with all patterns matching it. */
export function renderExampleDetail(payload: ExampleDetailPayload): string {
  return `
<section class="example-detail">
  <p class="crumbs"><a href="${encodeState({
    view: "example-list",
    label: payload.label,
    page: 1,
  })}">&larr; ${payload.label} examples</a></p>
  <h2>Example ${payload.label}/${payload.id}</h2>
  <p class="example-text">${payload.tokens.map(tokenSpan).join(" ")}</p>
  ${patternGroup("Positive patterns matching", payload.patterns.positive)}
  ${patternGroup("Negative patterns matching", payload.patterns.negative)}
</section>`;
}

/** Popover content: the patterns that matched one clicked word. */
export function renderTokenPopover(
  ranks: number[],
  patternByRank: Map<number, PatternRowPayload>
): string {
  const items = ranks
    .map((rank) => {
      const row = patternByRank.get(rank);
      const text = row ? row.pattern : `pattern ${rank}`;
      const polarity = row ? ` class="polarity-${row.polarity}"` : "";
      return `<li${polarity}><a href="${detailHref(rank)}">#${rank} <code>${escapeHtml(
        text
      )}</code></a></li>`;
    })
    .join("\n");
  return `<ul class="popover-list">\n${items}\n</ul>`;
}

export function renderError(message: string): string {
  return `
<div class="error-banner">
  <p>Could not reach the report service: ${escapeHtml(message)}</p>
  <button class="retry">Retry</button>
</div>`;
}

export function renderLoading(): string {
  return '<p class="loading">loading…</p>';
}
