import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderError,
  renderExampleDetail,
  renderExampleList,
  renderPatternDetail,
  renderPatternList,
  renderTokenPopover,
} from "../src/render";
import { parseState, type ViewState } from "../src/state";
import type {
  ExampleDetailPayload,
  ExampleListPayload,
  PatternDetailPayload,
  PatternsPayload,
  SummaryPayload,
} from "../src/types";

import summaryFixture from "./fixtures/summary.json";
import patternsFixture from "./fixtures/patterns.json";
import patternsPrecisionDesc from "./fixtures/patterns_sorted_precision_desc.json";
import patternDetailFixture from "./fixtures/pattern_detail_1.json";
import examplesPosFixture from "./fixtures/examples_pos_page1.json";
import examplesNegFixture from "./fixtures/examples_neg_page1.json";
import exampleDetailFixture from "./fixtures/example_detail_pos_0.json";

const summary = summaryFixture as unknown as SummaryPayload;
const patterns = patternsFixture as unknown as PatternsPayload;
const patternsSorted = patternsPrecisionDesc as unknown as PatternsPayload;
const patternDetail = patternDetailFixture as unknown as PatternDetailPayload;
const examplesPos = examplesPosFixture as unknown as ExampleListPayload;
const examplesNeg = examplesNegFixture as unknown as ExampleListPayload;
const exampleDetail = exampleDetailFixture as unknown as ExampleDetailPayload;

const LIST_STATE: Extract<ViewState, { view: "pattern-list" }> = {
  view: "pattern-list",
  sort: null,
  meanings: false,
};

function hrefs(html: string): string[] {
  return [...html.matchAll(/href="(#[^"]*)"/g)].map((m) => m[1]);
}

describe("pattern list view", () => {
  it("renders one row per pattern in payload order", () => {
    const html = renderPatternList(summary, patterns, LIST_STATE);
    const ranks = [...html.matchAll(/data-rank="(\d+)"/g)].map((m) => Number(m[1]));
    expect(ranks).toEqual(patterns.patterns.map((row) => row.rank));
  });

  it("shows canonical strings by default and meanings when toggled", () => {
    const plain = renderPatternList(summary, patterns, LIST_STATE);
    expect(plain).toContain(escapeHtml("[POS:DET, POS:PROPN]"));
    expect(plain).not.toContain("A determiner, closely followed by a proper noun");

    const toggled = renderPatternList(summary, patterns, {
      ...LIST_STATE,
      meanings: true,
    });
    expect(toggled).toContain("A determiner, closely followed by a proper noun");
    expect(toggled).not.toContain(escapeHtml("[POS:DET, POS:PROPN]"));
  });

  it("marks every statistics column header sortable", () => {
    const html = renderPatternList(summary, patterns, LIST_STATE);
    for (const column of patterns.columns) {
      if (column === "pattern" || column === "meaning") {
        continue;
      }
      expect(html).toContain(`data-column="${column}"`);
    }
    expect(html).toContain("data-toggle-meanings");
  });

  it("shows a direction indicator on the active sort column", () => {
    const html = renderPatternList(summary, patternsSorted, {
      ...LIST_STATE,
      sort: { column: "precision", dir: "desc" },
    });
    expect(html).toMatch(/data-column="precision">precision ▾/);
  });

  it("renders rows exactly in the API's sorted order", () => {
    const html = renderPatternList(summary, patternsSorted, {
      ...LIST_STATE,
      sort: { column: "precision", dir: "desc" },
    });
    const ranks = [...html.matchAll(/data-rank="(\d+)"/g)].map((m) => Number(m[1]));
    expect(ranks).toEqual(patternsSorted.patterns.map((row) => row.rank));
    const precisions = patternsSorted.patterns.map((row) => row.precision);
    expect(precisions).toEqual([...precisions].sort((a, b) => b - a));
  });

  it("shows the configuration and dataset statistics", () => {
    const html = renderPatternList(summary, patterns, LIST_STATE);
    expect(html).toContain("3 positive examples");
    expect(html).toContain("3 negative examples");
    expect(html).toContain("<b>gaps_allowed</b>=2");
  });
});

describe("pattern detail view", () => {
  it("emphasizes exactly the highlighted occurrence tokens", () => {
    const html = renderPatternDetail(patternDetail);
    const first = patternDetail.matched.pos[0];
    for (const idx of first.highlight_indices) {
      expect(html).toContain(`<mark class="hit">${escapeHtml(first.tokens[idx])}</mark>`);
    }
    expect(html).toContain("Positive examples matched (3)");
  });

  it("shows an explicit empty row when nothing matched", () => {
    const html = renderPatternDetail(patternDetail);
    expect(html).toContain("Negative examples matched (0)");
    expect(html).toContain("no matches");
  });

  it("links every matched example to its detail view", () => {
    const html = renderPatternDetail(patternDetail);
    for (const entry of patternDetail.matched.pos) {
      expect(html).toContain(`href="#/examples/pos/${entry.id}"`);
    }
  });
});

describe("example list view", () => {
  const state: Extract<ViewState, { view: "example-list" }> = {
    view: "example-list",
    label: "pos",
    page: 1,
  };

  it("uses the API highlight classes byte for byte", () => {
    for (const [payload, label] of [
      [examplesPos, "pos"],
      [examplesNeg, "neg"],
    ] as const) {
      const html = renderExampleList(payload, { ...state, label });
      const classes = [...html.matchAll(/class="tok hl-(\w+)/g)].map((m) => m[1]);
      const legend = 3; // legend swatches precede the examples
      const expected = payload.examples.flatMap((entry) =>
        entry.tokens.map((tok) => tok.highlight)
      );
      expect(classes.slice(legend)).toEqual(expected);
    }
  });

  it("attaches matched pattern ranks to tokens for the popover", () => {
    const html = renderExampleList(examplesPos, state);
    const withRanks = examplesPos.examples[0].tokens.find(
      (tok) => tok.patterns.length > 0
    );
    expect(withRanks).toBeDefined();
    expect(html).toContain(`data-ranks="${withRanks!.patterns.join(",")}"`);
  });

  it("renders a pager that reflects the single fixture page", () => {
    const html = renderExampleList(examplesPos, state);
    expect(html).toContain("page 1 of 1");
    expect(html).toMatch(/<span class="page-link disabled">&laquo; prev<\/span>/);
    expect(html).toMatch(/<span class="page-link disabled">next &raquo;<\/span>/);
  });

  it("enables pager links between pages", () => {
    const paged: ExampleListPayload = {
      ...examplesPos,
      page: 2,
      page_count: 3,
    };
    const html = renderExampleList(paged, { ...state, page: 2 });
    expect(html).toContain('href="#/examples/pos"'); // prev: page 1
    expect(html).toContain('href="#/examples/pos?page=3"');
  });

  it("renders a both-polarity token with the both class", () => {
    const synthetic: ExampleListPayload = {
      label: "pos",
      page: 1,
      page_count: 1,
      page_size: 25,
      total: 1,
      examples: [
        {
          id: 0,
          text: "alpha",
          tokens: [{ surface: "alpha", highlight: "both", patterns: [1, 2] }],
        },
      ],
    };
    const html = renderExampleList(synthetic, state);
    expect(html).toContain('class="tok hl-both has-patterns" data-ranks="1,2"');
  });
});

describe("example detail view", () => {
  it("splits matching patterns by polarity with links back", () => {
    const html = renderExampleDetail(exampleDetail);
    expect(html).toContain(
      `Positive patterns matching (${exampleDetail.patterns.positive.length})`
    );
    expect(html).toContain(
      `Negative patterns matching (${exampleDetail.patterns.negative.length})`
    );
    for (const row of exampleDetail.patterns.positive) {
      expect(html).toContain(`href="#/patterns/${row.rank}"`);
    }
    expect(html).toContain("none");
  });

  it("keeps token highlights in the detail view", () => {
    const html = renderExampleDetail(exampleDetail);
    const classes = [...html.matchAll(/class="tok hl-(\w+)/g)].map((m) => m[1]);
    expect(classes).toEqual(exampleDetail.tokens.map((tok) => tok.highlight));
  });
});

describe("navigation graph", () => {
  it("has no dead ends across the four views", () => {
    const views = [
      renderPatternList(summary, patterns, LIST_STATE),
      renderPatternDetail(patternDetail),
      renderExampleList(examplesPos, { view: "example-list", label: "pos", page: 1 }),
      renderExampleDetail(exampleDetail),
    ];
    for (const html of views) {
      const links = hrefs(html);
      expect(links.length).toBeGreaterThan(0);
      for (const link of links) {
        const state = parseState(link);
        expect(["pattern-list", "pattern-detail", "example-list", "example-detail"])
          .toContain(state.view);
      }
    }
  });

  it("closes the pattern -> example -> pattern cycle", () => {
    const fromList = hrefs(renderPatternList(summary, patterns, LIST_STATE));
    expect(fromList).toContain("#/patterns/1");
    const fromDetail = hrefs(renderPatternDetail(patternDetail));
    expect(fromDetail).toContain("#/examples/pos/0");
    const fromExample = hrefs(renderExampleDetail(exampleDetail));
    expect(fromExample.some((h) => /^#\/patterns\/\d+$/.test(h))).toBe(true);
  });

  it("rank targets exist in the pattern table", () => {
    const known = new Set(patterns.patterns.map((row) => row.rank));
    for (const href of hrefs(renderExampleDetail(exampleDetail))) {
      const match = href.match(/^#\/patterns\/(\d+)$/);
      if (match) {
        expect(known.has(Number(match[1]))).toBe(true);
      }
    }
  });
});

describe("popover and chrome", () => {
  it("lists the clicked word's patterns with detail links", () => {
    const byRank = new Map(patterns.patterns.map((row) => [row.rank, row]));
    const html = renderTokenPopover([1, 4], byRank);
    expect(html).toContain('href="#/patterns/1"');
    expect(html).toContain(escapeHtml("[SENTIMENT:pos, POS:DET, POS:PROPN]"));
  });

  it("escapes untrusted text", () => {
    expect(escapeHtml("<script>alert('x')</script>")).not.toContain("<script>");
    const payload: ExampleListPayload = {
      label: "pos",
      page: 1,
      page_count: 1,
      page_size: 25,
      total: 1,
      examples: [
        {
          id: 0,
          text: "<b>bold</b>",
          tokens: [{ surface: "<b>bold</b>", highlight: "none", patterns: [] }],
        },
      ],
    };
    const html = renderExampleList(payload, {
      view: "example-list",
      label: "pos",
      page: 1,
    });
    expect(html).not.toContain("<b>bold</b>");
    expect(html).toContain("&lt;b&gt;bold&lt;/b&gt;");
  });

  it("renders the retry banner on errors", () => {
    const html = renderError("connection refused");
    expect(html).toContain("connection refused");
    expect(html).toContain('<button class="retry">');
  });
});
