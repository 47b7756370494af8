/** Payload shapes served by the report API. */

export type Label = "pos" | "neg";
export type Polarity = "positive" | "negative";
export type Highlight = "pos" | "neg" | "both" | "none";

export interface SummaryPayload {
  configuration: Record<string, unknown>;
  dataset: {
    num_pos: number;
    num_neg: number;
    num_tokens_pos: number;
    num_tokens_neg: number;
  };
  alphabet_size: number;
  num_patterns: number;
}

export interface PatternRowPayload {
  rank: number;
  pattern: string;
  polarity: Polarity;
  meaning: string;
  num_pos_matched: number;
  num_neg_matched: number;
  coverage: number;
  metric: number;
  precision: number;
  recall: number;
  f1: number;
}

export interface PatternsPayload {
  columns: string[];
  sort: { column: string | null; dir: string } | null;
  patterns: PatternRowPayload[];
}

export interface MatchedExamplePayload {
  id: number;
  label: Label;
  text: string;
  tokens: string[];
  occurrences: number[][];
  highlight_indices: number[];
}

export interface PatternDetailPayload {
  pattern: PatternRowPayload;
  matched: { pos: MatchedExamplePayload[]; neg: MatchedExamplePayload[] };
}

export interface TokenPayload {
  surface: string;
  highlight: Highlight;
  patterns: number[];
}

export interface ExampleListEntryPayload {
  id: number;
  text: string;
  tokens: TokenPayload[];
}

export interface ExampleListPayload {
  label: Label;
  page: number;
  page_count: number;
  page_size: number;
  total: number;
  examples: ExampleListEntryPayload[];
}

export interface ExampleDetailPayload {
  id: number;
  label: Label;
  text: string;
  tokens: TokenPayload[];
  patterns: {
    positive: (PatternRowPayload & { occurrences: number[][] })[];
    negative: (PatternRowPayload & { occurrences: number[][] })[];
  };
}
