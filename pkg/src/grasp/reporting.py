"""Result bundle model plus CSV and JSON export.

A :class:`ResultBundle` is the unit of export and of report serving: the
fully resolved configuration, the attribute alphabet, the ranked patterns
with statistics and translated meanings, and the training examples
annotated with the occurrences of every final pattern.  JSON export is
byte-deterministic (sorted keys, full-precision floats) and round-trips
losslessly; CSV is the human-readable table with values at 4 decimals.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .corpus import AttributeExtractorSpec
from .matcher import Pattern
from .metrics import POSITIVE, ContingencyCounts, MetricSpec
from .miner import MinerConfig, ScoredPattern

CSV_COLUMNS = (
    "rank",
    "pattern",
    "polarity",
    "meaning",
    "num_pos_matched",
    "num_neg_matched",
    "coverage",
    "metric",
    "precision",
    "recall",
    "f1",
)

HIGHLIGHT_POS = "pos"
HIGHLIGHT_NEG = "neg"
HIGHLIGHT_BOTH = "both"
HIGHLIGHT_NONE = "none"


@dataclass(frozen=True)
class PatternRow:
    """One ranked pattern with its statistics and translated meaning."""

    rank: int
    scored: ScoredPattern
    meaning: str


@dataclass(frozen=True)
class AnnotatedExample:
    """A training example with the occurrences of every pattern matching it."""

    id: int
    label: str
    text: str
    tokens: tuple[str, ...]
    matches: Mapping[int, tuple[tuple[int, ...], ...]]

    def matched_ranks(self) -> list[int]:
        return sorted(self.matches)


@dataclass(frozen=True)
class ResultBundle:
    """Configuration, alphabet, ranked patterns, and annotated dataset."""

    configuration: MinerConfig
    alphabet: tuple[str, ...]
    patterns: tuple[PatternRow, ...]
    dataset: Mapping[str, tuple[AnnotatedExample, ...]]

    def __post_init__(self) -> None:
        ranks = [row.rank for row in self.patterns]
        if ranks != list(range(1, len(ranks) + 1)):
            raise ValueError("pattern ranks must be contiguous from 1")
        known = set(ranks)
        for label in ("pos", "neg"):
            for ex in self.dataset.get(label, ()):
                for rank, occurrences in ex.matches.items():
                    if rank not in known:
                        raise ValueError(
                            f"annotation references unknown pattern rank {rank}"
                        )
                    for occ in occurrences:
                        if any(not 0 <= i < len(ex.tokens) for i in occ):
                            raise ValueError(
                                f"occurrence index out of range in example "
                                f"{ex.label}/{ex.id}"
                            )

    def row(self, rank: int) -> PatternRow:
        if not 1 <= rank <= len(self.patterns):
            raise KeyError(rank)
        return self.patterns[rank - 1]

    def polarity_by_rank(self) -> dict[int, str]:
        return {row.rank: row.scored.polarity for row in self.patterns}

    def examples(self, label: str) -> tuple[AnnotatedExample, ...]:
        if label not in ("pos", "neg"):
            raise KeyError(label)
        return tuple(self.dataset.get(label, ()))


def highlight_classes(
    example: AnnotatedExample, polarity_by_rank: Mapping[int, str]
) -> list[str]:
    """Per-token highlight class: 'pos', 'neg', 'both', or 'none'.

    A token is hit by a pattern when its index appears in one of that
    pattern's occurrences; the class is the exact partition by which
    polarities hit the token.
    """
    pos_hit = [False] * len(example.tokens)
    neg_hit = [False] * len(example.tokens)
    for rank, occurrences in example.matches.items():
        hit = pos_hit if polarity_by_rank[rank] == POSITIVE else neg_hit
        for occ in occurrences:
            for idx in occ:
                hit[idx] = True
    classes = []
    for p, n in zip(pos_hit, neg_hit):
        if p and n:
            classes.append(HIGHLIGHT_BOTH)
        elif p:
            classes.append(HIGHLIGHT_POS)
        elif n:
            classes.append(HIGHLIGHT_NEG)
        else:
            classes.append(HIGHLIGHT_NONE)
    return classes


def pattern_row_cells(row: PatternRow) -> dict[str, object]:
    """The CSV/API cell values of one pattern row (full-precision floats)."""
    sp = row.scored
    return {
        "rank": row.rank,
        "pattern": sp.pattern.canonical(),
        "polarity": sp.polarity,
        "meaning": row.meaning,
        "num_pos_matched": sp.counts.matched_pos,
        "num_neg_matched": sp.counts.matched_neg,
        "coverage": sp.coverage,
        "metric": sp.score,
        "precision": sp.precision,
        "recall": sp.recall,
        "f1": sp.f1,
    }


def to_csv(bundle: ResultBundle, path: str | Path) -> None:
    """Write the ranked pattern table; reals at 4 decimals, UTF-8."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in bundle.patterns:
            cells = pattern_row_cells(row)
            writer.writerow(
                [
                    cells["rank"],
                    cells["pattern"],
                    cells["polarity"],
                    cells["meaning"],
                    cells["num_pos_matched"],
                    cells["num_neg_matched"],
                    f"{cells['coverage']:.4f}",
                    f"{cells['metric']:.4f}",
                    f"{cells['precision']:.4f}",
                    f"{cells['recall']:.4f}",
                    f"{cells['f1']:.4f}",
                ]
            )


def _config_to_dict(cfg: MinerConfig) -> dict:
    return {
        "num_patterns": cfg.num_patterns,
        "alphabet_size": cfg.alphabet_size,
        "max_slots": cfg.max_slots,
        "gaps_allowed": cfg.gaps_allowed,
        "window_size": cfg.window_size,
        "min_coverage": cfg.min_coverage,
        "metric": cfg.metric.render(),
        "beam_width": cfg.beam_width,
        "include_standard": sorted(cfg.include_standard),
        "custom_extractors": [
            {
                "key": spec.key,
                "kind": spec.kind,
                "description_template": spec.description_template,
                "lexicon": dict(spec.lexicon) if spec.lexicon is not None else None,
                "multi_valued": spec.multi_valued,
            }
            for spec in cfg.custom_extractors
        ],
        "remove_redundant": cfg.remove_redundant,
    }


def _config_from_dict(data: Mapping) -> MinerConfig:
    extractors = tuple(
        AttributeExtractorSpec(
            key=raw["key"],
            kind=raw["kind"],
            description_template=raw["description_template"],
            lexicon=raw["lexicon"],
            multi_valued=raw["multi_valued"],
        )
        for raw in data["custom_extractors"]
    )
    return MinerConfig(
        num_patterns=data["num_patterns"],
        alphabet_size=data["alphabet_size"],
        max_slots=data["max_slots"],
        gaps_allowed=data["gaps_allowed"],
        window_size=data["window_size"],
        min_coverage=data["min_coverage"],
        metric=MetricSpec.parse(data["metric"]),
        beam_width=data["beam_width"],
        include_standard=frozenset(data["include_standard"]),
        custom_extractors=extractors,
        remove_redundant=data["remove_redundant"],
    )


def bundle_to_dict(bundle: ResultBundle) -> dict:
    return {
        "configuration": _config_to_dict(bundle.configuration),
        "alphabet": list(bundle.alphabet),
        "patterns": [
            {
                "rank": row.rank,
                "pattern": row.scored.pattern.canonical(),
                "polarity": row.scored.polarity,
                "meaning": row.meaning,
                "score": row.scored.score,
                "num_pos_matched": row.scored.counts.matched_pos,
                "num_neg_matched": row.scored.counts.matched_neg,
                "coverage": row.scored.coverage,
                "precision": row.scored.precision,
                "recall": row.scored.recall,
                "f1": row.scored.f1,
            }
            for row in bundle.patterns
        ],
        "dataset": {
            label: [
                {
                    "id": ex.id,
                    "text": ex.text,
                    "tokens": list(ex.tokens),
                    "matches": {
                        str(rank): [list(occ) for occ in occurrences]
                        for rank, occurrences in sorted(ex.matches.items())
                    },
                }
                for ex in bundle.examples(label)
            ]
            for label in ("pos", "neg")
        },
    }


def to_json(bundle: ResultBundle, path: str | Path) -> None:
    """Write the canonical JSON document (sorted keys, byte-deterministic)."""
    document = bundle_to_dict(bundle)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, sort_keys=True, indent=2, ensure_ascii=False)
        handle.write("\n")


def load(path: str | Path) -> ResultBundle:
    """Load a bundle file back into an equal in-memory ResultBundle."""
    with open(path, encoding="utf-8") as handle:
        document = json.load(handle)
    return bundle_from_dict(document)


def bundle_from_dict(document: Mapping) -> ResultBundle:
    cfg = _config_from_dict(document["configuration"])
    total_pos = len(document["dataset"]["pos"])
    total_neg = len(document["dataset"]["neg"])
    rows = []
    for raw in document["patterns"]:
        counts = ContingencyCounts(
            matched_pos=raw["num_pos_matched"],
            matched_neg=raw["num_neg_matched"],
            total_pos=total_pos,
            total_neg=total_neg,
        )
        scored = ScoredPattern(
            pattern=Pattern.parse(raw["pattern"]),
            score=raw["score"],
            polarity=raw["polarity"],
            counts=counts,
            coverage=raw["coverage"],
            precision=raw["precision"],
            recall=raw["recall"],
            f1=raw["f1"],
        )
        rows.append(PatternRow(rank=raw["rank"], scored=scored, meaning=raw["meaning"]))
    dataset = {
        label: tuple(
            AnnotatedExample(
                id=raw["id"],
                label=label,
                text=raw["text"],
                tokens=tuple(raw["tokens"]),
                matches={
                    int(rank): tuple(tuple(occ) for occ in occurrences)
                    for rank, occurrences in raw["matches"].items()
                },
            )
            for raw in document["dataset"][label]
        )
        for label in ("pos", "neg")
    }
    return ResultBundle(
        configuration=cfg,
        alphabet=tuple(document["alphabet"]),
        patterns=tuple(rows),
        dataset=dataset,
    )
