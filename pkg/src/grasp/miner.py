"""Alphabet selection and the greedy growth loop producing ranked patterns.

Mining proceeds bottom-up: single attributes are scored as one-slot
patterns, the best ones form the alphabet, and a beam search repeatedly
extends beam patterns either by appending a new slot or by strengthening an
existing slot with one more attribute.  Parents stay in the beam, so the
best score never regresses and the loop can stop early once an iteration
stops improving the reported frontier.

Scoring counts example-level matches.  Candidate children are evaluated
only on the examples their parent matched that also contain the added
attribute (a sound upper bound on the child's match set), which keeps the
search fast without changing any result.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .corpus import (
    STANDARD_KEYS,
    Attribute,
    AttributeExtractorSpec,
    Corpus,
    Example,
    Token,
    apply_extractors,
    text_extractor_spec,
    tokenize_raw,
)
from .matcher import DEFAULT_WINDOW_SIZE, Pattern, match, matches_anywhere
from .metrics import (
    POSITIVE,
    ContingencyCounts,
    MetricSpec,
    rank_key,
    symmetric_score,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinerConfig:
    """Hyperparameters of one mining run."""

    num_patterns: int = 100
    alphabet_size: int = 200
    max_slots: int = 5
    gaps_allowed: int | None = None
    window_size: int = DEFAULT_WINDOW_SIZE
    min_coverage: float = 0.005
    metric: MetricSpec = MetricSpec()
    beam_width: int = 200
    include_standard: frozenset[str] = frozenset(STANDARD_KEYS)
    custom_extractors: tuple[AttributeExtractorSpec, ...] = ()
    remove_redundant: bool = True

    def __post_init__(self) -> None:
        if self.num_patterns < 1:
            raise ValueError("num_patterns must be at least 1")
        if self.max_slots < 1:
            raise ValueError("max_slots must be at least 1")
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be at least 1")
        if self.beam_width < 1:
            raise ValueError("beam_width must be at least 1")
        if not 0.0 <= self.min_coverage <= 1.0:
            raise ValueError("min_coverage must lie in [0, 1]")
        if self.window_size < 1:
            raise ValueError("window_size must be at least 1")
        if self.gaps_allowed is not None and self.gaps_allowed < 0:
            raise ValueError("gaps_allowed must be non-negative")
        unknown = set(self.include_standard) - set(STANDARD_KEYS)
        if unknown:
            raise ValueError(
                f"unknown standard attribute keys {sorted(unknown)}; "
                f"declare custom keys via custom_extractors"
            )
        keys = [s.key for s in self.custom_extractors]
        if len(keys) != len(set(keys)):
            raise ValueError("duplicate custom extractor keys")
        if self.beam_width < self.num_patterns:
            log.warning(
                "beam_width (%d) below num_patterns (%d); the final list may "
                "be shorter than requested",
                self.beam_width,
                self.num_patterns,
            )

    def admitted_keys(self) -> frozenset[str]:
        return self.include_standard | {s.key for s in self.custom_extractors}

    def extractor_specs(self) -> tuple[AttributeExtractorSpec, ...]:
        specs: list[AttributeExtractorSpec] = []
        if "TEXT" in self.include_standard:
            specs.append(text_extractor_spec())
        specs.extend(self.custom_extractors)
        return tuple(specs)


@dataclass(frozen=True)
class ScoredPattern:
    """A pattern with its contingency counts and derived statistics.

    Precision, recall and F1 are computed with respect to the pattern's
    polarity class.
    """

    pattern: Pattern
    score: float
    polarity: str
    counts: ContingencyCounts
    coverage: float
    precision: float
    recall: float
    f1: float


def score_pattern(
    pattern: Pattern, counts: ContingencyCounts, metric: MetricSpec
) -> ScoredPattern:
    score, polarity = symmetric_score(counts, metric)
    if polarity == POSITIVE:
        hits, class_total = counts.matched_pos, counts.total_pos
    else:
        hits, class_total = counts.matched_neg, counts.total_neg
    prec = hits / counts.matched if counts.matched else 0.0
    rec = hits / class_total if class_total else 0.0
    f1 = 2.0 * prec * rec / (prec + rec) if prec + rec else 0.0
    return ScoredPattern(
        pattern=pattern,
        score=score,
        polarity=polarity,
        counts=counts,
        coverage=counts.coverage,
        precision=prec,
        recall=rec,
        f1=f1,
    )


class _Workspace:
    """Immutable per-run matching state: attribute rows and example bitmasks."""

    def __init__(self, corpus: Corpus, cfg: MinerConfig) -> None:
        self.cfg = cfg
        self.examples = corpus.all_examples()
        self.num_pos = len(corpus.positives)
        self.num_neg = len(corpus.negatives)
        self.pos_mask = (1 << self.num_pos) - 1
        self.attr_rows: list[tuple[frozenset[Attribute], ...]] = [
            tuple(tok.attributes for tok in ex.tokens) for ex in self.examples
        ]
        self.attr_example_mask: dict[Attribute, int] = {}
        for idx, rows in enumerate(self.attr_rows):
            bit = 1 << idx
            seen: set[Attribute] = set()
            for attrs in rows:
                seen |= attrs
            for attr in seen:
                self.attr_example_mask[attr] = (
                    self.attr_example_mask.get(attr, 0) | bit
                )

    @property
    def total(self) -> int:
        return self.num_pos + self.num_neg

    def counts_from_mask(self, mask: int) -> ContingencyCounts:
        return ContingencyCounts(
            matched_pos=(mask & self.pos_mask).bit_count(),
            matched_neg=(mask >> self.num_pos).bit_count(),
            total_pos=self.num_pos,
            total_neg=self.num_neg,
        )

    def match_mask(self, pattern: Pattern, candidates: int | None = None) -> int:
        """Bitmask of examples matched by the pattern.

        ``candidates`` restricts the evaluation to a superset of the true
        match set (callers must guarantee the superset property).
        """
        cfg = self.cfg
        mask = 0
        if candidates is None:
            for idx in range(self.total):
                if matches_anywhere(
                    pattern, self.attr_rows[idx], cfg.gaps_allowed, cfg.window_size
                ):
                    mask |= 1 << idx
            return mask
        remaining = candidates
        while remaining:
            low = remaining & -remaining
            idx = low.bit_length() - 1
            remaining ^= low
            if matches_anywhere(
                pattern, self.attr_rows[idx], cfg.gaps_allowed, cfg.window_size
            ):
                mask |= low
        return mask


@dataclass
class _BeamEntry:
    scored: ScoredPattern
    mask: int


def augment_examples(
    inputs: Sequence[Example | str], label: str, cfg: MinerConfig
) -> tuple[Example, ...]:
    """Tokenize/augment inputs and keep only attributes of admitted keys."""
    specs = cfg.extractor_specs()
    admitted = cfg.admitted_keys()
    out: list[Example] = []
    for item in inputs:
        if isinstance(item, str):
            tokens: Sequence[Token] = tokenize_raw(item, specs)
            raw_text = item
        else:
            tokens = apply_extractors(item.tokens, specs)
            raw_text = item.raw_text
        if not tokens:
            continue
        filtered = tuple(
            Token(
                tok.surface,
                frozenset(a for a in tok.attributes if a.key in admitted),
            )
            for tok in tokens
        )
        out.append(Example(id=len(out), label=label, tokens=filtered, raw_text=raw_text))
    return tuple(out)


def build_alphabet(
    examples: Sequence[Example], cfg: MinerConfig
) -> list[Attribute]:
    """Rank every occurring attribute by its example-level discriminativeness.

    Attributes below the coverage floor are dropped; the best
    ``alphabet_size`` survivors are returned in rank order.
    """
    labels = {ex.label for ex in examples}
    if len(labels) < 2:
        raise ValueError("both classes required to build an alphabet")
    corpus = Corpus(
        positives=tuple(ex for ex in examples if ex.label == "pos"),
        negatives=tuple(ex for ex in examples if ex.label == "neg"),
    )
    ws = _Workspace(corpus, cfg)
    return [
        next(iter(entry.scored.pattern.slots[0])) for entry in _seed_beam(ws)[1]
    ]


def _seed_beam(ws: _Workspace) -> tuple[list[_BeamEntry], list[_BeamEntry]]:
    """Score all single attributes; return (beam seeds, full alphabet ranking)."""
    cfg = ws.cfg
    scored: list[_BeamEntry] = []
    for attr, mask in ws.attr_example_mask.items():
        counts = ws.counts_from_mask(mask)
        if counts.coverage < cfg.min_coverage:
            continue
        pattern = Pattern((frozenset((attr,)),))
        scored.append(_BeamEntry(score_pattern(pattern, counts, cfg.metric), mask))
    scored.sort(key=lambda e: rank_key(e.scored))
    alphabet = scored[: cfg.alphabet_size]
    seeds = alphabet[: cfg.beam_width]
    return seeds, alphabet


def _grow_step(
    ws: _Workspace,
    beam: list[_BeamEntry],
    alphabet: Sequence[Attribute],
    seen: set[str],
) -> tuple[list[_BeamEntry], list[_BeamEntry]]:
    """One beam iteration; returns (new beam, surviving new children)."""
    cfg = ws.cfg
    children: list[_BeamEntry] = []
    for entry in beam:
        parent = entry.scored.pattern
        parent_mask = entry.mask
        for attr in alphabet:
            attr_mask = ws.attr_example_mask.get(attr, 0)
            candidates = parent_mask & attr_mask
            if candidates.bit_count() / ws.total < cfg.min_coverage:
                continue
            variants: list[Pattern] = []
            if len(parent.slots) + 1 <= cfg.max_slots:
                variants.append(Pattern(parent.slots + (frozenset((attr,)),)))
            for slot_idx, slot in enumerate(parent.slots):
                if attr in slot:
                    continue
                new_slots = (
                    parent.slots[:slot_idx]
                    + (slot | {attr},)
                    + parent.slots[slot_idx + 1 :]
                )
                variants.append(Pattern(new_slots))
            for child in variants:
                key = child.canonical()
                if key in seen:
                    continue
                seen.add(key)
                mask = ws.match_mask(child, candidates)
                counts = ws.counts_from_mask(mask)
                if counts.coverage < cfg.min_coverage:
                    continue
                children.append(
                    _BeamEntry(score_pattern(child, counts, cfg.metric), mask)
                )
    merged = beam + children
    merged.sort(key=lambda e: rank_key(e.scored))
    return merged[: cfg.beam_width], children


def grow(
    seed: Sequence[ScoredPattern],
    alphabet: Sequence[Attribute],
    examples: Sequence[Example],
    cfg: MinerConfig,
) -> list[ScoredPattern]:
    """Standalone single growth iteration over already-scored seed patterns."""
    corpus = Corpus(
        positives=tuple(ex for ex in examples if ex.label == "pos"),
        negatives=tuple(ex for ex in examples if ex.label == "neg"),
    )
    ws = _Workspace(corpus, cfg)
    beam = [
        _BeamEntry(sp, ws.match_mask(sp.pattern)) for sp in seed
    ]
    seen = {sp.pattern.canonical() for sp in seed}
    new_beam, _ = _grow_step(ws, beam, alphabet, seen)
    return [entry.scored for entry in new_beam]


def fit(
    pos_exs: Sequence[Example | str],
    neg_exs: Sequence[Example | str],
    cfg: MinerConfig | None = None,
):
    """Mine the ranked pattern list from a positive and a negative example set.

    Inputs may be raw strings (whitespace tokenized, built-in extractors
    only) or pre-tagged :class:`Example` objects; both are augmented with
    the configured extractors.  Returns the full
    :class:`~grasp.reporting.ResultBundle`, ready for export or serving.
    """
    from .postprocess import remove_redundant, translation_registry, pattern2text
    from .reporting import PatternRow, ResultBundle

    cfg = cfg or MinerConfig()
    positives = augment_examples(pos_exs, "pos", cfg)
    negatives = augment_examples(neg_exs, "neg", cfg)
    if not positives or not negatives:
        raise ValueError("both example sets must be non-empty after ingestion")
    corpus = Corpus(positives=positives, negatives=negatives)
    ws = _Workspace(corpus, cfg)

    seeds, alphabet_entries = _seed_beam(ws)
    if not alphabet_entries:
        raise ValueError("no attribute meets min_coverage")
    alphabet = [
        next(iter(entry.scored.pattern.slots[0])) for entry in alphabet_entries
    ]

    pool: dict[str, ScoredPattern] = {
        e.scored.pattern.canonical(): e.scored for e in alphabet_entries
    }
    seen: set[str] = set(pool)
    beam = list(seeds)
    for _ in range(cfg.max_slots - 1):
        ranked_pool = sorted(pool.values(), key=rank_key)
        threshold = (
            rank_key(ranked_pool[cfg.num_patterns - 1])
            if len(ranked_pool) >= cfg.num_patterns
            else None
        )
        beam, children = _grow_step(ws, beam, alphabet, seen)
        if not children:
            break
        for entry in children:
            pool[entry.scored.pattern.canonical()] = entry.scored
        if threshold is not None and not any(
            rank_key(e.scored) < threshold for e in children
        ):
            break

    ranked = sorted(pool.values(), key=rank_key)
    if cfg.remove_redundant:
        ranked = remove_redundant(
            ranked,
            require_lower_score=True,
            gaps_allowed=cfg.gaps_allowed,
            window_size=cfg.window_size,
            limit=cfg.num_patterns,
        )
    final = ranked[: cfg.num_patterns]

    registry = translation_registry(cfg.custom_extractors)
    rows = [
        PatternRow(
            rank=i + 1,
            scored=sp,
            meaning=pattern2text(
                sp.pattern, cfg.gaps_allowed, cfg.window_size, registry
            ),
        )
        for i, sp in enumerate(final)
    ]
    annotated = {
        "pos": _annotate(corpus.positives, rows, cfg),
        "neg": _annotate(corpus.negatives, rows, cfg),
    }
    return ResultBundle(
        configuration=cfg,
        alphabet=tuple(a.render() for a in alphabet),
        patterns=tuple(rows),
        dataset=annotated,
    )


def _annotate(examples: Sequence[Example], rows, cfg: MinerConfig):
    from .reporting import AnnotatedExample

    out = []
    for ex in examples:
        matches = {}
        for row in rows:
            result = match(
                row.scored.pattern, ex.tokens, cfg.gaps_allowed, cfg.window_size
            )
            if result.matched:
                matches[row.rank] = result.occurrences
        out.append(
            AnnotatedExample(
                id=ex.id,
                label=ex.label,
                text=ex.raw_text,
                tokens=tuple(tok.surface for tok in ex.tokens),
                matches=matches,
            )
        )
    return tuple(out)
