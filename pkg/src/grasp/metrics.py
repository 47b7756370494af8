"""Scoring functions over pattern/label contingency counts.

All scores are computed from example-level match counts.  Information gain
is the default criterion; F-beta and precision are available for users who
want to trade recall against precision (a tiny beta approximates pure
precision).  ``rank_key`` defines the single deterministic ordering used
everywhere patterns are sorted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INFORMATION_GAIN = "information_gain"
F_BETA = "f_beta"
PRECISION = "precision"

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class ContingencyCounts:
    """Example-level match counts for one pattern against one corpus."""

    matched_pos: int
    matched_neg: int
    total_pos: int
    total_neg: int

    def __post_init__(self) -> None:
        if not 0 <= self.matched_pos <= self.total_pos:
            raise ValueError("matched_pos must lie in [0, total_pos]")
        if not 0 <= self.matched_neg <= self.total_neg:
            raise ValueError("matched_neg must lie in [0, total_neg]")
        if self.total_pos + self.total_neg <= 0:
            raise ValueError("corpus must be non-empty")

    @property
    def total(self) -> int:
        return self.total_pos + self.total_neg

    @property
    def matched(self) -> int:
        return self.matched_pos + self.matched_neg

    @property
    def coverage(self) -> float:
        return self.matched / self.total

    def swapped(self) -> "ContingencyCounts":
        """The same table with the class roles exchanged."""
        return ContingencyCounts(
            matched_pos=self.matched_neg,
            matched_neg=self.matched_pos,
            total_pos=self.total_neg,
            total_neg=self.total_pos,
        )


@dataclass(frozen=True)
class MetricSpec:
    """Named scoring criterion; ``beta`` is present exactly for f_beta."""

    name: str = INFORMATION_GAIN
    beta: float | None = None

    def __post_init__(self) -> None:
        if self.name not in (INFORMATION_GAIN, F_BETA, PRECISION):
            raise ValueError(f"unknown metric {self.name!r}")
        if self.name == F_BETA:
            if self.beta is None or self.beta <= 0:
                raise ValueError("f_beta requires a positive beta")
        elif self.beta is not None:
            raise ValueError(f"metric {self.name!r} does not take a beta")

    def render(self) -> str:
        if self.name == F_BETA:
            return f"{F_BETA}:{self.beta!r}"
        return self.name

    @classmethod
    def parse(cls, text: str) -> "MetricSpec":
        """Parse the configuration string form, e.g. ``f_beta:0.05``."""
        name, sep, arg = text.partition(":")
        if name == F_BETA:
            if not sep:
                raise ValueError("f_beta needs a beta, e.g. 'f_beta:0.05'")
            try:
                beta = float(arg)
            except ValueError:
                raise ValueError(f"invalid beta {arg!r}") from None
            return cls(F_BETA, beta)
        if sep:
            raise ValueError(f"metric {name!r} does not take an argument")
        return cls(name)


def _entropy_bits(counts: list[int]) -> float:
    """Shannon entropy in bits with the 0*log2(0) = 0 convention."""
    total = sum(counts)
    if total == 0:
        return 0.0
    h = 0.0
    for c in counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def information_gain(c: ContingencyCounts) -> float:
    """Reduction in label entropy from knowing the binary match indicator."""
    h_label = _entropy_bits([c.total_pos, c.total_neg])
    p_match = c.matched / c.total
    h_matched = _entropy_bits([c.matched_pos, c.matched_neg])
    h_unmatched = _entropy_bits(
        [c.total_pos - c.matched_pos, c.total_neg - c.matched_neg]
    )
    gain = h_label - (p_match * h_matched + (1.0 - p_match) * h_unmatched)
    # Guard against tiny negative rounding noise on degenerate tables.
    return max(gain, 0.0)


def f_beta(c: ContingencyCounts, beta: float) -> float:
    """Weighted harmonic mean of precision and recall for the positive class."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if c.matched_pos == 0:
        return 0.0
    p = c.matched_pos / c.matched
    r = c.matched_pos / c.total_pos
    b2 = beta * beta
    return (1.0 + b2) * p * r / (b2 * p + r)


def precision(c: ContingencyCounts) -> float:
    if c.matched == 0:
        return 0.0
    return c.matched_pos / c.matched


def _one_sided(c: ContingencyCounts, m: MetricSpec) -> float:
    if m.name == F_BETA:
        assert m.beta is not None
        return f_beta(c, m.beta)
    if m.name == PRECISION:
        return precision(c)
    return information_gain(c)


def symmetric_score(c: ContingencyCounts, m: MetricSpec) -> tuple[float, str]:
    """Score a pattern as an indicator of either class.

    Information gain is inherently symmetric; its polarity is the
    over-represented class among the matches (positive on an exact tie).
    Asymmetric metrics are evaluated for both classes and the better side
    wins, positive winning ties.
    """
    if c.matched == 0:
        return 0.0, POSITIVE
    if m.name == INFORMATION_GAIN:
        score = information_gain(c)
        match_rate = c.matched_pos / c.matched
        base_rate = c.total_pos / c.total
        return score, POSITIVE if match_rate >= base_rate else NEGATIVE
    score_pos = _one_sided(c, m)
    score_neg = _one_sided(c.swapped(), m)
    if score_pos >= score_neg:
        return score_pos, POSITIVE
    return score_neg, NEGATIVE


def rank_key(scored) -> tuple:
    """Sort key for the deterministic pattern ranking.

    Higher score first, then higher coverage, then fewer slots, then fewer
    total attributes, then the lexicographically smaller canonical string.
    Total over distinct canonical strings, so sorting is permutation
    invariant.  ``scored`` is any object with ``score``, ``coverage`` and
    ``pattern`` fields (the pattern providing ``slots`` and ``canonical()``).
    """
    pattern = scored.pattern
    return (
        -scored.score,
        -scored.coverage,
        len(pattern.slots),
        sum(len(slot) for slot in pattern.slots),
        pattern.canonical(),
    )
