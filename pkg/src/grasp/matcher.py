"""Gap/window-constrained subsequence matching of patterns over tokens.

A pattern is an ordered list of slots; each slot is a conjunction of
attributes that a single token must all satisfy.  A pattern matches a token
sequence when its slots can be placed on strictly increasing token indices
whose span fits inside the effective window.  When a gap budget ``g`` is
configured, a ``k``-slot pattern gets an effective window of ``k + g``
tokens, overriding the plain window size.

The match predicate is exact (it agrees with brute-force enumeration of all
index tuples); the enumerated occurrences are the leftmost-greedy ones and
exist for display/highlighting purposes only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .corpus import Attribute, CorpusFormatError, Token

DEFAULT_WINDOW_SIZE = 10

Slot = frozenset[Attribute]


@dataclass(frozen=True)
class Pattern:
    """An ordered sequence of attribute-conjunction slots."""

    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        if not self.slots:
            raise ValueError("a pattern needs at least one slot")
        if any(not slot for slot in self.slots):
            raise ValueError("pattern slots must be non-empty")

    def canonical(self) -> str:
        """Render the canonical string, e.g. ``[LEMMA:that&POS:ADP, POS:NUM]``."""
        rendered = []
        for slot in self.slots:
            rendered.append("&".join(sorted(a.render() for a in slot)))
        return "[" + ", ".join(rendered) + "]"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.canonical()

    def num_attributes(self) -> int:
        return sum(len(slot) for slot in self.slots)

    def attributes(self) -> set[Attribute]:
        out: set[Attribute] = set()
        for slot in self.slots:
            out |= slot
        return out

    @classmethod
    def build(cls, slots: Iterable[Iterable[Attribute]]) -> "Pattern":
        return cls(tuple(frozenset(slot) for slot in slots))

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse a canonical pattern string back into a Pattern."""
        stripped = text.strip()
        if not (stripped.startswith("[") and stripped.endswith("]")):
            raise CorpusFormatError(f"pattern {text!r} must be bracketed")
        body = stripped[1:-1]
        if not body:
            raise CorpusFormatError("pattern has no slots")
        slots = []
        for part in body.split(", "):
            attrs = [Attribute.parse(a) for a in part.split("&")]
            slots.append(frozenset(attrs))
        return cls(tuple(slots))


@dataclass(frozen=True)
class MatchResult:
    """Whether a pattern matched, plus the occurrences used for highlighting."""

    matched: bool
    occurrences: tuple[tuple[int, ...], ...]


def effective_window(
    num_slots: int, gaps_allowed: int | None, window_size: int
) -> int:
    """Window length in tokens; a gap budget overrides the window size."""
    if num_slots < 1:
        raise ValueError("num_slots must be at least 1")
    if window_size < 1:
        raise ValueError("window_size must be at least 1")
    if gaps_allowed is not None:
        if gaps_allowed < 0:
            raise ValueError("gaps_allowed must be non-negative")
        return num_slots + gaps_allowed
    return window_size


def _greedy_from(
    slots: tuple[Slot, ...],
    attrs: Sequence[frozenset[Attribute]],
    start: int,
    window: int,
) -> tuple[int, ...] | None:
    """Earliest-index occurrence starting exactly at ``start``, if any.

    Choosing the earliest feasible index for each slot never discards a
    feasible completion under a total-window budget, so failure here means
    no occurrence starts at ``start``.
    """
    if not slots[0] <= attrs[start]:
        return None
    limit = min(start + window, len(attrs))
    indices = [start]
    pos = start
    for slot in slots[1:]:
        pos += 1
        while pos < limit and not slot <= attrs[pos]:
            pos += 1
        if pos >= limit:
            return None
        indices.append(pos)
    return tuple(indices)


def match(
    pattern: Pattern,
    tokens: Sequence[Token],
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
) -> MatchResult:
    """Match a pattern against a token sequence.

    Occurrences are found by scanning start positions left to right and
    extending greedily; one occurrence is reported per feasible start.  A
    pattern longer than its effective window simply never matches.
    """
    attrs = [t.attributes for t in tokens]
    return match_attr_rows(pattern, attrs, gaps_allowed, window_size)


def match_attr_rows(
    pattern: Pattern,
    attrs: Sequence[frozenset[Attribute]],
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
) -> MatchResult:
    """Like :func:`match` but over pre-extracted attribute rows."""
    window = effective_window(len(pattern.slots), gaps_allowed, window_size)
    if len(pattern.slots) > window or len(pattern.slots) > len(attrs):
        return MatchResult(False, ())
    occurrences = []
    seen = set()
    for start in range(len(attrs) - len(pattern.slots) + 1):
        occ = _greedy_from(pattern.slots, attrs, start, window)
        if occ is not None and occ not in seen:
            seen.add(occ)
            occurrences.append(occ)
    return MatchResult(bool(occurrences), tuple(occurrences))


def matches_anywhere(
    pattern: Pattern,
    attrs: Sequence[frozenset[Attribute]],
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
) -> bool:
    """Existence-only form of the match predicate (used by scoring)."""
    window = effective_window(len(pattern.slots), gaps_allowed, window_size)
    k = len(pattern.slots)
    if k > window or k > len(attrs):
        return False
    for start in range(len(attrs) - k + 1):
        if _greedy_from(pattern.slots, attrs, start, window) is not None:
            return True
    return False


def _embeddings(k_general: int, k_specific: int):
    """Strictly increasing position tuples of length k_general in range(k_specific)."""
    return combinations(range(k_specific), k_general)


def subsumes(
    general: Pattern,
    specific: Pattern,
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
) -> bool:
    """Sound syntactic check that every match of ``specific`` contains a match
    of ``general``.

    True iff the slots of ``general`` embed order-preserved into the slots of
    ``specific`` with slot-wise attribute-subset containment, and the
    effective window of ``general`` covers what is left of the effective
    window of ``specific`` after discounting the skipped slots before and
    after the embedded block.  Unmapped slots strictly inside the embedding
    get no discount: their matched tokens still widen the span the general
    pattern must absorb.
    """
    k_g = len(general.slots)
    k_s = len(specific.slots)
    if k_g > k_s:
        return False
    w_g = effective_window(k_g, gaps_allowed, window_size)
    w_s = effective_window(k_s, gaps_allowed, window_size)
    for positions in _embeddings(k_g, k_s):
        if any(
            not general.slots[j] <= specific.slots[p]
            for j, p in enumerate(positions)
        ):
            continue
        skipped_outside = positions[0] + (k_s - 1 - positions[-1])
        if w_g >= w_s - skipped_outside:
            return True
    return False
