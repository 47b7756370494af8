"""Redundancy removal, pattern-to-English translation, and vectorization.

These operate on finished patterns: pruning specific patterns that a more
general retained pattern already covers, turning canonical pattern strings
into readable descriptions via per-key templates, and encoding a text as a
ternary feature vector (+1/-1/0) over a bundle's ranked patterns.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Iterable, Sequence

from .corpus import AttributeExtractorSpec, Example
from .matcher import DEFAULT_WINDOW_SIZE, Pattern, effective_window, match, subsumes
from .metrics import POSITIVE, rank_key
from .miner import ScoredPattern

if TYPE_CHECKING:  # pragma: no cover
    from .reporting import ResultBundle

#: Per-text feature vector with one +1/-1/0 coordinate per ranked pattern.
TernaryVector = list[int]


def remove_redundant(
    patterns: Sequence[ScoredPattern],
    require_lower_score: bool = False,
    *,
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
    limit: int | None = None,
) -> list[ScoredPattern]:
    """Drop specific patterns subsumed by a more general retained one.

    Candidates are processed in rank order, so higher-ranked patterns act as
    generalizers first; the relative order of survivors is preserved.  With
    ``require_lower_score`` the specific pattern is only dropped when it
    scores strictly below the generalizer.  ``limit`` stops the scan once
    that many survivors are retained (the result is then exactly the
    survivor prefix in rank order).
    """
    order = sorted(range(len(patterns)), key=lambda i: rank_key(patterns[i]))
    removed = [False] * len(patterns)
    if require_lower_score:
        retained: list[ScoredPattern] = []
        for i in order:
            p = patterns[i]
            dropped = any(
                p.score < g.score
                and subsumes(g.pattern, p.pattern, gaps_allowed, window_size)
                for g in retained
            )
            if dropped:
                removed[i] = True
            else:
                retained.append(p)
                if limit is not None and len(retained) >= limit:
                    return retained
    else:
        survivors: list[ScoredPattern] = []
        for i in order:
            p = patterns[i]
            removed[i] = any(
                j != i
                and subsumes(
                    patterns[j].pattern, p.pattern, gaps_allowed, window_size
                )
                for j in order
            )
            if not removed[i]:
                survivors.append(p)
                if limit is not None and len(survivors) >= limit:
                    return survivors
    return [p for i, p in enumerate(patterns) if not removed[i]]


_POS_NAMES = {
    "ADJ": "an adjective",
    "ADP": "a preposition",
    "ADV": "an adverb",
    "AUX": "an auxiliary verb",
    "CCONJ": "a coordinating conjunction",
    "CONJ": "a conjunction",
    "DET": "a determiner",
    "INTJ": "an interjection",
    "NOUN": "a noun",
    "NUM": "a number",
    "PART": "a particle",
    "PRON": "a pronoun",
    "PROPN": "a proper noun",
    "PUNCT": "a punctuation mark",
    "SCONJ": "a subordinating conjunction",
    "SYM": "a symbol",
    "VERB": "a verb",
    "X": "an unclassified word",
}

_SENTIMENT_NAMES = {
    "pos": "a positive-sentiment word",
    "neg": "a negative-sentiment word",
}


def _describe_hypernym(value: str) -> str:
    word, _, rest = value.partition(".")
    pos_tag = rest.partition(".")[0]
    name = word.replace("_", " ")
    if pos_tag:
        return f"a type of {name} ({pos_tag})"
    return f"a type of {name}"


#: Built-in description templates, one per standard attribute key.
BUILTIN_DESCRIPTIONS: dict[str, Callable[[str], str]] = {
    "TEXT": lambda v: f"the word '{v}'",
    "LEMMA": lambda v: f"the word '{v}'",
    "POS": lambda v: _POS_NAMES.get(v, f"a token tagged {v}"),
    "NER": lambda v: f"a {v.lower()} entity",
    "SENTIMENT": lambda v: _SENTIMENT_NAMES.get(v, f"a {v}-sentiment word"),
    "HYPERNYM": _describe_hypernym,
    "DEP": lambda v: f"a token with dependency role '{v}'",
}


def translation_registry(
    specs: Iterable[AttributeExtractorSpec] = (),
) -> dict[str, Callable[[str], str]]:
    """Merge built-in templates with extractor-provided ones (specs win)."""
    registry = dict(BUILTIN_DESCRIPTIONS)
    for spec in specs:
        template = spec.description_template
        registry[spec.key] = lambda v, _t=template: _t.format(value=v)
    return registry


def _describe_slot(
    slot: frozenset, registry: dict[str, Callable[[str], str]]
) -> str:
    parts = []
    for attr in sorted(slot, key=lambda a: a.render()):
        describe = registry.get(attr.key)
        if describe is None:
            raise ValueError(f"no description template for attribute key {attr.key!r}")
        parts.append(describe(attr.value))
    return " which is also ".join(parts)


def pattern2text(
    p: Pattern,
    gaps_allowed: int | None = None,
    window_size: int = DEFAULT_WINDOW_SIZE,
    registry: dict[str, Callable[[str], str]] | None = None,
) -> str:
    """Translate a pattern into an English description.

    Slot descriptions are chained with "immediately followed by" when the
    effective window leaves no room for gaps, otherwise with "closely
    followed by" and then "and then by" from the third slot on.  In-slot
    conjunctions read "<x> which is also <y>".
    """
    registry = registry if registry is not None else translation_registry()
    window = effective_window(len(p.slots), gaps_allowed, window_size)
    immediate = window == len(p.slots)
    pieces = []
    closely_emitted = False
    for i, slot in enumerate(p.slots):
        desc = _describe_slot(slot, registry)
        if i == 0:
            pieces.append(desc[:1].upper() + desc[1:])
        elif immediate:
            pieces.append(f", immediately followed by {desc}")
        elif not closely_emitted:
            pieces.append(f", closely followed by {desc}")
            closely_emitted = True
        else:
            pieces.append(f", and then by {desc}")
    return "".join(pieces)


def vectorize(text: Example, bundle: "ResultBundle") -> TernaryVector:
    """Ternary encoding of one example over the bundle's ranked patterns.

    The example must be augmented with the same extractors as the bundle's
    configuration (see :func:`vectorize_text` for raw strings).  Coordinate
    ``i`` is +1/-1 when pattern ``i`` matches and is positive/negative
    polarity, else 0.
    """
    cfg = bundle.configuration
    values: TernaryVector = []
    for row in bundle.patterns:
        result = match(
            row.scored.pattern, text.tokens, cfg.gaps_allowed, cfg.window_size
        )
        if not result.matched:
            values.append(0)
        elif row.scored.polarity == POSITIVE:
            values.append(1)
        else:
            values.append(-1)
    return values


def vectorize_text(raw: str, bundle: "ResultBundle") -> TernaryVector:
    """Tokenize and augment a raw text per the bundle's config, then vectorize."""
    from .miner import augment_examples

    prepared = augment_examples([raw], "pos", bundle.configuration)
    if not prepared:
        return [0] * len(bundle.patterns)
    return vectorize(prepared[0], bundle)
