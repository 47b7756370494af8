"""Greedy mining of human-readable sequential patterns from labeled texts.

Given a positive and a negative set of token sequences (raw text or
pre-tagged corpora), the miner grows gap-constrained attribute patterns
that separate the two sets, ranks them by a configurable metric, and
exports the results for exploration in CSV, JSON, and a web report UI.
"""

from .corpus import (
    Attribute,
    AttributeExtractorSpec,
    Example,
    Token,
    apply_lexicon_extractor,
    ingest_pretagged,
    ingest_raw,
    lexicon_extractor_spec,
    load_lexicon,
    make_attribute,
)
from .matcher import MatchResult, Pattern, effective_window, match, subsumes
from .metrics import (
    ContingencyCounts,
    MetricSpec,
    f_beta,
    information_gain,
    precision,
    rank_key,
    symmetric_score,
)
from .miner import MinerConfig, ScoredPattern, build_alphabet, fit, grow
from .postprocess import pattern2text, remove_redundant, vectorize, vectorize_text
from .reporting import ResultBundle, load, to_csv, to_json

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "AttributeExtractorSpec",
    "ContingencyCounts",
    "Example",
    "MatchResult",
    "MetricSpec",
    "MinerConfig",
    "Pattern",
    "ResultBundle",
    "ScoredPattern",
    "Token",
    "apply_lexicon_extractor",
    "build_alphabet",
    "effective_window",
    "f_beta",
    "fit",
    "grow",
    "information_gain",
    "ingest_pretagged",
    "ingest_raw",
    "lexicon_extractor_spec",
    "load",
    "load_lexicon",
    "make_attribute",
    "match",
    "pattern2text",
    "precision",
    "rank_key",
    "remove_redundant",
    "subsumes",
    "symmetric_score",
    "to_csv",
    "to_json",
    "vectorize",
    "vectorize_text",
]
