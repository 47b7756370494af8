from __future__ import annotations

import random
import sys
import time
from importlib.resources import files
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grasp.corpus import (
    Attribute,
    AttributeExtractorSpec,
    Example,
    Token,
    ingest_pretagged,
    lexicon_extractor_spec,
    load_lexicon,
)
from grasp.miner import MinerConfig, fit

DATA = files("grasp") / "data"

SPAM_PATTERN_TEXT = "[SENTIMENT:pos, POS:DET, POS:PROPN]"
SPAM_MEANING = (
    "A positive-sentiment word, closely followed by a determiner, "
    "and then by a proper noun"
)
ARG_PATTERN_TEXT = "[ARGUMENTATIVE:true, POS:VERB, LEMMA:that&POS:ADP]"
ARG_MEANING = (
    "An argumentative word, closely followed by a verb, "
    "and then by the word 'that' which is also a preposition"
)


def data_path(name: str) -> str:
    return str(DATA / name)


@pytest.fixture(scope="session")
def spam_corpus():
    pos = ingest_pretagged(data_path("spam_pos.jsonl"), "pos")
    neg = ingest_pretagged(data_path("spam_neg.jsonl"), "neg")
    return pos, neg


@pytest.fixture(scope="session")
def spam_cfg():
    return MinerConfig(num_patterns=20, gaps_allowed=2, min_coverage=0.01)


@pytest.fixture(scope="session")
def spam_bundle(spam_corpus, spam_cfg):
    pos, neg = spam_corpus
    return fit(pos, neg, spam_cfg)


@pytest.fixture(scope="session")
def arg_corpus():
    pos = ingest_pretagged(data_path("arg_pos.jsonl"), "pos")
    neg = ingest_pretagged(data_path("arg_neg.jsonl"), "neg")
    return pos, neg


@pytest.fixture(scope="session")
def arg_spec():
    lexicon = load_lexicon(data_path("argumentative_words.tsv"))
    return lexicon_extractor_spec("ARGUMENTATIVE", lexicon)


@pytest.fixture(scope="session")
def arg_bundle(arg_corpus, arg_spec):
    pos, neg = arg_corpus
    cfg = MinerConfig(
        num_patterns=100, gaps_allowed=2, min_coverage=0.01, custom_extractors=(arg_spec,)
    )
    return fit(pos, neg, cfg)


def planted_corpus(seed=20240817, n_pos=200, n_neg=200, length=12, vocab=30):
    """Synthetic corpus with a known three-slot sequence planted in every
    positive and in 5% of negatives, all inside a window of 5 tokens.

    The remaining tokens draw uniformly from the other ``vocab - 3``
    attribute values, so the planted marker attributes occur exactly where
    the generator put them; the planting itself is the ground truth.
    """
    rng = random.Random(seed)
    planted = [Attribute("TOK", f"a{i:02d}") for i in range(3)]
    noise = [Attribute("TOK", f"a{i:02d}") for i in range(3, vocab)]

    def make(label: str, idx: int, plant: bool) -> Example:
        toks = [
            Token(f"t{j}", frozenset([rng.choice(noise)])) for j in range(length)
        ]
        if plant:
            start = rng.randrange(0, length - 4)
            offsets = sorted(rng.sample(range(1, 5), 2))
            spots = [start, start + offsets[0], start + offsets[1]]
            for attr, spot in zip(planted, spots):
                toks[spot] = Token(f"t{spot}", frozenset([attr]))
        return Example(idx, label, tuple(toks), " ".join(t.surface for t in toks))

    pos = [make("pos", i, True) for i in range(n_pos)]
    planted_neg = int(round(0.05 * n_neg))
    neg = [make("neg", i, i < planted_neg) for i in range(n_neg)]
    return pos, neg, planted


def planted_config() -> MinerConfig:
    spec = AttributeExtractorSpec(
        key="TOK", kind="ingested_column", description_template="a token of kind {value}"
    )
    return MinerConfig(num_patterns=100, gaps_allowed=2, custom_extractors=(spec,))


@pytest.fixture(scope="session")
def planted_run():
    pos, neg, planted = planted_corpus()
    cfg = planted_config()
    start = time.monotonic()
    bundle = fit(pos, neg, cfg)
    elapsed = time.monotonic() - start
    return {
        "bundle": bundle,
        "elapsed": elapsed,
        "pos": pos,
        "neg": neg,
        "planted": planted,
        "cfg": cfg,
    }
