"""Data model for attribute-augmented tokens and labeled examples.

Tokens carry a set of ``KEY:value`` attributes (surface text, lemma,
part-of-speech, named-entity, sentiment, hypernyms, or custom lexicon
membership).  Linguistic taggers are out of process: tagged corpora arrive
in a line-oriented JSON format, while raw text gets whitespace tokenization
and the built-in extractors only.  Examples are immutable after ingestion
and safe to share across workers.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

log = logging.getLogger(__name__)

POSITIVE = "pos"
NEGATIVE = "neg"
LABELS = (POSITIVE, NEGATIVE)

#: Attribute keys with built-in support.  TEXT is computed from the token
#: surface; the rest are expected to arrive pre-tagged in corpus files.
STANDARD_KEYS = ("TEXT", "LEMMA", "HYPERNYM", "POS", "NER", "DEP", "SENTIMENT")

#: Standard keys that may legitimately repeat on one token.
MULTI_VALUED_KEYS = frozenset({"HYPERNYM"})


class CorpusFormatError(ValueError):
    """Raised when an input corpus or lexicon file is malformed."""


class Attribute(NamedTuple):
    """A single ``KEY:value`` property of a token."""

    key: str
    value: str

    def render(self) -> str:
        return f"{self.key}:{self.value}"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "Attribute":
        """Parse a rendered ``KEY:value`` string (first colon splits)."""
        key, sep, value = text.partition(":")
        if not sep:
            raise CorpusFormatError(f"attribute {text!r} is missing a ':' separator")
        return cls(*_validated(key, value))


def _validated(key: str, value: str) -> tuple[str, str]:
    if not key:
        raise CorpusFormatError("attribute key must be non-empty")
    if ":" in key:
        raise CorpusFormatError(f"attribute key {key!r} must not contain ':'")
    if not value:
        raise CorpusFormatError(f"attribute {key!r} has an empty value")
    return key, value


def make_attribute(key: str, value: str) -> Attribute:
    """Build a validated attribute."""
    return Attribute(*_validated(key, value))


@dataclass(frozen=True)
class Token:
    """One token: the original surface string plus its attribute set."""

    surface: str
    attributes: frozenset[Attribute] = frozenset()

    def with_attributes(self, extra: Iterable[Attribute]) -> "Token":
        return Token(self.surface, self.attributes | frozenset(extra))

    def keys(self) -> set[str]:
        return {a.key for a in self.attributes}


@dataclass(frozen=True)
class Example:
    """A labeled text split into attribute-augmented tokens."""

    id: int
    label: str
    tokens: tuple[Token, ...]
    raw_text: str


@dataclass(frozen=True)
class AttributeExtractorSpec:
    """Declares one attribute source: how to extract it and how to explain it.

    ``kind`` is one of ``builtin_text`` (lowercased surface), ``builtin_lexicon``
    (lookup of the lowercased surface in ``lexicon``), or ``ingested_column``
    (values arrive pre-tagged in the corpus file; nothing is extracted here).
    ``description_template`` is used by pattern translation and may reference
    ``{value}``.
    """

    key: str
    kind: str
    description_template: str
    lexicon: Mapping[str, str] | None = None
    multi_valued: bool = False

    def __post_init__(self) -> None:
        _validated(self.key, "x")
        if self.kind not in ("builtin_text", "builtin_lexicon", "ingested_column"):
            raise ValueError(f"unknown extractor kind {self.kind!r}")
        if self.kind == "builtin_lexicon" and self.lexicon is None:
            raise ValueError(f"lexicon extractor {self.key!r} needs a lexicon")
        if not self.description_template:
            raise ValueError(f"extractor {self.key!r} needs a description_template")


def text_extractor_spec() -> AttributeExtractorSpec:
    return AttributeExtractorSpec(
        key="TEXT", kind="builtin_text", description_template="the word '{value}'"
    )


def lexicon_extractor_spec(
    key: str,
    lexicon: Mapping[str, str],
    description_template: str | None = None,
    multi_valued: bool = False,
) -> AttributeExtractorSpec:
    """Spec for a custom lexicon attribute, with a readable default template."""
    if description_template is None:
        word = key.lower()
        article = "an" if word[:1] in "aeiou" else "a"
        description_template = f"{article} {word} word"
    return AttributeExtractorSpec(
        key=key,
        kind="builtin_lexicon",
        description_template=description_template,
        lexicon=dict(lexicon),
        multi_valued=multi_valued,
    )


def apply_text_extractor(tokens: Sequence[Token]) -> list[Token]:
    """Add ``TEXT:<lowercased surface>`` to every token lacking a TEXT attribute."""
    out = []
    for tok in tokens:
        if "TEXT" in tok.keys() or not tok.surface:
            out.append(tok)
        else:
            out.append(tok.with_attributes([Attribute("TEXT", tok.surface.lower())]))
    return out


def apply_lexicon_extractor(
    tokens: Sequence[Token], spec: AttributeExtractorSpec
) -> list[Token]:
    """Tag tokens whose lowercased surface appears in the spec's lexicon.

    Lookups are context-free; misses leave the token unchanged, and an
    existing value for a single-valued key is never overwritten.
    """
    if spec.kind != "builtin_lexicon":
        raise ValueError(f"extractor {spec.key!r} is not a lexicon extractor")
    assert spec.lexicon is not None
    out = []
    for tok in tokens:
        value = spec.lexicon.get(tok.surface.lower())
        if value is None or (not spec.multi_valued and spec.key in tok.keys()):
            out.append(tok)
        else:
            out.append(tok.with_attributes([make_attribute(spec.key, value)]))
    return out


def apply_extractors(
    tokens: Sequence[Token], specs: Iterable[AttributeExtractorSpec]
) -> list[Token]:
    """Run every extractor over the tokens; ingested columns are no-ops."""
    current = list(tokens)
    for spec in specs:
        if spec.kind == "builtin_text":
            current = apply_text_extractor(current)
        elif spec.kind == "builtin_lexicon":
            current = apply_lexicon_extractor(current, spec)
    return current


def _check_key_multiplicity(
    attrs: Iterable[Attribute], multi_valued: frozenset[str], where: str
) -> None:
    seen: set[str] = set()
    for attr in attrs:
        if attr.key in multi_valued:
            continue
        if attr.key in seen:
            raise CorpusFormatError(
                f"duplicate single-valued attribute {attr.key!r} {where}"
            )
        seen.add(attr.key)


def _parse_record(
    record: object, record_no: int, multi_valued: frozenset[str]
) -> tuple[str, list[Token]]:
    if not isinstance(record, dict):
        raise CorpusFormatError(f"record {record_no}: expected an object")
    try:
        text = record["text"]
        raw_tokens = record["tokens"]
    except KeyError as exc:
        raise CorpusFormatError(f"record {record_no}: missing field {exc}") from None
    if not isinstance(text, str) or not isinstance(raw_tokens, list):
        raise CorpusFormatError(
            f"record {record_no}: 'text' must be a string and 'tokens' a list"
        )
    tokens = []
    for i, raw in enumerate(raw_tokens):
        if not isinstance(raw, dict) or "surface" not in raw or "attrs" not in raw:
            raise CorpusFormatError(
                f"record {record_no}: token {i} needs 'surface' and 'attrs'"
            )
        try:
            attrs = [Attribute.parse(a) for a in raw["attrs"]]
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"record {record_no}: token {i}: {exc}") from None
        _check_key_multiplicity(
            attrs, multi_valued, f"on token {i} of record {record_no}"
        )
        tokens.append(Token(str(raw["surface"]), frozenset(attrs)))
    return text, tokens


def ingest_pretagged(
    path: str | Path,
    label: str,
    extractors: Sequence[AttributeExtractorSpec] = (),
    multi_valued_keys: frozenset[str] | None = None,
) -> list[Example]:
    """Read a pre-tagged corpus file: one JSON record per line.

    Each record carries ``text`` and ``tokens`` (``surface`` plus rendered
    ``attrs``).  Tokens keep exactly the attributes present in the file, with
    any given extractors applied on top.  Records without tokens are dropped
    with a warning; ids are assigned 0..k-1 in file order over admitted
    examples.
    """
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}, got {label!r}")
    multi = MULTI_VALUED_KEYS | {s.key for s in extractors if s.multi_valued}
    if multi_valued_keys is not None:
        multi = multi | multi_valued_keys
    examples: list[Example] = []
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for record_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(
                    f"record {record_no}: invalid JSON ({exc.msg})"
                ) from None
            text, tokens = _parse_record(record, record_no, frozenset(multi))
            if not tokens:
                skipped += 1
                continue
            tokens = apply_extractors(tokens, extractors)
            examples.append(
                Example(id=len(examples), label=label, tokens=tuple(tokens), raw_text=text)
            )
    if skipped:
        log.warning("%s: skipped %d empty example(s)", path, skipped)
    return examples


def ingest_raw(
    path: str | Path,
    label: str,
    extractors: Sequence[AttributeExtractorSpec] = (),
) -> list[Example]:
    """Read one plain-text example per line, whitespace tokenized."""
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}, got {label!r}")
    examples: list[Example] = []
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            text = line.rstrip("\n")
            tokens = tokenize_raw(text, extractors)
            if not tokens:
                skipped += 1
                continue
            examples.append(
                Example(id=len(examples), label=label, tokens=tuple(tokens), raw_text=text)
            )
    if skipped:
        log.warning("%s: skipped %d empty example(s)", path, skipped)
    return examples


def tokenize_raw(
    text: str, extractors: Sequence[AttributeExtractorSpec] = ()
) -> list[Token]:
    """Whitespace tokenization plus the given extractors."""
    tokens = [Token(surface) for surface in text.split()]
    return apply_extractors(tokens, extractors)


def load_lexicon(path: str | Path) -> dict[str, str]:
    """Read a ``word<TAB>value`` lexicon file (UTF-8, one pair per line)."""
    lexicon: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip():
                continue
            word, sep, value = stripped.partition("\t")
            if not sep or not word or not value:
                raise CorpusFormatError(
                    f"lexicon line {line_no}: expected 'word<TAB>value'"
                )
            lexicon[word.lower()] = value
    return lexicon


def render_pretagged_record(example: Example) -> str:
    """Canonical single-line JSON for one example (attributes sorted)."""
    record = {
        "text": example.raw_text,
        "tokens": [
            {
                "surface": tok.surface,
                "attrs": sorted(a.render() for a in tok.attributes),
            }
            for tok in example.tokens
        ],
    }
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


def write_pretagged(examples: Iterable[Example], path: str | Path) -> None:
    """Serialize examples back to the pre-tagged format (round-trip stable)."""
    with open(path, "w", encoding="utf-8") as handle:
        for example in examples:
            handle.write(render_pretagged_record(example) + "\n")


@dataclass(frozen=True)
class Corpus:
    """Both example lists of one training run."""

    positives: tuple[Example, ...]
    negatives: tuple[Example, ...]

    def __post_init__(self) -> None:
        if not self.positives or not self.negatives:
            raise ValueError("both classes required: positive and negative examples")

    @property
    def total(self) -> int:
        return len(self.positives) + len(self.negatives)

    def all_examples(self) -> tuple[Example, ...]:
        return self.positives + self.negatives
