from __future__ import annotations

import csv
import io

import pytest

from grasp.matcher import Pattern
from grasp.metrics import ContingencyCounts, MetricSpec
from grasp.miner import MinerConfig, ScoredPattern, fit, score_pattern
from grasp.reporting import (
    CSV_COLUMNS,
    AnnotatedExample,
    PatternRow,
    ResultBundle,
    bundle_from_dict,
    bundle_to_dict,
    highlight_classes,
    load,
    to_csv,
    to_json,
)

from conftest import SPAM_MEANING, SPAM_PATTERN_TEXT


def single_pattern_bundle() -> ResultBundle:
    scored = score_pattern(
        Pattern.parse(SPAM_PATTERN_TEXT),
        ContingencyCounts(3, 0, 3, 3),
        MetricSpec(),
    )
    row = PatternRow(rank=1, scored=scored, meaning=SPAM_MEANING)
    annotated = AnnotatedExample(
        id=0,
        label="pos",
        text="You are awarded a SiPix Digital Camera",
        tokens=("You", "are", "awarded", "a", "SiPix", "Digital", "Camera"),
        matches={1: ((2, 3, 4),)},
    )
    dummy_neg = AnnotatedExample(
        id=0, label="neg", text="ok", tokens=("ok",), matches={}
    )
    return ResultBundle(
        configuration=MinerConfig(gaps_allowed=2),
        alphabet=("SENTIMENT:pos", "POS:DET", "POS:PROPN"),
        patterns=(row,),
        dataset={"pos": (annotated,), "neg": (dummy_neg, dummy_neg)},
    )


class TestCsv:
    def test_exact_row_for_perfect_pattern(self, tmp_path):
        path = tmp_path / "out.csv"
        to_csv(single_pattern_bundle(), path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == (
            '1,"[SENTIMENT:pos, POS:DET, POS:PROPN]",positive,'
            '"A positive-sentiment word, closely followed by a determiner, '
            'and then by a proper noun",3,0,0.5000,1.0000,1.0000,1.0000,1.0000'
        )

    def test_empty_pattern_list_writes_header_only(self, tmp_path):
        bundle = ResultBundle(
            configuration=MinerConfig(),
            alphabet=(),
            patterns=(),
            dataset={"pos": (), "neg": ()},
        )
        path = tmp_path / "empty.csv"
        to_csv(bundle, path)
        assert path.read_text(encoding="utf-8") == ",".join(CSV_COLUMNS) + "\n"

    def test_comma_fields_reparse_to_same_table(self, tmp_path, spam_bundle):
        path = tmp_path / "spam.csv"
        to_csv(spam_bundle, path)
        with open(path, encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == list(CSV_COLUMNS)
        assert len(rows) == len(spam_bundle.patterns) + 1
        for row, pattern_row in zip(rows[1:], spam_bundle.patterns):
            assert row[0] == str(pattern_row.rank)
            assert row[1] == pattern_row.scored.pattern.canonical()
            assert row[3] == pattern_row.meaning
            assert row[6] == f"{pattern_row.scored.coverage:.4f}"
        # Some meaning contains a comma, so quoting was actually exercised.
        assert any("," in row.meaning for row in spam_bundle.patterns)


class TestJson:
    def test_round_trip_equality(self, tmp_path, spam_bundle):
        path = tmp_path / "bundle.json"
        to_json(spam_bundle, path)
        assert load(path) == spam_bundle

    def test_dict_round_trip(self, spam_bundle):
        assert bundle_from_dict(bundle_to_dict(spam_bundle)) == spam_bundle

    def test_byte_determinism_across_runs(self, tmp_path, spam_corpus, spam_cfg):
        pos, neg = spam_corpus
        path_a = tmp_path / "a.json"
        path_b = tmp_path / "b.json"
        to_json(fit(pos, neg, spam_cfg), path_a)
        to_json(fit(pos, neg, spam_cfg), path_b)
        assert path_a.read_bytes() == path_b.read_bytes()

    def test_annotation_stores_expected_occurrence(self, spam_bundle):
        spam_rank = next(
            row.rank
            for row in spam_bundle.patterns
            if row.scored.pattern.canonical() == SPAM_PATTERN_TEXT
        )
        first_pos = spam_bundle.examples("pos")[0]
        assert first_pos.matches[spam_rank] == ((2, 3, 4),)

    def test_arg_bundle_round_trip_preserves_lexicon(self, tmp_path, arg_bundle):
        path = tmp_path / "arg.json"
        to_json(arg_bundle, path)
        loaded = load(path)
        assert loaded == arg_bundle
        spec = loaded.configuration.custom_extractors[0]
        assert spec.key == "ARGUMENTATIVE"
        assert spec.lexicon["evidence"] == "true"


class TestBundleValidation:
    def test_non_contiguous_ranks_rejected(self):
        scored = score_pattern(
            Pattern.parse("[POS:DET]"), ContingencyCounts(1, 0, 1, 1), MetricSpec()
        )
        with pytest.raises(ValueError, match="contiguous"):
            ResultBundle(
                configuration=MinerConfig(),
                alphabet=(),
                patterns=(PatternRow(rank=2, scored=scored, meaning="x"),),
                dataset={"pos": (), "neg": ()},
            )

    def test_unknown_rank_annotation_rejected(self):
        bad = AnnotatedExample(
            id=0, label="pos", text="x", tokens=("x",), matches={7: ((0,),)}
        )
        with pytest.raises(ValueError, match="unknown pattern rank"):
            ResultBundle(
                configuration=MinerConfig(),
                alphabet=(),
                patterns=(),
                dataset={"pos": (bad,), "neg": ()},
            )

    def test_out_of_range_occurrence_rejected(self):
        scored = score_pattern(
            Pattern.parse("[POS:DET]"), ContingencyCounts(1, 0, 1, 1), MetricSpec()
        )
        bad = AnnotatedExample(
            id=0, label="pos", text="x", tokens=("x",), matches={1: ((5,),)}
        )
        with pytest.raises(ValueError, match="out of range"):
            ResultBundle(
                configuration=MinerConfig(),
                alphabet=(),
                patterns=(PatternRow(rank=1, scored=scored, meaning="x"),),
                dataset={"pos": (bad,), "neg": ()},
            )


class TestHighlightClasses:
    def test_partition_of_token_states(self):
        example = AnnotatedExample(
            id=0,
            label="pos",
            text="a b c d",
            tokens=("a", "b", "c", "d"),
            matches={1: ((0, 1),), 2: ((1, 2),)},
        )
        classes = highlight_classes(example, {1: "positive", 2: "negative"})
        assert classes == ["pos", "both", "neg", "none"]

    def test_consistent_with_bundle_statistics(self, spam_bundle):
        polarity = spam_bundle.polarity_by_rank()
        for label in ("pos", "neg"):
            for ex in spam_bundle.examples(label):
                classes = highlight_classes(ex, polarity)
                assert len(classes) == len(ex.tokens)
                assert set(classes) <= {"pos", "neg", "both", "none"}
