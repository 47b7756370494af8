"""Command-line interface: extract, translate, vectorize, and serve.

Mining options come from ``key=value`` config files and/or flags (flags
win).  Corpus files may be raw text (one example per line) or the
pre-tagged JSON-lines format; the format is sniffed unless forced.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from .corpus import (
    CorpusFormatError,
    ingest_pretagged,
    ingest_raw,
    lexicon_extractor_spec,
    load_lexicon,
)
from .metrics import MetricSpec
from .miner import MinerConfig, fit
from .postprocess import vectorize_text
from . import reporting

log = logging.getLogger(__name__)

_CONFIG_PARSERS = {
    "num_patterns": int,
    "alphabet_size": int,
    "max_slots": int,
    "gaps_allowed": int,
    "window_size": int,
    "min_coverage": float,
    "metric": str,
    "beam_width": int,
    "include_standard": lambda v: frozenset(k.strip() for k in v.split(",") if k.strip()),
    "remove_redundant": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path: str | Path) -> dict:
    """Parse a plain ``key=value`` config file; unknown keys are an error."""
    values: dict = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            key = key.strip()
            if not sep:
                raise CorpusFormatError(
                    f"{path}: line {line_no}: expected 'key=value'"
                )
            parser = _CONFIG_PARSERS.get(key)
            if parser is None:
                raise CorpusFormatError(
                    f"{path}: line {line_no}: unknown configuration key {key!r}"
                )
            values[key] = parser(value.strip())
    return values


def _sniff_format(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                return "raw"
            return "pretagged" if isinstance(record, dict) and "tokens" in record else "raw"
    return "raw"


def _ingest(path: str, label: str, file_format: str, cfg: MinerConfig):
    resolved = _sniff_format(path) if file_format == "auto" else file_format
    log.info("ingesting %s as %s (%s)", path, label, resolved)
    if resolved == "pretagged":
        return ingest_pretagged(path, label)
    return ingest_raw(path, label)


def _build_config(config_path, overrides: dict, lexicons: tuple[str, ...]) -> MinerConfig:
    values = read_config_file(config_path) if config_path else {}
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    if "metric" in values and isinstance(values["metric"], str):
        values["metric"] = MetricSpec.parse(values["metric"])
    if values.get("gaps_allowed") is not None and "window_size" in values:
        log.warning("both gaps_allowed and window_size given; gaps take precedence")
    specs = []
    for item in lexicons:
        key, sep, lex_path = item.partition("=")
        if not sep or not key or not lex_path:
            raise click.UsageError(f"--lexicon expects KEY=PATH, got {item!r}")
        specs.append(lexicon_extractor_spec(key, load_lexicon(lex_path)))
    if specs:
        values["custom_extractors"] = tuple(specs)
    try:
        return MinerConfig(**values)
    except (TypeError, ValueError) as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
def main() -> None:
    """Mine, translate, vectorize, and explore discriminative token patterns."""
    logging.basicConfig(
        level=logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )


@main.command()
@click.option("--pos", "pos_path", required=True, type=click.Path(exists=True))
@click.option("--neg", "neg_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--num-patterns", type=int)
@click.option("--gaps-allowed", type=int)
@click.option("--window-size", type=int)
@click.option("--alphabet-size", type=int)
@click.option("--max-slots", type=int)
@click.option("--beam-width", type=int)
@click.option("--min-coverage", type=float)
@click.option("--metric", type=str, help="information_gain, f_beta:<beta>, or precision")
@click.option(
    "--attributes",
    type=str,
    help="comma-separated standard attribute keys to include",
)
@click.option(
    "--lexicon",
    "lexicons",
    multiple=True,
    help="KEY=PATH custom lexicon attribute (repeatable)",
)
@click.option(
    "--format",
    "file_format",
    type=click.Choice(["auto", "raw", "pretagged"]),
    default="auto",
)
@click.option("--out-json", required=True, type=click.Path())
@click.option("--out-csv", type=click.Path())
def extract(
    pos_path,
    neg_path,
    config_path,
    num_patterns,
    gaps_allowed,
    window_size,
    alphabet_size,
    max_slots,
    beam_width,
    min_coverage,
    metric,
    attributes,
    lexicons,
    file_format,
    out_json,
    out_csv,
) -> None:
    """Mine patterns from a positive and a negative corpus file."""
    overrides = {
        "num_patterns": num_patterns,
        "gaps_allowed": gaps_allowed,
        "window_size": window_size,
        "alphabet_size": alphabet_size,
        "max_slots": max_slots,
        "beam_width": beam_width,
        "min_coverage": min_coverage,
        "metric": MetricSpec.parse(metric) if metric else None,
        "include_standard": (
            frozenset(k.strip() for k in attributes.split(",") if k.strip())
            if attributes
            else None
        ),
    }
    cfg = _build_config(config_path, overrides, lexicons)
    try:
        pos_exs = _ingest(pos_path, "pos", file_format, cfg)
        neg_exs = _ingest(neg_path, "neg", file_format, cfg)
        bundle = fit(pos_exs, neg_exs, cfg)
    except (CorpusFormatError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None
    reporting.to_json(bundle, out_json)
    log.info("wrote %s", out_json)
    if out_csv:
        reporting.to_csv(bundle, out_csv)
        log.info("wrote %s", out_csv)


@main.command()
@click.option("--json", "bundle_path", required=True, type=click.Path(exists=True))
@click.option("--rank", type=int)
def translate(bundle_path, rank) -> None:
    """Print the English meaning of one pattern, or of all of them."""
    bundle = reporting.load(bundle_path)
    if rank is not None:
        try:
            row = bundle.row(rank)
        except KeyError:
            raise click.ClickException(f"no pattern with rank {rank}") from None
        click.echo(row.meaning)
        return
    for row in bundle.patterns:
        click.echo(f"{row.rank}\t{row.scored.pattern.canonical()}\t{row.meaning}")


@main.command()
@click.option("--json", "bundle_path", required=True, type=click.Path(exists=True))
@click.option("--texts", "texts_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
def vectorize(bundle_path, texts_path, out_path) -> None:
    """Write one comma-separated ternary row per input text line."""
    bundle = reporting.load(bundle_path)
    with open(texts_path, encoding="utf-8") as src, open(
        out_path, "w", encoding="utf-8"
    ) as dst:
        for line in src:
            values = vectorize_text(line.rstrip("\n"), bundle)
            dst.write(",".join(str(v) for v in values) + "\n")
    log.info("wrote %s", out_path)


@main.command()
@click.option("--json", "bundle_path", required=True, type=click.Path(exists=True))
@click.option(
    "--addr",
    default=lambda: os.environ.get("GRASP_ADDR", "127.0.0.1:8080"),
    show_default="GRASP_ADDR or 127.0.0.1:8080",
)
@click.option("--static", "static_dir", type=click.Path(), default=None)
def serve(bundle_path, addr, static_dir) -> None:
    """Serve the report API (and explorer assets, if built) for one bundle."""
    from .webapp import serve as run_server

    try:
        run_server(bundle_path, addr, static_dir)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None


if __name__ == "__main__":
    sys.exit(main())
