"""Read-only HTTP API backing the four explorer report views.

The service loads one exported bundle and serves it immutably, so any
number of concurrent readers see identical payloads.  Sorting and paging
happen server side; per-token highlight classes are computed here so the
browser client never re-derives matching semantics.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Mapping

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles

from . import reporting
from .reporting import (
    CSV_COLUMNS,
    AnnotatedExample,
    ResultBundle,
    highlight_classes,
    pattern_row_cells,
)

log = logging.getLogger(__name__)

PAGE_SIZE = 25

_FALLBACK_INDEX = """<!DOCTYPE html>
<html>
<head><title>pattern report service</title></head>
<body>
<h1>Pattern report service</h1>
<p>No explorer assets are installed. The JSON API is available under:</p>
<ul>
<li><code>GET /api/summary</code></li>
<li><code>GET /api/patterns?sort=&lt;column&gt;&amp;dir=asc|desc</code></li>
<li><code>GET /api/patterns/{rank}</code></li>
<li><code>GET /api/examples?label=pos|neg&amp;page=k</code></li>
<li><code>GET /api/examples/{label}/{id}</code></li>
</ul>
</body>
</html>
"""


def _token_payload(
    example: AnnotatedExample, polarity_by_rank: Mapping[int, str]
) -> list[dict]:
    classes = highlight_classes(example, polarity_by_rank)
    per_token_ranks: list[list[int]] = [[] for _ in example.tokens]
    for rank in sorted(example.matches):
        for occ in example.matches[rank]:
            for idx in occ:
                if rank not in per_token_ranks[idx]:
                    per_token_ranks[idx].append(rank)
    return [
        {"surface": surface, "highlight": cls, "patterns": ranks}
        for surface, cls, ranks in zip(example.tokens, classes, per_token_ranks)
    ]


def _matched_example_payload(example: AnnotatedExample, rank: int) -> dict:
    occurrences = example.matches[rank]
    indices = sorted({i for occ in occurrences for i in occ})
    return {
        "id": example.id,
        "label": example.label,
        "text": example.text,
        "tokens": list(example.tokens),
        "occurrences": [list(occ) for occ in occurrences],
        "highlight_indices": indices,
    }


def create_app(bundle: ResultBundle, static_dir: str | Path | None = None) -> FastAPI:
    """Build the report application around one immutable bundle."""
    app = FastAPI(title="pattern report service")
    polarity_by_rank = bundle.polarity_by_rank()

    @app.get("/api/summary")
    def summary() -> dict:
        pos = bundle.examples("pos")
        neg = bundle.examples("neg")
        return {
            "configuration": reporting._config_to_dict(bundle.configuration),
            "dataset": {
                "num_pos": len(pos),
                "num_neg": len(neg),
                "num_tokens_pos": sum(len(ex.tokens) for ex in pos),
                "num_tokens_neg": sum(len(ex.tokens) for ex in neg),
            },
            "alphabet_size": len(bundle.alphabet),
            "num_patterns": len(bundle.patterns),
        }

    @app.get("/api/patterns")
    def patterns(sort: str | None = None, dir: str = "asc") -> dict:
        rows = list(bundle.patterns)
        if sort is not None:
            if sort not in CSV_COLUMNS:
                raise HTTPException(
                    status_code=400,
                    detail=f"invalid sort column {sort!r}; "
                    f"valid columns: {', '.join(CSV_COLUMNS)}",
                )
            if dir not in ("asc", "desc"):
                raise HTTPException(
                    status_code=400, detail="dir must be 'asc' or 'desc'"
                )
            rows.sort(key=lambda r: pattern_row_cells(r)[sort], reverse=dir == "desc")
        return {
            "columns": list(CSV_COLUMNS),
            "sort": {"column": sort, "dir": dir} if sort is not None else None,
            "patterns": [pattern_row_cells(row) for row in rows],
        }

    @app.get("/api/patterns/{rank}")
    def pattern_detail(rank: int) -> dict:
        try:
            row = bundle.row(rank)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no pattern with rank {rank}")
        matched = {
            label: [
                _matched_example_payload(ex, rank)
                for ex in bundle.examples(label)
                if rank in ex.matches
            ]
            for label in ("pos", "neg")
        }
        return {"pattern": pattern_row_cells(row), "matched": matched}

    @app.get("/api/examples")
    def example_list(label: str, page: int = 1) -> dict:
        if label not in ("pos", "neg"):
            raise HTTPException(status_code=400, detail="label must be 'pos' or 'neg'")
        examples = bundle.examples(label)
        page_count = max(1, -(-len(examples) // PAGE_SIZE))
        page = min(max(page, 1), page_count)
        start = (page - 1) * PAGE_SIZE
        chunk = examples[start : start + PAGE_SIZE]
        return {
            "label": label,
            "page": page,
            "page_count": page_count,
            "page_size": PAGE_SIZE,
            "total": len(examples),
            "examples": [
                {
                    "id": ex.id,
                    "text": ex.text,
                    "tokens": _token_payload(ex, polarity_by_rank),
                }
                for ex in chunk
            ],
        }

    @app.get("/api/examples/{label}/{example_id}")
    def example_detail(label: str, example_id: int) -> dict:
        if label not in ("pos", "neg"):
            raise HTTPException(status_code=400, detail="label must be 'pos' or 'neg'")
        examples = bundle.examples(label)
        if not 0 <= example_id < len(examples):
            raise HTTPException(
                status_code=404, detail=f"no example {label}/{example_id}"
            )
        ex = examples[example_id]
        groups: dict[str, list[dict]] = {"positive": [], "negative": []}
        for rank in sorted(ex.matches):
            row = bundle.row(rank)
            entry = dict(pattern_row_cells(row))
            entry["occurrences"] = [list(occ) for occ in ex.matches[rank]]
            groups[row.scored.polarity].append(entry)
        return {
            "id": ex.id,
            "label": ex.label,
            "text": ex.text,
            "tokens": _token_payload(ex, polarity_by_rank),
            "patterns": groups,
        }

    index_path = Path(static_dir) / "index.html" if static_dir else None
    if index_path is not None and index_path.is_file():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")
    else:
        if static_dir is not None:
            log.warning("static dir %s has no index.html; serving fallback page",
                        static_dir)

        @app.get("/", response_class=HTMLResponse)
        def index() -> str:
            return _FALLBACK_INDEX

    return app


def serve(
    bundle_path: str | Path,
    address: str = "127.0.0.1:8080",
    static_dir: str | Path | None = None,
) -> None:
    """Load a bundle file and serve the report API until interrupted."""
    import uvicorn

    bundle = reporting.load(bundle_path)
    host, _, port_text = address.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"address must be 'host:port', got {address!r}")
    app = create_app(bundle, static_dir)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
