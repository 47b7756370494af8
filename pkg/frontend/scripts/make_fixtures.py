"""Regenerate the explorer test fixtures from the live report API.

Run from the repo root after changing the Python side:

    python3 frontend/scripts/make_fixtures.py

Mines the bundled mini-corpus, spins the API app up in-process, and dumps
the endpoint payloads the explorer tests replay.
"""

from __future__ import annotations

import json
from importlib.resources import files
from pathlib import Path

from fastapi.testclient import TestClient

from grasp.corpus import ingest_pretagged
from grasp.miner import MinerConfig, fit
from grasp.webapp import create_app

OUT = Path(__file__).parent.parent / "tests" / "fixtures"

ENDPOINTS = {
    "summary": "/api/summary",
    "patterns": "/api/patterns",
    "patterns_sorted_precision_desc": "/api/patterns?sort=precision&dir=desc",
    "patterns_sorted_coverage_asc": "/api/patterns?sort=coverage&dir=asc",
    "pattern_detail_1": "/api/patterns/1",
    "examples_pos_page1": "/api/examples?label=pos&page=1",
    "examples_neg_page1": "/api/examples?label=neg&page=1",
    "example_detail_pos_0": "/api/examples/pos/0",
}


def main() -> None:
    data = files("grasp") / "data"
    pos = ingest_pretagged(str(data / "spam_pos.jsonl"), "pos")
    neg = ingest_pretagged(str(data / "spam_neg.jsonl"), "neg")
    bundle = fit(pos, neg, MinerConfig(num_patterns=20, gaps_allowed=2, min_coverage=0.01))
    client = TestClient(create_app(bundle))
    OUT.mkdir(parents=True, exist_ok=True)
    for name, url in ENDPOINTS.items():
        payload = client.get(url).json()
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
