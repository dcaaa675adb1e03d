#!/usr/bin/env python3
"""Regenerate the committed fixture files from their constructors.

Run from the repository root:  python tools/make_fixtures.py
Constructors are pure, so output is byte-stable; CI compares these files
against fresh builds.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from navgraph import fixtures, graph as graphmod  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def dump_json(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    for name, fn in [
        ("stacked_bar", fixtures.stacked_bar),
        ("us_states", fixtures.us_states),
        ("set_diagram", fixtures.set_diagram),
        ("parallel_vectors", fixtures.parallel_vectors),
    ]:
        path = FIXTURES / f"{name}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        graphmod.save(fn(), path)
        print(f"wrote {path.relative_to(ROOT)}")

    dump_json(FIXTURES / "scenes" / "stacked_bar_scene.json", fixtures.stacked_bar_scene())

    dump_json(FIXTURES / "specs" / "us_states.spec.json", {
        "kind": "adjacency",
        "regions": sorted(fixtures.US_STATE_NEIGHBORS),
        "borders": [list(p) for p in fixtures.us_state_borders()],
        "root": "United States",
        "nodeData": {"United States": {"semantics": {
            "label": "United States",
            "description": "State adjacency map. 50 states."}}},
    })
    dump_json(FIXTURES / "specs" / "weekdays_list.spec.json", {
        "kind": "list",
        "items": ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"],
        "circular": True,
    })
    dump_json(FIXTURES / "specs" / "filesystem_tree.spec.json", {
        "kind": "tree",
        "nodes": [
            {"id": "home", "parent": None},
            {"id": "documents", "parent": "home"},
            {"id": "music", "parent": "home"},
            {"id": "photos", "parent": "home"},
            {"id": "report.txt", "parent": "documents"},
            {"id": "notes.txt", "parent": "documents"},
        ],
    })


if __name__ == "__main__":
    main()
