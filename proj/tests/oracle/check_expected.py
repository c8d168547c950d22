#!/usr/bin/env python3
"""Fails when the committed oracle values differ from a fresh oracle run."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
import qh_oracle  # noqa: E402

FIXTURES = ["ruled_k1", "ruled_k2", "ruled_k1_2", "s2", "s2s2", "t2"]


def main():
    oracle_dir, fixture_dir = Path(sys.argv[1]), Path(sys.argv[2])
    fresh = qh_oracle.compute([fixture_dir / f"{name}.json" for name in FIXTURES])
    committed = json.loads((oracle_dir / "expected.json").read_text())
    if fresh != committed:
        for name in FIXTURES:
            if fresh.get(name) != committed.get(name):
                print(f"oracle values for {name} are stale")
        return 1
    print(f"oracle values current for {len(FIXTURES)} fixtures")
    return 0


if __name__ == "__main__":
    sys.exit(main())
