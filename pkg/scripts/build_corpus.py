"""Regenerate the committed acceptance corpus fixture.

    python3 scripts/build_corpus.py [--seed 0] [--out tests/fixtures/acceptance_corpus.json]
"""

import argparse
import collections
from pathlib import Path

from leonard.corpus import build_acceptance_corpus, save_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests/fixtures/acceptance_corpus.json"))
    args = ap.parse_args()
    specs = build_acceptance_corpus(args.seed)
    save_corpus(specs, args.out)
    print(f"{len(specs)} specs -> {args.out}")
    for key in ("family", "field", "d"):
        count = collections.Counter(
            s.family if key == "family" else s.ctx.descriptor() if key == "field" else s.d for s in specs
        )
        print(key, dict(sorted(count.items())))


if __name__ == "__main__":
    main()
