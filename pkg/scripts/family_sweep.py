"""Run every check suite over the acceptance corpus and tabulate the outcome
per family and field.

    python3 scripts/family_sweep.py [--corpus tests/fixtures/acceptance_corpus.json] [--json out.json]
"""

import argparse
import json
import time
from collections import defaultdict
from pathlib import Path

from leonard.checks import run_checks
from leonard.corpus import load_corpus
from leonard.families import generate_parray

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default=str(ROOT / "tests/fixtures/acceptance_corpus.json"))
    ap.add_argument("--json")
    args = ap.parse_args()
    specs = load_corpus(args.corpus)
    table = defaultdict(lambda: {"instances": 0, "ok": 0, "failed_suites": []})
    t0 = time.perf_counter()
    for spec in specs:
        row = table[(spec.family, spec.ctx.descriptor())]
        row["instances"] += 1
        report = run_checks(generate_parray(spec))
        row["ok"] += report["ok"]
        row["failed_suites"] += [f"d={spec.d}:{s}" for s, r in report["suites"].items() if r["status"] == "fail"]
    elapsed = time.perf_counter() - t0
    width = max(len(f) for f, _ in table)
    for (fam, field), row in sorted(table.items()):
        print(f"{fam:<{width}}  {field:<11} {row['ok']:>3}/{row['instances']:<3} {' '.join(row['failed_suites'])}")
    total = sum(r["instances"] for r in table.values())
    good = sum(r["ok"] for r in table.values())
    print(f"\n{good}/{total} instances pass all suites in {elapsed:.1f}s")
    if args.json:
        Path(args.json).write_text(json.dumps({f"{k[0]}|{k[1]}": v for k, v in sorted(table.items())}, indent=2) + "\n")
    return 0 if good == total else 1


if __name__ == "__main__":
    raise SystemExit(main())
