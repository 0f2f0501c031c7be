"""Deterministic corpus of family instances used by the acceptance suite and
the experiment scripts."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ExhaustedSearch
from .families import FAMILY_NAMES, FamilySpec, sample_admissible
from .field import make_field

GF4 = "GF:2:1,1,1"
FIELDS = ("Q", "GF:13", "GF:101", GF4)

# d values per field; rationals grow quickly so they get a sparser sweep
PLAN = {
    "Q": (1, 2, 3, 4, 6, 8),
    "GF:13": (1, 2, 3, 4, 5, 6, 7, 8),
    "GF:101": (1, 2, 3, 4, 5, 6, 7, 8),
    GF4: (1, 2, 3, 4),
}


def _seed(family: str, field: str, d: int, base: int) -> int:
    return base * 1_000_003 + sum(map(ord, family + field)) * 31 + d


def build_acceptance_corpus(base_seed: int = 0, budget: int = 300) -> list[FamilySpec]:
    out: list[FamilySpec] = []
    for fam in FAMILY_NAMES:
        for field in FIELDS:
            ctx = make_field(field)
            if fam == "Orphan":
                if ctx.characteristic() != 2:
                    continue
                plan, count = (3,), 6
            else:
                plan, count = PLAN[field], 1
            for d in plan:
                try:
                    out += sample_admissible(fam, d, ctx, _seed(fam, field, d, base_seed), count, budget=budget)
                except ExhaustedSearch:
                    continue
    return out


def save_corpus(specs: list[FamilySpec], path: str | Path) -> None:
    Path(path).write_text(json.dumps([s.to_json() for s in specs], indent=1, sort_keys=True) + "\n")


def load_corpus(path: str | Path) -> list[FamilySpec]:
    return [FamilySpec.from_json(doc) for doc in json.loads(Path(path).read_text())]
