"""Deterministic seeded corpus splitting into named parts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True, slots=True)
class SplitSpec:
    seed: int
    part_sizes: tuple[tuple[str, int], ...]


def split_corpus(doc_ids: Sequence[str], spec: SplitSpec) -> dict[str, list[str]]:
    """Seeded shuffle then contiguous partition; the same (ids, seed) always
    produces the same split."""
    total = sum(size for _, size in spec.part_sizes)
    if total != len(doc_ids):
        raise ValueError(
            f"part sizes sum to {total} but corpus has {len(doc_ids)} documents"
        )
    labels = [label for label, _ in spec.part_sizes]
    if len(set(labels)) != len(labels):
        raise ValueError("part labels must be unique")
    shuffled = list(doc_ids)
    random.Random(spec.seed).shuffle(shuffled)
    parts: dict[str, list[str]] = {}
    cursor = 0
    for label, size in spec.part_sizes:
        parts[label] = shuffled[cursor : cursor + size]
        cursor += size
    return parts
