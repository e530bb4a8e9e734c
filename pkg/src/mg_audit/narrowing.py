"""Proportional narrowing of instruction sets across datasets.

Quotas follow largest-remainder apportionment of the target over the
original per-dataset counts, so the sampled total hits the target exactly
and each quota stays within one item of the exact proportional share.
Sampling inside a dataset is uniform under a fixed seed.
"""

from __future__ import annotations

import math
import random
from collections.abc import Mapping, Sequence
from typing import TypeVar

T = TypeVar("T")


def apportion(counts: Mapping[str, int], target: int) -> dict[str, int]:
    """Largest-remainder quotas over `counts` summing exactly to `target`."""
    if target <= 0:
        raise ValueError("target must be positive")
    total = sum(counts.values())
    if any(c < 0 for c in counts.values()):
        raise ValueError("counts must be non-negative")
    if target > total:
        raise ValueError(f"target {target} exceeds available total {total}")

    shares = {name: target * count / total for name, count in counts.items()}
    quotas = {name: math.floor(share) for name, share in shares.items()}
    remaining = target - sum(quotas.values())

    # Hand out the leftover seats by descending fractional remainder,
    # skipping datasets already at capacity. Ties break on name for
    # determinism.
    order = sorted(
        counts,
        key=lambda name: (-(shares[name] - quotas[name]), name),
    )
    idx = 0
    while remaining > 0:
        name = order[idx % len(order)]
        if quotas[name] < counts[name]:
            quotas[name] += 1
            remaining -= 1
        idx += 1
    return quotas


def narrow_proportional(
    groups: Mapping[str, Sequence[T]],
    target: int,
    seed: int = 0,
) -> dict[str, list[T]]:
    """Sample from each dataset according to its largest-remainder quota."""
    quotas = apportion({name: len(items) for name, items in groups.items()}, target)
    rng = random.Random(seed)
    sampled: dict[str, list[T]] = {}
    for name in sorted(groups):
        items = list(groups[name])
        quota = quotas[name]
        picked = sorted(rng.sample(range(len(items)), quota))
        sampled[name] = [items[i] for i in picked]
    return sampled
