"""Cohen's kappa for binary annotations."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass


@dataclass(frozen=True)
class AgreementResult:
    kappa: float
    confusion: tuple[tuple[int, int], tuple[int, int]]
    n_items: int


def cohen_kappa(a: Sequence[int], b: Sequence[int]) -> AgreementResult:
    """Chance-corrected agreement between two binary annotation lists.

    kappa = (p_o - p_e) / (1 - p_e), with the chance agreement p_e taken
    from the marginal label rates. When both annotators are constant and
    identical (p_e = 1), kappa is defined as 1.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("annotations must be non-empty")
    if not (set(a) | set(b)) <= {0, 1}:
        raise ValueError("annotations must be 0/1")

    n = len(a)
    counts = [[0, 0], [0, 0]]
    for x, y in zip(a, b):
        counts[x][y] += 1

    p_o = (counts[0][0] + counts[1][1]) / n
    a1 = (counts[1][0] + counts[1][1]) / n
    b1 = (counts[0][1] + counts[1][1]) / n
    p_e = a1 * b1 + (1 - a1) * (1 - b1)

    if p_e >= 1.0:
        kappa = 1.0
    else:
        kappa = (p_o - p_e) / (1.0 - p_e)
    return AgreementResult(
        kappa=kappa,
        confusion=((counts[0][0], counts[0][1]), (counts[1][0], counts[1][1])),
        n_items=n,
    )
