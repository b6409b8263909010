"""Synthetic demand generators.

Both generators draw from ``numpy.random.Generator(PCG64(seed))``, so a
given ``(parameters, seed)`` tuple yields a bit-identical matrix on every
platform numpy supports.  Unordered pairs are enumerated lexicographically:
``(0,1), (0,2), ..., (0,n-1), (1,2), ...``
"""

from __future__ import annotations

import numpy as np

from .demand import DemandMatrix, normalize_demand
from .errors import ValidationError


def _all_pairs(n: int) -> np.ndarray:
    """All unordered pairs of ``0..n-1`` in lexicographic order, shape (P, 2)."""
    u, v = np.triu_indices(n, k=1)
    return np.column_stack([u, v]).astype(np.int32)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def zipf_demand(n: int, zeta: float, seed: int) -> DemandMatrix:
    """Demand whose pair masses follow a Zipf law over pair ranks.

    Rank ``x`` (1-based, over ``P = n(n-1)/2`` ranks) carries raw mass
    ``f(x) = 1 / (x**zeta * H)`` with ``H = sum(1/i**zeta for i in 1..P)``;
    a seed-determined uniform permutation assigns ranks to pairs.  The
    result is normalized (ordered sum 1).
    """
    if n < 2 or n % 2 != 0:
        raise ValidationError(f"n must be even and >= 2, got {n}")
    if zeta <= 0:
        raise ValidationError(f"zipf exponent must be positive, got {zeta}")
    pairs = _all_pairs(n)
    p = pairs.shape[0]
    ranks = np.arange(1, p + 1, dtype=np.float64)
    mass = ranks ** -zeta
    mass /= mass.sum()
    # pair i receives the mass of rank perm[i] + 1
    perm = _rng(seed).permutation(p)
    values = mass[perm] * 0.5   # per-direction entry; ordered total stays 1
    return normalize_demand(DemandMatrix(n, pairs, values))


def sparse_random(n: int, gamma: float, seed: int, high: float = 100.0) -> DemandMatrix:
    """Each unordered pair gets raw demand ``high`` with probability 1 - gamma.

    Redraws (continuing the same stream) if all pairs come up empty, then
    normalizes.
    """
    if n < 2 or n % 2 != 0:
        raise ValidationError(f"n must be even and >= 2, got {n}")
    if not 0.0 <= gamma < 1.0:
        raise ValidationError(f"sparsity must satisfy 0 <= gamma < 1, got {gamma}")
    if high <= 0:
        raise ValidationError(f"high demand value must be positive, got {high}")
    pairs = _all_pairs(n)
    p = pairs.shape[0]
    rng = _rng(seed)
    while True:
        hit = rng.random(p) < (1.0 - gamma)
        if hit.any():
            break
    values = np.where(hit, high, 0.0)
    return normalize_demand(DemandMatrix(n, pairs[hit], values[hit]))
