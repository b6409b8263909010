"""Sparse symmetric demand matrices and the demand-graph view.

A demand matrix stores one value per unordered pair ``{u, v}``; that value
is the per-direction entry ``D[u, v] == D[v, u]``, so the ordered-pair total
is twice the sum of stored values.  A matrix is *normalized* when that
ordered total is 1.  Construction rejects negative entries and diagonal
entries; symmetry holds by storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import ValidationError
from .graph import InfrastructureGraph

NORMALIZATION_TOL = 1e-9


class DemandMatrix:
    """Sparse symmetric nonnegative matrix with zero diagonal.

    ``pairs`` is a (P, 2) int32 array with ``u < v`` sorted lexicographically;
    ``values`` holds the per-direction entry of each pair.  Immutable after
    construction.
    """

    __slots__ = ("n", "pairs", "values", "_codes")

    def __init__(self, n: int, pairs: np.ndarray, values: np.ndarray):
        self.n = int(n)
        self.pairs = pairs
        self.values = values
        self._codes = pairs[:, 0].astype(np.int64) * n + pairs[:, 1]

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], float] | Iterable) -> "DemandMatrix":
        """Build from ``{(u, v): value}`` or an iterable of ``(u, v, value)``.

        Pairs may appear in either orientation; if both orientations appear
        their values must agree exactly (asymmetric input is rejected).
        """
        if isinstance(entries, Mapping):
            items = [(u, v, w) for (u, v), w in entries.items()]
        else:
            items = [(u, v, w) for u, v, w in entries]
        seen: dict[tuple[int, int], float] = {}
        for u, v, w in items:
            u, v, w = int(u), int(v), float(w)
            if u == v:
                if w != 0.0:
                    raise ValidationError(f"nonzero diagonal entry at node {u}", subject=u)
                continue
            if not 0 <= u < n or not 0 <= v < n:
                raise ValidationError(f"pair ({u}, {v}) outside 0..{n - 1}", subject=(u, v))
            if w < 0:
                raise ValidationError(f"negative demand {w} at pair ({u}, {v})", subject=(u, v))
            key = (u, v) if u < v else (v, u)
            if key in seen and seen[key] != w:
                raise ValidationError(
                    f"asymmetric demand at pair {key}: {seen[key]} vs {w}", subject=key
                )
            seen[key] = w
        kept = sorted((k, w) for k, w in seen.items() if w > 0.0)
        pairs = np.array([k for k, _ in kept], dtype=np.int32).reshape(-1, 2)
        values = np.array([w for _, w in kept], dtype=np.float64)
        return cls(n, pairs, values)

    # -- queries ------------------------------------------------------------

    @property
    def num_pairs(self) -> int:
        return int(self.pairs.shape[0])

    def total(self) -> float:
        """Sum over ordered pairs (twice the stored unordered sum)."""
        return 2.0 * float(self.values.sum())

    def value(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        a, b = (u, v) if u < v else (v, u)
        code = a * self.n + b
        i = np.searchsorted(self._codes, code)
        if i < self._codes.shape[0] and self._codes[i] == code:
            return float(self.values[i])
        return 0.0

    def marginals(self) -> np.ndarray:
        """Per-node demand mass ``d_v = sum_u D[u, v]``."""
        d = np.zeros(self.n, dtype=np.float64)
        np.add.at(d, self.pairs[:, 0], self.values)
        np.add.at(d, self.pairs[:, 1], self.values)
        return d

    def partner_counts(self) -> np.ndarray:
        """Number of nonzero entries per row."""
        c = np.zeros(self.n, dtype=np.int64)
        np.add.at(c, self.pairs[:, 0], 1)
        np.add.at(c, self.pairs[:, 1], 1)
        return c

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        return abs(self.total() - 1.0) <= tol

    def entries(self) -> dict[tuple[int, int], float]:
        return {(int(u), int(v)): float(w) for (u, v), w in zip(self.pairs, self.values)}

    def __repr__(self) -> str:
        return f"DemandMatrix(n={self.n}, pairs={self.num_pairs}, total={self.total():.6g})"


def normalize_demand(raw, n: int | None = None) -> DemandMatrix:
    """Scale a raw symmetric nonnegative matrix so its ordered sum is 1.

    ``raw`` is a DemandMatrix or a ``{(u, v): value}`` mapping (``n`` required
    in the mapping case).  The sparsity pattern is preserved; an all-zero
    input is rejected.
    """
    if isinstance(raw, DemandMatrix):
        dm = raw
    else:
        if n is None:
            raise ValidationError("n is required when normalizing a mapping")
        dm = DemandMatrix.from_entries(n, raw)
    total = dm.total()
    if total <= 0.0:
        raise ValidationError("cannot normalize an all-zero demand matrix")
    return DemandMatrix(dm.n, dm.pairs, dm.values / total * 0.5)


@dataclass(frozen=True)
class DemandGraph:
    """Positive-demand pairs that are not infrastructure edges."""

    n: int
    pairs: np.ndarray   # (K, 2) int32, u < v, lexicographic
    weights: np.ndarray  # per-direction demand of each surviving pair

    @property
    def num_edges(self) -> int:
        return int(self.pairs.shape[0])

    def average_degree(self) -> float:
        """Mean number of incident demand edges over all n nodes."""
        return 2.0 * self.num_edges / self.n if self.n else 0.0


def demand_graph(graph: InfrastructureGraph, demand: DemandMatrix) -> DemandGraph:
    """Demand support minus the infrastructure edge set."""
    if graph.n != demand.n:
        raise ValidationError(f"graph has {graph.n} nodes but demand has {demand.n}")
    if demand.num_pairs == 0:
        return DemandGraph(demand.n, demand.pairs, demand.values)
    edge_codes = graph.edges[:, 0].astype(np.int64) * graph.n + graph.edges[:, 1]
    keep = ~np.isin(demand._codes, edge_codes)
    return DemandGraph(demand.n, demand.pairs[keep], demand.values[keep])


def avg_demand_degree(obj) -> float:
    """Mean nonzero count per row of a DemandMatrix or DemandGraph."""
    if isinstance(obj, DemandGraph):
        return obj.average_degree()
    if obj.n == 0:
        return 0.0
    return 2.0 * obj.num_pairs / obj.n
