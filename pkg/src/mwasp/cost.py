"""The demand-weighted average shortest path length (EPL) objective.

``epl(G, D) = sum over ordered pairs of D[u, v] * dist_G(u, v)``.  BFS runs
only from nodes that carry demand, consumes only the distances to that
node's partners and stops early once all of them are reached.  Sources are
visited in ascending id so the floating-point total is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demand import DemandMatrix
from .errors import UnreachablePairError, ValidationError
from .graph import InfrastructureGraph, _build_csr, _canonical_edges
from .kernels import epl_over_pairs


@dataclass(frozen=True)
class CostReport:
    """One algorithm's score on one instance."""

    algorithm: str
    instance: str
    epl: float
    ratio_to_baseline: float
    runtime_ms: float


def _grouped_pairs(demand: DemandMatrix):
    """Group demand pairs by their smaller endpoint for the BFS kernel."""
    pairs, values = demand.pairs, demand.values
    srcs, counts = np.unique(pairs[:, 0], return_counts=True)
    ptr = np.zeros(srcs.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return srcs.astype(np.int32), ptr, pairs[:, 1].astype(np.int32), values


def epl(graph: InfrastructureGraph, demand: DemandMatrix) -> float:
    """Exact demand-weighted average shortest path length."""
    if graph.n != demand.n:
        raise ValidationError(f"graph has {graph.n} nodes but demand has {demand.n}")
    if demand.num_pairs == 0:
        return 0.0
    srcs, ptr, dsts, wgts = _grouped_pairs(demand)
    total, bad_u, bad_v = epl_over_pairs(graph.indptr, graph.indices, srcs, ptr, dsts, wgts)
    if bad_u >= 0:
        raise UnreachablePairError(bad_u, bad_v)
    return total


def epl_on_edges(n: int, edges, demand: DemandMatrix) -> float:
    """EPL of a bare edge list (no connectivity or parity requirements).

    Used to score intermediate graphs such as the demand-aware overlay on
    super-nodes, which may legitimately be disconnected outside the demand
    support and may have an odd node count.
    """
    if demand.num_pairs == 0:
        return 0.0
    canon = _canonical_edges(n, edges)
    indptr, indices = _build_csr(n, canon)
    srcs, ptr, dsts, wgts = _grouped_pairs(demand)
    total, bad_u, bad_v = epl_over_pairs(indptr, indices, srcs, ptr, dsts, wgts)
    if bad_u >= 0:
        raise UnreachablePairError(bad_u, bad_v)
    return total
