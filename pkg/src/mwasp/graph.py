"""Infrastructure graph and matching primitives.

The graph is a simple, undirected, connected graph on an even number of
nodes ``0..n-1``, stored as a canonical edge array plus CSR adjacency so the
BFS kernels can run on it directly.  Instances are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError
from .kernels import bfs_distances, eccentricities


def _canonical_edges(n: int, edges: Iterable[Sequence[int]]) -> np.ndarray:
    """Validate endpoints, orient each edge (u < v), sort and deduplicate."""
    arr = np.asarray(list(edges), dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int32)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError("edges must be (u, v) pairs")
    if arr.min() < 0 or arr.max() >= n:
        bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
        raise ValidationError(
            f"edge ({bad[0]}, {bad[1]}) has an endpoint outside 0..{n - 1}",
            subject=(int(bad[0]), int(bad[1])),
        )
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        v = int(arr[loops][0, 0])
        raise ValidationError(f"self-loop at node {v}", subject=v)
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    codes = np.unique(lo * n + hi)
    out = np.empty((codes.shape[0], 2), dtype=np.int32)
    out[:, 0] = codes // n
    out[:, 1] = codes % n
    return out


def _build_csr(n: int, edges: np.ndarray):
    if edges.shape[0] == 0:
        return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int32)
    both = np.concatenate([edges, edges[:, ::-1]]).astype(np.int64)
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    indices = both[:, 1].astype(np.int32)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(both[:, 0], minlength=n), out=indptr[1:])
    return indptr, indices


class InfrastructureGraph:
    """Simple undirected connected graph on nodes ``0..n-1`` (n even)."""

    __slots__ = ("n", "edges", "indptr", "indices", "_edge_codes")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], _unchecked=None):
        if n <= 0:
            raise ValidationError(f"node count must be positive, got {n}")
        if n % 2 != 0:
            raise ValidationError(f"node count must be even, got {n}")
        if _unchecked is not None:
            canon = _unchecked
        else:
            canon = _canonical_edges(n, edges)
        self.n = n
        self.edges = canon
        self.indptr, self.indices = _build_csr(n, canon)
        self._edge_codes = canon[:, 0].astype(np.int64) * n + canon[:, 1]
        if n > 1:
            dist = bfs_distances(self.indptr, self.indices, 0)
            if (dist < 0).any():
                v = int(np.argmax(dist < 0))
                raise ValidationError(f"graph is disconnected (node {v} unreachable from 0)", subject=v)

    # -- queries ------------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def max_degree(self) -> int:
        deg = np.diff(self.indptr)
        return int(deg.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        code = a * self.n + b
        i = np.searchsorted(self._edge_codes, code)
        return i < self._edge_codes.shape[0] and self._edge_codes[i] == code

    def distances_from(self, source: int) -> np.ndarray:
        return bfs_distances(self.indptr, self.indices, source)

    def diameter(self) -> int:
        ecc = eccentricities(self.indptr, self.indices)
        return int(ecc.max())

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def __repr__(self) -> str:
        return f"InfrastructureGraph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class Matching:
    """A set of node-disjoint undirected edges, stored canonically."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Matching":
        canon = sorted({(min(int(u), int(v)), max(int(u), int(v))) for u, v in pairs})
        for u, v in canon:
            if u == v:
                raise ValidationError(f"matching contains self-loop at node {u}", subject=u)
            if u < 0:
                raise ValidationError(f"matching endpoint {u} is negative", subject=u)
        return cls(tuple(canon))

    def nodes(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def __len__(self) -> int:
        return len(self.edges)


def validate_matching(matching: Matching, n: int, require_perfect: bool = False) -> list[str]:
    """Return violations (empty list means the matching is valid).

    Reports every node that appears in more than one edge, every endpoint
    outside ``0..n-1``, and, with ``require_perfect``, every unmatched node.
    """
    violations = []
    count = np.zeros(n, dtype=np.int64)
    for u, v in matching.edges:
        for x in (u, v):
            if not 0 <= x < n:
                violations.append(f"endpoint {x} outside 0..{n - 1}")
            else:
                count[x] += 1
    for v in np.nonzero(count > 1)[0]:
        violations.append(f"node {int(v)} is matched {int(count[v])} times")
    if require_perfect:
        for v in np.nonzero(count == 0)[0]:
            violations.append(f"node {int(v)} is unmatched")
    return violations


def augment(graph: InfrastructureGraph, matching: Matching) -> InfrastructureGraph:
    """Union of the graph's edges and the matching's edges.

    Matching edges that duplicate infrastructure edges are absorbed (the
    result stays simple); the augmented edges are indistinguishable from
    infrastructure edges afterwards.
    """
    bad = [x for e in matching.edges for x in e if not 0 <= x < graph.n]
    if bad:
        raise ValidationError(
            f"matching endpoint {bad[0]} outside 0..{graph.n - 1}", subject=bad[0]
        )
    violations = [m for m in validate_matching(matching, graph.n) if "matched" in m]
    if violations:
        raise ValidationError("not a matching: " + "; ".join(violations))
    if not matching.edges:
        return graph
    extra = np.array(matching.edges, dtype=np.int64)
    merged = np.vstack([graph.edges.astype(np.int64), extra])
    canon = _canonical_edges(graph.n, merged)
    return InfrastructureGraph(graph.n, (), _unchecked=canon)
