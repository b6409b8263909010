"""Grouping infrastructure nodes into super-nodes of fixed size.

The pipeline: build a DFS spanning tree, then repeatedly take the deepest
remaining node, climb ``alpha`` tree levels to an ancestor (the root when
the node is shallower than that) and strip the ``alpha`` deepest remaining
nodes of that ancestor's subtree into one group.  Every group produced this
way has pairwise graph distance at most ``2 * alpha``: members sit in one
subtree whose root is within ``alpha`` hops of each of them, and removing
deepest-first keeps the remaining tree connected.

Fewer than ``alpha`` nodes at the end become the leftover set; they bypass
the super-graph and are matched by the completion stage downstream.

All tie-breaks (deepest first, then lowest id) are fixed so identical
inputs give identical groupings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demand import DemandMatrix
from .errors import ValidationError
from .graph import InfrastructureGraph


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: np.ndarray   # parent[root] == -1
    depth: np.ndarray

    @property
    def n(self) -> int:
        return int(self.parent.shape[0])


def dfs_tree(graph: InfrastructureGraph, root: int = 0) -> SpanningTree:
    """Depth-first spanning tree visiting neighbors in ascending id order."""
    n = graph.n
    if not 0 <= root < n:
        raise ValidationError(f"root {root} outside 0..{n - 1}")
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    depth[root] = 0
    # (node, index into its neighbor list) frames emulate recursive preorder
    stack = [(root, 0)]
    while stack:
        v, i = stack[-1]
        row = graph.neighbors(v)
        if i >= row.shape[0]:
            stack.pop()
            continue
        stack[-1] = (v, i + 1)
        w = int(row[i])
        if depth[w] < 0:
            parent[w] = v
            depth[w] = depth[v] + 1
            stack.append((w, 0))
    if (depth < 0).any():
        v = int(np.argmax(depth < 0))
        raise ValidationError(f"graph is disconnected (node {v} unreachable)", subject=v)
    return SpanningTree(root, parent, depth)


@dataclass(frozen=True)
class SuperNodeMapping:
    """Surjection from grouped nodes to super-node ids, plus the leftover."""

    alpha: int
    groups: tuple[tuple[int, ...], ...]     # creation order; each of size alpha
    leftover: tuple[int, ...]               # fewer than alpha nodes, ascending
    node_to_group: np.ndarray               # -1 for leftover nodes

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return int(self.node_to_group.shape[0])


def _preorder_intervals(tree: SpanningTree):
    """Euler-tour intervals: x is in v's subtree iff tin[v] <= tin[x] < tout[v]."""
    n = tree.n
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        p = tree.parent[v]
        if p >= 0:
            children[p].append(v)
    tin = np.zeros(n, dtype=np.int64)
    tout = np.zeros(n, dtype=np.int64)
    clock = 0
    stack = [(tree.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            tout[v] = clock
            continue
        tin[v] = clock
        clock += 1
        stack.append((v, True))
        for c in reversed(children[v]):
            stack.append((c, False))
    return tin, tout


def group_supernodes(tree: SpanningTree, alpha: int) -> SuperNodeMapping:
    """Partition the tree's nodes into groups of ``alpha`` plus a leftover."""
    if alpha < 2:
        raise ValidationError(f"super-node size must be >= 2, got {alpha}")
    n = tree.n
    tin, tout = _preorder_intervals(tree)
    # candidates in removal priority: deepest first, then lowest id
    order = np.lexsort((np.arange(n), -tree.depth))
    removed = np.zeros(n, dtype=bool)
    node_to_group = np.full(n, -1, dtype=np.int64)
    groups: list[tuple[int, ...]] = []
    head = 0            # order[:head] are all removed
    remaining = n
    while remaining >= alpha:
        while removed[order[head]]:
            head += 1
        seed = int(order[head])
        # ancestor at distance alpha, or the root when the seed is shallow
        anchor = seed
        for _ in range(min(alpha, int(tree.depth[seed]))):
            anchor = int(tree.parent[anchor])
        lo, hi = tin[anchor], tout[anchor]
        members = []
        scan = head
        while len(members) < alpha:
            v = int(order[scan])
            scan += 1
            if not removed[v] and lo <= tin[v] < hi:
                members.append(v)
                removed[v] = True
        gid = len(groups)
        for v in members:
            node_to_group[v] = gid
        groups.append(tuple(members))
        remaining -= alpha
    leftover = tuple(int(v) for v in np.nonzero(~removed)[0])
    return SuperNodeMapping(alpha, tuple(groups), leftover, node_to_group)


@dataclass(frozen=True)
class SuperGraph:
    """Quotient of the infrastructure graph under the super-node mapping."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]

    def is_connected(self) -> bool:
        if self.num_nodes <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        todo = [0]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == self.num_nodes


def super_graph(graph: InfrastructureGraph, mapping: SuperNodeMapping) -> SuperGraph:
    """Distinct group pairs joined by at least one infrastructure edge."""
    f = mapping.node_to_group
    a = f[graph.edges[:, 0]]
    b = f[graph.edges[:, 1]]
    keep = (a >= 0) & (b >= 0) & (a != b)
    lo = np.minimum(a[keep], b[keep])
    hi = np.maximum(a[keep], b[keep])
    codes = np.unique(lo * max(mapping.num_groups, 1) + hi)
    g = max(mapping.num_groups, 1)
    edges = tuple((int(c // g), int(c % g)) for c in codes)
    return SuperGraph(mapping.num_groups, edges)


@dataclass(frozen=True)
class SuperDemand:
    """Demand aggregated over super-node pairs.

    ``matrix`` holds the inter-group mass only; intra-group mass and mass
    touching leftover nodes are tracked separately so the three parts always
    add up to the original total.
    """

    matrix: DemandMatrix        # over num_groups super-nodes, not normalized
    intra_mass: float           # ordered mass with both ends in one group
    leftover_mass: float        # ordered mass touching a leftover node


def super_demand(demand: DemandMatrix, mapping: SuperNodeMapping) -> SuperDemand:
    g = mapping.num_groups
    f = mapping.node_to_group
    if demand.num_pairs == 0:
        return SuperDemand(DemandMatrix.from_entries(max(g, 1), {}), 0.0, 0.0)
    a = f[demand.pairs[:, 0]]
    b = f[demand.pairs[:, 1]]
    w = demand.values
    touches_leftover = (a < 0) | (b < 0)
    intra = ~touches_leftover & (a == b)
    inter = ~touches_leftover & (a != b)
    leftover_mass = 2.0 * float(w[touches_leftover].sum())
    intra_mass = 2.0 * float(w[intra].sum())
    lo = np.minimum(a[inter], b[inter])
    hi = np.maximum(a[inter], b[inter])
    codes = lo * max(g, 1) + hi
    uniq, inv = np.unique(codes, return_inverse=True)
    agg = np.zeros(uniq.shape[0], dtype=np.float64)
    np.add.at(agg, inv, w[inter])
    pairs = np.empty((uniq.shape[0], 2), dtype=np.int32)
    pairs[:, 0] = uniq // max(g, 1)
    pairs[:, 1] = uniq % max(g, 1)
    return SuperDemand(DemandMatrix(max(g, 1), pairs, agg), intra_mass, leftover_mass)
