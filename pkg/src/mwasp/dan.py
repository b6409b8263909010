"""Conditional entropy and degree-bounded demand-aware overlay networks.

``build_dan`` produces a graph over super-nodes in which every demand pair
is connected and no node exceeds a hard degree cap.  The construction is a
union of per-node level-order ego-trees:

* nodes are processed by decreasing demand marginal (ties: lowest id);
* a node's partners, heaviest first, fill a binary tree rooted at the node,
  so the k-th heaviest partner sits at depth ``floor(log2(k + 1))``;
* every node carries a residual degree budget of ``delta_cap``; a partner
  that cannot take its natural slot (its own budget or the slot parent's is
  exhausted) is attached to the earliest tree position with spare budget,
  skipped when it is already connected to the root, or deferred;
* deferred pairs are repaired at the end by joining their components
  through the nodes with the most residual budget.

The heaviest partners therefore sit nearest the tree root, the degree cap
is never exceeded, and every demand pair ends up connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cost import epl_on_edges
from .demand import DemandMatrix, avg_demand_degree
from .errors import MwaspError, ValidationError


@dataclass(frozen=True)
class EntropyReport:
    """Conditional entropy of a demand and the induced EPL lower bound."""

    bits: float
    delta: int
    lower_bound: float      # bits / log2(delta + 1) - 1

    def __post_init__(self):
        if self.bits < -1e-12:
            raise ValidationError(f"entropy cannot be negative, got {self.bits}")


def conditional_entropy(demand: DemandMatrix, delta: int = 1) -> EntropyReport:
    """``H = sum over ordered pairs of D[u,v] * log2(d_v / D[u,v])`` in bits.

    ``d_v`` is the column marginal; zero entries contribute zero.  The
    report's ``lower_bound`` is ``H / log2(delta + 1) - 1``, which no graph
    of maximum degree ``delta`` can beat as an EPL for this demand.
    """
    if delta < 1:
        raise ValidationError(f"degree bound must be >= 1, got {delta}")
    d = demand.marginals()
    w = demand.values
    bits = 0.0
    if w.shape[0]:
        du = d[demand.pairs[:, 0]]
        dv = d[demand.pairs[:, 1]]
        # each unordered pair contributes both directed terms
        bits = float(np.sum(w * (np.log2(dv / w) + np.log2(du / w))))
    bits = max(bits, 0.0)
    return EntropyReport(bits, delta, bits / math.log2(delta + 1) - 1.0)


def default_degree_cap(demand: DemandMatrix) -> int:
    """``max(ceil(12 * average demand degree), 3)``."""
    return max(math.ceil(12.0 * avg_demand_degree(demand)), 3)


@dataclass(frozen=True)
class SuperDAN:
    """Bounded-degree overlay over super-nodes."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]      # construction order
    delta_cap: int
    epl: float                              # EPL of the demand on this graph
    entropy: EntropyReport
    trace: dict

    @property
    def max_degree(self) -> int:
        deg = np.zeros(self.num_nodes, dtype=np.int64)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return int(deg.max()) if self.num_nodes else 0

    def quality(self) -> float:
        """Measured ratio ``epl * log2(cap + 1) / max(entropy, 1)``."""
        return self.epl * math.log2(self.delta_cap + 1) / max(self.entropy.bits, 1.0)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def build_dan(super_demand: DemandMatrix, delta_cap: int | None = None) -> SuperDAN:
    """Build the overlay for a demand over super-nodes.

    Guarantees: max degree <= ``delta_cap`` and every pair with positive
    demand connected.  ``delta_cap`` defaults to ``default_degree_cap``.
    """
    if delta_cap is None:
        delta_cap = default_degree_cap(super_demand)
    if delta_cap < 3:
        raise ValidationError(f"degree cap must be >= 3, got {delta_cap}")
    n = super_demand.n
    marg = super_demand.marginals()
    # per node: partners sorted by descending weight, ties by id
    partner_lists: list[list[tuple[float, int]]] = [[] for _ in range(n)]
    for (u, v), w in zip(super_demand.pairs, super_demand.values):
        partner_lists[u].append((float(w), int(v)))
        partner_lists[v].append((float(w), int(u)))
    order = sorted((v for v in range(n) if marg[v] > 0.0), key=lambda v: (-marg[v], v))

    budget = np.full(n, delta_cap, dtype=np.int64)
    adj: list[set[int]] = [set() for _ in range(n)]
    uf = _UnionFind(n)
    edges: list[tuple[int, int]] = []
    deferred: list[tuple[int, int]] = []
    skipped = 0

    def connect(a: int, b: int) -> None:
        adj[a].add(b)
        adj[b].add(a)
        budget[a] -= 1
        budget[b] -= 1
        uf.union(a, b)
        edges.append((a, b))

    for u in order:
        partners = [v for _, v in sorted(partner_lists[u], key=lambda t: (-t[0], t[1]))]
        placed = [u]
        placed_set = {u}
        child_count = {u: 0}
        # positions close monotonically (children fill up, budgets only
        # shrink here), so one advancing pointer finds the open slot
        slot_ptr = 0
        for v in partners:
            if not adj[v].isdisjoint(placed_set):
                # already reachable inside this tree: occupy a position
                # without a new edge so later partners can hang below it
                placed.append(v)
                placed_set.add(v)
                child_count[v] = 0
                continue
            slot = None
            if budget[v] >= 1:
                while slot_ptr < len(placed):
                    p = placed[slot_ptr]
                    if child_count[p] < 2 and budget[p] >= 1:
                        slot = p
                        break
                    slot_ptr += 1
            if slot is None:
                if uf.find(u) == uf.find(v):
                    skipped += 1
                else:
                    deferred.append((u, v))
                continue
            connect(slot, v)
            child_count[slot] += 1
            child_count[v] = 0
            placed.append(v)
            placed_set.add(v)

    repaired = 0
    for u, v in deferred:
        if uf.find(u) == uf.find(v):
            continue
        x = _best_budgeted(uf, budget, u, n)
        y = _best_budgeted(uf, budget, v, n)
        if x is None or y is None:
            raise MwaspError(
                f"cannot connect demand pair ({u}, {v}) within degree cap {delta_cap}"
            )
        connect(x, y)
        repaired += 1

    value = epl_on_edges(n, edges, super_demand) if super_demand.num_pairs else 0.0
    report = conditional_entropy(super_demand, delta_cap)
    trace = {
        "nodes_active": len(order),
        "edges": len(edges),
        "skipped_connected": skipped,
        "repaired": repaired,
    }
    return SuperDAN(n, tuple(edges), delta_cap, value, report, trace)


def _best_budgeted(uf: _UnionFind, budget, node: int, n: int) -> int | None:
    """Node with the largest residual budget in ``node``'s component."""
    root = uf.find(node)
    best = None
    for x in range(n):
        if budget[x] >= 1 and uf.find(x) == root:
            if best is None or budget[x] > budget[best] or (budget[x] == budget[best] and x < best):
                best = x
    return best
