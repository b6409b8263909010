"""File formats: edge lists, demand triples, pair-list traces, Matrix Market.

Graph exchange format: one ``u v`` pair per line, 0-based decimal ids,
``#`` starts a comment.  Demand exchange: ``u v value`` triples with each
unordered pair listed once.  Matchings reuse the edge-list format.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .demand import DemandMatrix, normalize_demand
from .errors import FormatError, ValidationError
from .graph import InfrastructureGraph, Matching

log = logging.getLogger(__name__)


def _data_lines(path):
    """Yield (lineno, stripped payload) skipping blanks and # comments."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            payload = line.split("#", 1)[0].strip()
            if payload:
                yield lineno, payload


# ---------------------------------------------------------------------------
# edge lists (graphs and matchings)
# ---------------------------------------------------------------------------


def write_edge_list(path, edges, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")


def read_edge_pairs(path) -> list[tuple[int, int]]:
    pairs = []
    for lineno, payload in _data_lines(path):
        parts = payload.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {payload!r}", line=lineno)
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"non-integer node id in {payload!r}", line=lineno)
    return pairs


def save_graph(graph: InfrastructureGraph, path) -> None:
    write_edge_list(path, graph.edges, header=f"graph n={graph.n} m={graph.num_edges}")


def load_graph(path, n: int | None = None) -> InfrastructureGraph:
    """Read an edge list; ``n`` defaults to ``max id + 1``."""
    pairs = read_edge_pairs(path)
    if not pairs:
        raise FormatError(f"no edges in {path}")
    if n is None:
        n = max(max(u, v) for u, v in pairs) + 1
    return InfrastructureGraph(n, pairs)


def save_matching(matching: Matching, path) -> None:
    write_edge_list(path, matching.edges, header=f"matching size={len(matching)}")


def load_matching(path) -> Matching:
    return Matching.from_pairs(read_edge_pairs(path))


# ---------------------------------------------------------------------------
# demand triples
# ---------------------------------------------------------------------------


def save_demand(demand: DemandMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# demand n={demand.n} pairs={demand.num_pairs}\n")
        for (u, v), w in zip(demand.pairs, demand.values):
            fh.write(f"{u} {v} {w!r}\n")


def load_demand(path, n: int | None = None) -> DemandMatrix:
    """Read ``u v value`` triples and normalize."""
    entries = []
    max_id = -1
    for lineno, payload in _data_lines(path):
        parts = payload.split()
        if len(parts) != 3:
            raise FormatError(f"expected 'u v value', got {payload!r}", line=lineno)
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise FormatError(f"could not parse {payload!r}", line=lineno)
        entries.append((u, v, w))
        max_id = max(max_id, u, v)
    if not entries:
        raise FormatError(f"no demand entries in {path}")
    if n is None:
        n = max_id + 1
    return normalize_demand(DemandMatrix.from_entries(n, entries))


# ---------------------------------------------------------------------------
# pair-list traces (rack-to-rack frequency lists)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairListResult:
    demand: DemandMatrix
    ids: tuple[str, ...]    # dense id -> original label, first-appearance order


def load_pair_list(path) -> PairListResult:
    """Read ``u,v,frequency`` lines (comma- or whitespace-separated).

    Labels are arbitrary strings mapped to dense 0-based ids in order of
    first appearance; duplicate pairs accumulate.  The result is normalized.
    """
    ids: dict[str, int] = {}
    raw: dict[tuple[int, int], float] = {}
    for lineno, payload in _data_lines(path):
        parts = [p for p in payload.replace(",", " ").split() if p]
        if len(parts) != 3:
            raise FormatError(f"expected 'u,v,frequency', got {payload!r}", line=lineno)
        a, b, freq_text = parts
        try:
            freq = float(freq_text)
        except ValueError:
            raise FormatError(f"bad frequency {freq_text!r}", line=lineno)
        if freq < 0:
            raise FormatError(f"negative frequency {freq}", line=lineno)
        ia = ids.setdefault(a, len(ids))
        ib = ids.setdefault(b, len(ids))
        if ia == ib:
            continue    # self-communication carries no routing cost
        key = (ia, ib) if ia < ib else (ib, ia)
        raw[key] = raw.get(key, 0.0) + freq
    if not raw:
        raise FormatError(f"no usable pairs in {path}")
    n = len(ids)
    demand = normalize_demand(DemandMatrix.from_entries(n, raw))
    return PairListResult(demand, tuple(ids))


# ---------------------------------------------------------------------------
# Matrix Market coordinate files
# ---------------------------------------------------------------------------

_MM_FIELDS = {"real", "integer", "pattern"}
_MM_SYMMETRIES = {"symmetric", "general"}


@dataclass(frozen=True)
class MatrixMarketResult:
    demand: DemandMatrix
    rows: int               # row count declared in the file
    padded: bool            # an isolated node was appended to make n even
    dropped_diagonal: int   # diagonal entries discarded


def load_matrix_market(path) -> MatrixMarketResult:
    """Read a coordinate Matrix Market file as a demand matrix.

    Accepted banners: ``matrix coordinate real|integer|pattern
    symmetric|general``.  Pattern files get all-ones weights.  General files
    must contain every entry in both orientations with equal values.
    Diagonal entries are dropped with a warning.  An odd row count gets one
    isolated padding node so the node count is even; the padded node carries
    no demand and is matched last by every algorithm.
    """
    with open(path, "r", encoding="utf-8") as fh:
        banner = fh.readline()
    tokens = banner.strip().split()
    if len(tokens) != 5 or tokens[0] != "%%MatrixMarket" or tokens[1].lower() != "matrix":
        raise FormatError(f"unrecognized MatrixMarket banner {banner.strip()!r}", line=1)
    layout, fieldkind, symmetry = tokens[2].lower(), tokens[3].lower(), tokens[4].lower()
    if layout != "coordinate":
        raise FormatError(f"only coordinate layout is supported, got {layout!r}", line=1)
    if fieldkind not in _MM_FIELDS:
        raise FormatError(f"unsupported field {fieldkind!r}", line=1)
    if symmetry not in _MM_SYMMETRIES:
        raise FormatError(f"unsupported symmetry {symmetry!r}", line=1)

    rows = cols = nnz = -1
    directed: dict[tuple[int, int], float] = {}
    dropped = 0
    count = 0
    for lineno, payload in _mm_data_lines(path):
        parts = payload.split()
        if rows < 0:
            if len(parts) != 3:
                raise FormatError(f"expected 'rows cols nnz', got {payload!r}", line=lineno)
            rows, cols, nnz = (int(p) for p in parts)
            if rows != cols:
                raise FormatError(f"matrix must be square, got {rows}x{cols}", line=lineno)
            continue
        want = 2 if fieldkind == "pattern" else 3
        if len(parts) != want:
            raise FormatError(f"expected {want} fields, got {payload!r}", line=lineno)
        i, j = int(parts[0]) - 1, int(parts[1]) - 1
        if not 0 <= i < rows or not 0 <= j < rows:
            raise FormatError(f"index out of range in {payload!r}", line=lineno)
        w = 1.0 if fieldkind == "pattern" else float(parts[2])
        if w <= 0:
            raise FormatError(f"non-positive value {w} at ({i + 1}, {j + 1})", line=lineno)
        count += 1
        if i == j:
            dropped += 1
            continue
        directed[(i, j)] = w
    if rows < 0:
        raise FormatError(f"missing size line in {path}")
    if nnz >= 0 and count != nnz:
        raise FormatError(f"size line declares {nnz} entries but file has {count}")

    raw: dict[tuple[int, int], float] = {}
    if symmetry == "symmetric":
        for (i, j), w in directed.items():
            key = (i, j) if i < j else (j, i)
            raw[key] = w
    else:
        for (i, j), w in directed.items():
            mirror = directed.get((j, i))
            if mirror is None or mirror != w:
                raise ValidationError(
                    f"general matrix is not symmetric at pair ({i}, {j})", subject=(i, j)
                )
            raw[(min(i, j), max(i, j))] = w
    if dropped:
        log.warning("%s: dropped %d diagonal entries", path, dropped)
    if not raw:
        raise FormatError(f"no off-diagonal entries in {path}")
    padded = rows % 2 != 0
    n = rows + 1 if padded else rows
    if padded:
        log.warning("%s: odd row count %d, appended isolated padding node %d", path, rows, rows)
    demand = normalize_demand(DemandMatrix.from_entries(n, raw))
    return MatrixMarketResult(demand, rows, padded, dropped)


def _mm_data_lines(path):
    """Like ``_data_lines`` but with MatrixMarket ``%`` comments."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            yield lineno, stripped


def save_matrix_market(demand: DemandMatrix, path) -> None:
    """Write the demand as a coordinate real symmetric Matrix Market file."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix coordinate real symmetric\n")
        fh.write(f"{demand.n} {demand.n} {demand.num_pairs}\n")
        for (u, v), w in zip(demand.pairs, demand.values):
            # lower triangle, 1-based
            fh.write(f"{v + 1} {u + 1} {w!r}\n")
