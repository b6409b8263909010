"""Infrastructure graph generators: ring, 2D torus, 3D torus.

Node ids are linearized row-major: the 2D torus maps ``(i, j)`` to
``i * b + j`` and the 3D torus maps ``(i, j, k)`` to ``(i * b + j) * c + k``.
Block-structured algorithms (super-node grouping, consecutive-block
overlays) rely on this order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .graph import InfrastructureGraph


@dataclass(frozen=True)
class TopologySpec:
    """A named topology with its dimensions."""

    kind: str               # ring | torus2d | torus3d
    dims: tuple[int, ...]

    def __post_init__(self):
        kinds = {"ring": 1, "torus2d": 2, "torus3d": 3}
        if self.kind not in kinds:
            raise ValidationError(f"unknown topology kind {self.kind!r}")
        if len(self.dims) != kinds[self.kind]:
            raise ValidationError(
                f"{self.kind} takes {kinds[self.kind]} dimension(s), got {self.dims}"
            )

    @property
    def n(self) -> int:
        p = 1
        for d in self.dims:
            p *= d
        return p

    def build(self) -> InfrastructureGraph:
        if self.kind == "ring":
            return ring(self.dims[0])
        if self.kind == "torus2d":
            return torus2d(*self.dims)
        return torus3d(*self.dims)

    def label(self) -> str:
        return f"{self.kind}({'x'.join(str(d) for d in self.dims)})"


def ring(n: int) -> InfrastructureGraph:
    """Cycle on ``n`` nodes; 2-regular, diameter ``n // 2``."""
    if n < 4 or n % 2 != 0:
        raise ValidationError(f"ring size must be even and >= 4, got {n}")
    return InfrastructureGraph(n, [(i, (i + 1) % n) for i in range(n)])


def torus2d(a: int, b: int) -> InfrastructureGraph:
    """Wrap-around grid on ``a * b`` nodes; 4-regular."""
    if a < 3 or b < 3:
        raise ValidationError(f"torus dimensions must be >= 3, got {a}x{b}")
    if (a * b) % 2 != 0:
        raise ValidationError(f"torus node count {a * b} must be even")
    edges = []
    for i in range(a):
        for j in range(b):
            u = i * b + j
            edges.append((u, i * b + (j + 1) % b))
            edges.append((u, ((i + 1) % a) * b + j))
    return InfrastructureGraph(a * b, edges)


def torus3d(a: int, b: int, c: int) -> InfrastructureGraph:
    """Wrap-around 3D grid on ``a * b * c`` nodes; 6-regular."""
    if a < 3 or b < 3 or c < 3:
        raise ValidationError(f"torus dimensions must be >= 3, got {a}x{b}x{c}")
    if (a * b * c) % 2 != 0:
        raise ValidationError(f"torus node count {a * b * c} must be even")
    edges = []
    for i in range(a):
        for j in range(b):
            for k in range(c):
                u = (i * b + j) * c + k
                edges.append((u, (i * b + j) * c + (k + 1) % c))
                edges.append((u, (i * b + (j + 1) % b) * c + k))
                edges.append((u, (((i + 1) % a) * b + j) * c + k))
    return InfrastructureGraph(a * b * c, edges)
