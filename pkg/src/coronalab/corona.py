"""Generalized edge corona ``G ◊ (H_1, ..., H_m)``.

Vertex layout of the product: base vertices ``0..n-1`` in G's order, then one
block of satellites per edge of G (in G's edge order), each block in the
factor's own vertex order.  Satellite ``(i, j)`` is vertex ``j`` of ``H_i`` and
is joined to both endpoints of edge ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .graph import Graph, GraphError, induced_subgraph


@dataclass(frozen=True)
class Base:
    vertex: int

    def __str__(self) -> str:
        return f"base vertex {self.vertex}"


@dataclass(frozen=True)
class Satellite:
    edge: int
    local: int

    def __str__(self) -> str:
        return f"satellite {self.local} of edge {self.edge}"


Provenance = Union[Base, Satellite]


@dataclass(frozen=True)
class CoronaGraph:
    graph: Graph
    provenance: tuple[Provenance, ...]
    edge_order: tuple[tuple[int, int], ...]
    factor_sizes: tuple[int, ...]
    base: Graph
    factors: tuple[Graph, ...]

    @property
    def block_offsets(self) -> tuple[int, ...]:
        """First product vertex of each satellite block."""
        offsets = []
        at = self.base.n
        for size in self.factor_sizes:
            offsets.append(at)
            at += size
        return tuple(offsets)

    def satellites(self, i: int) -> range:
        start = self.block_offsets[i]
        return range(start, start + self.factor_sizes[i])

    def describe(self, v: int) -> str:
        return str(self.provenance[v])


def generalized_edge_corona(g: Graph, factors: Sequence[Graph]) -> CoronaGraph:
    factors = tuple(factors)
    if len(factors) != g.m:
        raise GraphError(f"need exactly one factor per edge: expected {g.m}, got {len(factors)}")
    edges = list(g.edges)
    provenance: list[Provenance] = [Base(v) for v in range(g.n)]
    at = g.n
    for i, ((u, v), h) in enumerate(zip(g.edges, factors)):
        edges.extend((a + at, b + at) for a, b in h.edges)
        for j in range(h.n):
            s = at + j
            edges.append((u, s))
            edges.append((v, s))
            provenance.append(Satellite(i, j))
        at += h.n
    return CoronaGraph(
        graph=Graph(at, tuple(edges)),
        provenance=tuple(provenance),
        edge_order=g.edges,
        factor_sizes=tuple(h.n for h in factors),
        base=g,
        factors=factors,
    )


def edge_corona(g: Graph, h: Graph) -> CoronaGraph:
    return generalized_edge_corona(g, [h] * g.m)


@dataclass(frozen=True)
class EdgeBlock:
    """The subgraph ``e_i + H_i``; block vertices 0 and 1 are the endpoints of
    edge ``i``, the rest are its satellites in local order."""

    block: Graph
    mapping: tuple[int, ...]


def edge_block(cg: CoronaGraph, i: int) -> EdgeBlock:
    if not 0 <= i < len(cg.edge_order):
        raise IndexError(f"edge index {i} out of range for {len(cg.edge_order)} edges")
    u, v = cg.edge_order[i]
    block, mapping = induced_subgraph(cg.graph, [u, v, *cg.satellites(i)])
    return EdgeBlock(block, mapping)


def predicted_counts(n1: int, m1: int, n2: int, m2: int) -> tuple[int, int]:
    """Vertex and edge counts of ``G ◊ H`` from the orders and sizes alone."""
    return n1 + m1 * n2, m1 * (1 + m2 + 2 * n2)


def generalized_counts(g: Graph, factors: Sequence[Graph]) -> tuple[int, int]:
    return (
        g.n + sum(h.n for h in factors),
        g.m + sum(h.m + 2 * h.n for h in factors),
    )


def to_dot(cg: CoronaGraph) -> str:
    """Graphviz rendering for debugging; base vertices are boxes."""
    lines = ["graph corona {"]
    for v, tag in enumerate(cg.provenance):
        if isinstance(tag, Base):
            lines.append(f'  {v} [shape=box, style=filled, fillcolor=lightgray, label="v{tag.vertex}"];')
        else:
            lines.append(f'  {v} [shape=circle, label="e{tag.edge}.{tag.local}"];')
    lines.extend(f"  {u} -- {v};" for u, v in cg.graph.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
