"""Immutable simple graphs, BFS distances, eccentricity metrics and power graphs.

Vertices are the integers ``0 .. n-1``.  A graph keeps its edges in
first-seen order; that order is what the corona construction uses to pair
edge ``i`` with factor ``H_i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input (self-loops, out-of-range endpoints)."""


class _Unreachable:
    """Distance marker for vertex pairs in different components.

    Deliberately not an int: comparing it with a number raises ``TypeError``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        seen = set()
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {e} is not a normalized pair in range [0, {self.n})")
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_bits(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks, used by the search code."""
        bits = [0] * self.n
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return tuple(bits)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def normalize_edge(u: int, v: int, n: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop ({u}, {v})")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a graph, normalizing each pair and dropping repeats.

    Edge order is first-seen order of the input.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    edges: dict[Edge, None] = {}
    for pair in edge_list:
        u, v = pair
        edges.setdefault(normalize_edge(int(u), int(v), n), None)
    return Graph(n, tuple(edges))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``vertices``, relabelled in the given order.

    Returns the subgraph and the tuple mapping new ids back to ids of ``g``.
    Edges keep their relative order from ``g``.
    """
    index = {v: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise GraphError("induced_subgraph needs distinct vertices")
    edges = []
    for u, v in g.edges:
        if u in index and v in index:
            a, b = index[u], index[v]
            edges.append((a, b) if a < b else (b, a))
    return Graph(len(vertices), tuple(edges)), tuple(vertices)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply the vertex permutation ``v -> perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabel needs a permutation of range(n)")
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, tuple(edges))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return len(bfs_distances(g, 0)) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def complete_bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Return the two sides if ``g`` is a complete bipartite graph K_{a,b}
    with a, b >= 1, else ``None``."""
    if g.n < 2 or not is_connected(g):
        return None
    side = [-1] * g.n
    side[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if side[w] < 0:
                side[w] = 1 - side[u]
                queue.append(w)
            elif side[w] == side[u]:
                return None
    left = tuple(v for v in range(g.n) if side[v] == 0)
    right = tuple(v for v in range(g.n) if side[v] == 1)
    if g.m != len(left) * len(right):
        return None
    return left, right


# -- distances ---------------------------------------------------------------


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex it can reach."""
    dist = {source: 0}
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in sorted(adj[u]):
            if w not in dist:
                dist[w] = du
                queue.append(w)
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    rows: tuple[tuple, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, uv: tuple[int, int]):
        u, v = uv
        return self.rows[u][v]

    def reachable(self, u: int, v: int) -> bool:
        return self.rows[u][v] is not UNREACHABLE

    def within(self, u: int, v: int, k: int) -> bool:
        """True when ``1 <= d(u, v) <= k``."""
        d = self.rows[u][v]
        return d is not UNREACHABLE and 1 <= d <= k


def distance_matrix(g: Graph) -> DistanceMatrix:
    rows = []
    for s in range(g.n):
        dist = bfs_distances(g, s)
        rows.append(tuple(dist.get(v, UNREACHABLE) for v in range(g.n)))
    return DistanceMatrix(tuple(rows))


@dataclass(frozen=True)
class MetricSummary:
    eccentricity: tuple
    diameter: object
    radius: object
    connected: bool


def metric_summary(g: Graph) -> MetricSummary:
    """Eccentricities, diameter and radius.

    On a disconnected (or vertex-free) graph every entry is ``UNREACHABLE``.
    """
    if not is_connected(g):
        return MetricSummary((UNREACHABLE,) * g.n, UNREACHABLE, UNREACHABLE, False)
    ecc = tuple(max(bfs_distances(g, v).values()) for v in range(g.n))
    return MetricSummary(ecc, max(ecc), min(ecc), True)


def power_graph(g: Graph, k: int) -> Graph:
    """The k-th power: same vertices, ``u ~ v`` iff ``1 <= d_G(u, v) <= k``.

    Proper colorings of the result are exactly the k-distance colorings of ``g``.
    """
    if k < 1:
        raise GraphError(f"power must be >= 1, got {k}")
    if k == 1:
        return g
    edges = []
    for u in range(g.n):
        for v, d in bfs_distances(g, u).items():
            if u < v and d <= k:
                edges.append((u, v))
    edges.sort()
    return Graph(g.n, tuple(edges))
