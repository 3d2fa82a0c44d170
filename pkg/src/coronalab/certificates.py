"""Solver witnesses and a definition-level checker for them.

``check_certificate`` deliberately shares nothing with the search code: the
coloring check walks the BFS distance matrix of the original graph rather
than its power graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .graph import Graph, distance_matrix


class CertificateError(ValueError):
    """A certificate names a vertex or edge that ``g`` does not have."""


@dataclass(frozen=True)
class KColoring:
    """``colors[v]`` for every vertex; vertices within distance ``k`` must differ."""

    k: int
    colors: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(set(self.colors))


@dataclass(frozen=True)
class IndependentSet:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class VertexCover:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DominatingSet:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)


Certificate = Union[KColoring, IndependentSet, VertexCover, DominatingSet, Matching]


def _check_vertices(g: Graph, vertices) -> None:
    bad = sorted(v for v in vertices if not (isinstance(v, int) and 0 <= v < g.n))
    if bad:
        raise CertificateError(f"vertices {bad} not in graph with {g.n} vertices")


def check_certificate(g: Graph, cert: Certificate) -> bool:
    if isinstance(cert, KColoring):
        if cert.k < 1:
            raise CertificateError(f"distance parameter must be >= 1, got {cert.k}")
        if len(cert.colors) != g.n:
            raise CertificateError(f"coloring has {len(cert.colors)} entries for {g.n} vertices")
        dist = distance_matrix(g)
        for u, v in combinations(range(g.n), 2):
            if cert.colors[u] == cert.colors[v] and dist.within(u, v, cert.k):
                return False
        return True

    if isinstance(cert, Matching):
        for e in cert.edges:
            u, v = e
            if not g.has_edge(u, v):
                raise CertificateError(f"{e} is not an edge of the graph")
        endpoints = [x for e in cert.edges for x in e]
        return len(endpoints) == len(set(endpoints))

    if not isinstance(cert, (IndependentSet, VertexCover, DominatingSet)):
        raise TypeError(f"not a certificate: {cert!r}")
    _check_vertices(g, cert.vertices)
    chosen = cert.vertices

    if isinstance(cert, IndependentSet):
        return not any(u in chosen and v in chosen for u, v in g.edges)
    if isinstance(cert, VertexCover):
        return all(u in chosen or v in chosen for u, v in g.edges)
    # dominating: every vertex outside the set has a neighbour inside it
    for v in range(g.n):
        if v not in chosen and not any(w in chosen for w in g.adjacency[v]):
            return False
    return True


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, KColoring):
        return {"type": "k-coloring", "k": cert.k, "colors": list(cert.colors)}
    if isinstance(cert, Matching):
        return {"type": "matching", "edges": [list(e) for e in sorted(cert.edges)]}
    kind = {IndependentSet: "independent-set", VertexCover: "vertex-cover", DominatingSet: "dominating-set"}[type(cert)]
    return {"type": kind, "vertices": sorted(cert.vertices)}


def certificate_from_json(obj: dict) -> Certificate:
    kind = obj["type"]
    if kind == "k-coloring":
        return KColoring(int(obj["k"]), tuple(int(c) for c in obj["colors"]))
    if kind == "matching":
        return Matching(frozenset((int(u), int(v)) for u, v in obj["edges"]))
    cls = {"independent-set": IndependentSet, "vertex-cover": VertexCover, "dominating-set": DominatingSet}[kind]
    return cls(frozenset(int(v) for v in obj["vertices"]))
