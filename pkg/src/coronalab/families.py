"""Standard graph families and seeded random generators.

Edge emission order is part of each family's contract because the corona
construction assigns factor ``i`` to edge ``i``:

* ``Complete(n)``: lexicographic pairs ``(i, j)``, ``i < j``.
* ``CompleteBipartite(a, b)``: left side ``0..a-1``, right side ``a..a+b-1``;
  left vertex major, right vertex minor.
* ``Path(n)``: ``(0,1), (1,2), ...``; ``Cycle(n)`` adds ``(0, n-1)`` last.
* ``Star(k)``: centre ``0``, edges ``(0,1) .. (0,k)``.
* ``RandomTree`` / ``GnpConnected``: sorted edge list.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .graph import Graph, GraphError, build_graph, is_connected

GNP_MAX_ATTEMPTS = 1000


def derive_seed(*keys) -> int:
    """Deterministic 64-bit child seed from a tuple of keys.

    ``derive_seed(master, i)`` gives trial ``i`` a seed that does not depend on
    how many other trials ran or in what order.
    """
    text = "/".join(repr(k) for k in keys).encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")


def make_rng(*keys) -> random.Random:
    return random.Random(derive_seed(*keys))


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class CompleteBipartite:
    a: int
    b: int


@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class Star:
    k: int


@dataclass(frozen=True)
class Empty:
    n: int


@dataclass(frozen=True)
class RandomTree:
    n: int
    seed: int = 0


@dataclass(frozen=True)
class GnpConnected:
    n: int
    p: float
    seed: int = 0


FamilySpec = Union[Complete, CompleteBipartite, Path, Cycle, Star, Empty, RandomTree, GnpConnected]


def _require(cond: bool, msg: str):
    if not cond:
        raise GraphError(msg)


def complete(n: int) -> Graph:
    _require(n >= 1, f"Complete needs n >= 1, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    _require(a >= 1 and b >= 1, f"CompleteBipartite needs both sides >= 1, got ({a}, {b})")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def path(n: int) -> Graph:
    _require(n >= 1, f"Path needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _require(n >= 3, f"Cycle needs n >= 3, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),))


def star(k: int) -> Graph:
    _require(k >= 1, f"Star needs k >= 1, got {k}")
    return Graph(k + 1, tuple((0, i) for i in range(1, k + 1)))


def empty(n: int) -> Graph:
    _require(n >= 0, f"Empty needs n >= 0, got {n}")
    return Graph(n)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    _require(n >= 1, f"RandomTree needs n >= 1, got {n}")
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return build_graph(n, sorted((min(e), max(e)) for e in edges))


def random_gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


def gnp_connected(n: int, p: float, rng: random.Random) -> Graph:
    """G(n, p) conditioned on connectivity by rejection (bounded retries)."""
    _require(n >= 1, f"GnpConnected needs n >= 1, got {n}")
    _require(0 < p <= 1, f"GnpConnected needs 0 < p <= 1, got {p}")
    for _ in range(GNP_MAX_ATTEMPTS):
        g = random_gnp(n, p, rng)
        if is_connected(g):
            return g
    raise GraphError(f"no connected G({n}, {p}) sample in {GNP_MAX_ATTEMPTS} attempts")


def standard_family(spec: FamilySpec) -> Graph:
    if isinstance(spec, Complete):
        return complete(spec.n)
    if isinstance(spec, CompleteBipartite):
        return complete_bipartite(spec.a, spec.b)
    if isinstance(spec, Path):
        return path(spec.n)
    if isinstance(spec, Cycle):
        return cycle(spec.n)
    if isinstance(spec, Star):
        return star(spec.k)
    if isinstance(spec, Empty):
        return empty(spec.n)
    if isinstance(spec, RandomTree):
        return random_tree(spec.n, make_rng("random-tree", spec.n, spec.seed))
    if isinstance(spec, GnpConnected):
        return gnp_connected(spec.n, spec.p, make_rng("gnp", spec.n, spec.p, spec.seed))
    raise TypeError(f"unknown family spec {spec!r}")


_FAMILY_NAMES = {
    "complete": (Complete, (int,)),
    "complete-bipartite": (CompleteBipartite, (int, int)),
    "path": (Path, (int,)),
    "cycle": (Cycle, (int,)),
    "star": (Star, (int,)),
    "empty": (Empty, (int,)),
    "random-tree": (RandomTree, (int,)),
    "gnp": (GnpConnected, (int, float)),
}


def parse_family(text: str, seed: int = 0) -> FamilySpec:
    """Parse ``name:arg[,arg]``, e.g. ``complete-bipartite:2,3`` or ``gnp:6,0.5``."""
    name, _, args = text.partition(":")
    if name not in _FAMILY_NAMES:
        raise GraphError(f"unknown family {name!r}; expected one of {sorted(_FAMILY_NAMES)}")
    cls, types = _FAMILY_NAMES[name]
    parts = [a for a in args.split(",") if a] if args else []
    if len(parts) != len(types):
        raise GraphError(f"family {name!r} takes {len(types)} argument(s), got {len(parts)}")
    try:
        values = [t(p) for t, p in zip(types, parts)]
    except ValueError as exc:
        raise GraphError(f"bad argument in family spec {text!r}: {exc}") from None
    if cls in (RandomTree, GnpConnected):
        values.append(seed)
    return cls(*values)
