"""Exact solvers for chi, chi_{<=k}, alpha, beta, gamma and nu on small graphs.

All searches run on integer bitmasks (bit ``v`` set means vertex ``v``), break
ties towards the lowest vertex index, and are therefore deterministic.

``nodes_explored`` counts every budget-checked step, including the steps of
the greedy heuristics that seed each search.  When the budget runs out the
solver returns ``TIMED_OUT`` together with a certified ``[lower, upper]``
bracket and the best witness found so far.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .certificates import Certificate, DominatingSet, IndependentSet, KColoring, Matching, VertexCover
from .graph import Graph, power_graph

EXACT = "exact"
TIMED_OUT = "timed-out"


@dataclass(frozen=True)
class Budget:
    max_search_nodes: int | None = 5_000_000
    max_wall_time: float | None = None  # seconds

    def __post_init__(self):
        if self.max_search_nodes is None and self.max_wall_time is None:
            raise ValueError("budget needs at least one finite limit")
        if self.max_search_nodes is not None and self.max_search_nodes < 1:
            raise ValueError("max_search_nodes must be positive")
        if self.max_wall_time is not None and self.max_wall_time <= 0:
            raise ValueError("max_wall_time must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: Certificate
    status: str
    lower: int
    upper: int
    nodes_explored: int

    @property
    def exact(self) -> bool:
        return self.status == EXACT


class OutOfBudget(Exception):
    pass


class _Counter:
    def __init__(self, budget: Budget):
        self.nodes = 0
        self.limit = budget.max_search_nodes
        self.deadline = None if budget.max_wall_time is None else time.perf_counter() + budget.max_wall_time

    def tick(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            self.nodes = self.limit
            raise OutOfBudget
        if self.deadline is not None and (self.nodes & 127) == 0 and time.perf_counter() > self.deadline:
            raise OutOfBudget


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _subgraph_bits(adj: Sequence[int], vertices: Sequence[int]) -> list[int]:
    """Adjacency bitmasks of the subgraph induced on ``vertices`` (relabelled)."""
    pos = {v: i for i, v in enumerate(vertices)}
    out = []
    for v in vertices:
        out.append(sum(1 << pos[w] for w in _bits(adj[v]) if w in pos))
    return out


# -- cliques -------------------------------------------------------------------


def _greedy_clique(adj: Sequence[int], start: int, within: int, counter: _Counter) -> list[int]:
    clique = [start]
    cand = adj[start] & within
    while cand:
        counter.tick()
        best, best_deg = -1, -1
        for w in _bits(cand):
            d = _popcount(adj[w] & cand)
            if d > best_deg:
                best, best_deg = w, d
        clique.append(best)
        cand &= adj[best]
    return clique


def _best_greedy_clique(adj: Sequence[int], counter: _Counter) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    order = sorted(range(n), key=lambda v: (-_popcount(adj[v]), v))
    best: list[int] = []
    for v in order:
        if _popcount(adj[v]) + 1 <= len(best):
            break
        c = _greedy_clique(adj, v, full, counter)
        if len(c) > len(best):
            best = c
    return best


# -- independence ----------------------------------------------------------------


def _clique_cover_bound(adj: Sequence[int], cand: int) -> int:
    """Size of a greedy partition of ``cand`` into cliques; bounds alpha from above."""
    count = 0
    while cand:
        low = cand & -cand
        clique = low
        rest = adj[low.bit_length() - 1] & cand
        while rest:
            b = rest & -rest
            clique |= b
            rest &= adj[b.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


def _max_independent_set(adj: Sequence[int], counter: _Counter, state: dict) -> None:
    """Branch and bound for a maximum independent set.

    ``state`` carries the incumbent (``best``) and the root upper bound so a
    caller can still read them after an ``OutOfBudget`` escape.
    """
    n = len(adj)
    closed = [adj[v] | (1 << v) for v in range(n)]

    # greedy seed: repeatedly take a minimum-degree vertex
    cand = (1 << n) - 1
    seed = []
    while cand:
        counter.tick()
        v = min(_bits(cand), key=lambda x: (_popcount(adj[x] & cand), x))
        seed.append(v)
        cand &= ~closed[v]
    if len(seed) > len(state["best"]):
        state["best"] = seed

    def search(cand: int, chosen: list[int]):
        counter.tick()
        chosen = list(chosen)
        # vertices of degree <= 1 belong to some maximum independent set
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                if _popcount(adj[v] & cand) <= 1:
                    chosen.append(v)
                    cand &= ~closed[v]
                    changed = True
                    break
        if not cand:
            if len(chosen) > len(state["best"]):
                state["best"] = chosen
            return
        if len(chosen) + _clique_cover_bound(adj, cand) <= len(state["best"]):
            return
        v = max(_bits(cand), key=lambda x: (_popcount(adj[x] & cand), -x))
        search(cand & ~closed[v], chosen + [v])
        search(cand & ~(1 << v), chosen)

    search((1 << n) - 1, [])


def _alpha(adj: Sequence[int], counter: _Counter) -> tuple[list[int], int, bool]:
    """Returns (best set, upper bound, exact?)."""
    n = len(adj)
    state = {"best": []}
    upper = _clique_cover_bound(adj, (1 << n) - 1)
    try:
        _max_independent_set(adj, counter, state)
    except OutOfBudget:
        return state["best"], upper, False
    return state["best"], len(state["best"]), True


def independence_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    counter = _Counter(budget)
    best, upper, exact = _alpha(g.adj_bits, counter)
    return ExactResult(
        value=len(best),
        witness=IndependentSet(frozenset(best)),
        status=EXACT if exact else TIMED_OUT,
        lower=len(best),
        upper=upper,
        nodes_explored=counter.nodes,
    )


def vertex_cover_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    """beta = n - alpha; the witness is the complement of a maximum independent set."""
    res = independence_number(g, budget)
    cover = frozenset(range(g.n)) - res.witness.vertices
    return ExactResult(
        value=len(cover),
        witness=VertexCover(cover),
        status=res.status,
        lower=g.n - res.upper,
        upper=g.n - res.lower,
        nodes_explored=res.nodes_explored,
    )


# -- coloring -------------------------------------------------------------------------


def _dsatur_greedy(adj: Sequence[int], counter: _Counter) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    sat = [0] * n
    uncolored = (1 << n) - 1
    while uncolored:
        counter.tick()
        v = max(_bits(uncolored), key=lambda x: (_popcount(sat[x]), _popcount(adj[x] & uncolored), -x))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colors[v] = c
        uncolored &= ~(1 << v)
        for w in _bits(adj[v]):
            sat[w] |= 1 << c
    return colors


def _dsatur_exact(adj: Sequence[int], lower: int, incumbent: list[int], clique: list[int], counter: _Counter, state: dict):
    """Branch and bound over DSATUR orderings.

    ``state['best']`` holds the best coloring found; the search stops as soon as
    it reaches ``lower`` colors.
    """
    n = len(adj)
    state["best"] = list(incumbent)
    state["k"] = len(set(incumbent)) if n else 0
    colors = [-1] * n
    count = [[0] * (n + 1) for _ in range(n)]
    sat = [0] * n

    def assign(v, c):
        colors[v] = c
        for w in _bits(adj[v]):
            count[w][c] += 1
            sat[w] |= 1 << c

    def unassign(v, c):
        colors[v] = -1
        for w in _bits(adj[v]):
            count[w][c] -= 1
            if count[w][c] == 0:
                sat[w] &= ~(1 << c)

    uncolored = (1 << n) - 1
    for c, v in enumerate(clique):
        assign(v, c)
        uncolored &= ~(1 << v)

    def search(uncolored: int, used: int) -> bool:
        counter.tick()
        if used >= state["k"]:
            return False
        if not uncolored:
            state["best"] = list(colors)
            state["k"] = used
            return used <= lower
        v = max(_bits(uncolored), key=lambda x: (_popcount(sat[x]), _popcount(adj[x] & uncolored), -x))
        rest = uncolored & ~(1 << v)
        for c in range(used):
            if not sat[v] >> c & 1:
                assign(v, c)
                done = search(rest, used)
                unassign(v, c)
                if done:
                    return True
                if used >= state["k"]:
                    return False
        if used + 1 < state["k"]:
            assign(v, used)
            done = search(rest, used + 1)
            unassign(v, used)
            if done:
                return True
        return False

    search(uncolored, len(clique))


def _core_order(adj: Sequence[int], k: int) -> tuple[list[int], list[int]]:
    """Peel vertices of degree < k; returns (core vertices, peeled in removal order)."""
    n = len(adj)
    alive = (1 << n) - 1
    peeled = []
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if _popcount(adj[v] & alive) < k:
                alive &= ~(1 << v)
                peeled.append(v)
                changed = True
    return list(_bits(alive)), peeled


def _color_component(adj: Sequence[int], hints: Sequence[Sequence[int]], counter: _Counter, bracket: list):
    """Optimal coloring of a graph with no universal vertex.

    ``bracket`` is updated in place as [lower, upper, coloring] so the caller
    can report it on timeout.
    """
    n = len(adj)
    if n == 0:
        return []
    clique = _best_greedy_clique(adj, counter)
    for h in hints:
        if len(h) > len(clique):
            clique = list(h)
    lower = max(len(clique), 1)
    bracket[0] = max(bracket[0], lower)

    coloring = _dsatur_greedy(adj, counter)
    upper = len(set(coloring))
    bracket[1], bracket[2] = upper, coloring
    if upper == lower:
        return coloring

    # every color class is independent, so n / alpha colors are needed
    _, alpha_upper, _ = _alpha(adj, counter)
    lower = max(lower, -(-n // alpha_upper))
    bracket[0] = max(bracket[0], lower)
    if upper == lower:
        return coloring

    # vertices of degree < lower can always be colored last, so only the
    # lower-core needs searching
    core, peeled = _core_order(adj, lower)
    if not core:
        return _extend(adj, core, [], peeled, lower)
    sub = _subgraph_bits(adj, core)
    pos = {v: i for i, v in enumerate(core)}
    sub_clique = [pos[v] for v in clique if v in pos]
    if len(sub_clique) < len(clique):
        sub_clique = _best_greedy_clique(sub, counter)
    incumbent = _normalize([coloring[v] for v in core])
    state: dict = {}
    try:
        _dsatur_exact(sub, lower, incumbent, sub_clique, counter, state)
    except OutOfBudget:
        if state and state["k"] < upper:
            bracket[1] = max(lower, state["k"])
            bracket[2] = _extend(adj, core, state["best"], peeled, bracket[1])
        raise
    return _extend(adj, core, state["best"], peeled, lower)


def _extend(adj: Sequence[int], core: list[int], core_colors: list[int], peeled: list[int], lower: int) -> list[int]:
    """Color peeled vertices in reverse peeling order on top of a core coloring."""
    k = max(lower, len(set(core_colors)))
    colors = [-1] * len(adj)
    for v, c in zip(core, core_colors):
        colors[v] = c
    for v in reversed(peeled):
        taken = {colors[w] for w in _bits(adj[v]) if colors[w] >= 0}
        colors[v] = next(c for c in range(k) if c not in taken)
    return colors


def _normalize(colors: list[int]) -> list[int]:
    remap: dict[int, int] = {}
    return [remap.setdefault(c, len(remap)) for c in colors]


def _chromatic(g: Graph, budget: Budget, hints: Sequence[Sequence[int]] = ()) -> tuple[list[int], int, int, bool, int]:
    counter = _Counter(budget)
    n = g.n
    adj = g.adj_bits
    universal = [v for v in range(n) if g.degrees[v] == n - 1]
    rest = [v for v in range(n) if g.degrees[v] != n - 1]
    sub = _subgraph_bits(adj, rest)
    pos = {v: i for i, v in enumerate(rest)}
    sub_hints = [[pos[v] for v in h if v in pos] for h in hints]
    u = len(universal)

    # bracket for the non-universal part: [lower, upper, coloring]
    bracket = [0, len(rest), list(range(len(rest)))]
    placed = 0
    exact = True
    try:
        for _ in universal:
            counter.tick()
            placed += 1
        bracket[0] = 1 if rest else 0
        sub_colors = _color_component(sub, sub_hints, counter, bracket)
    except OutOfBudget:
        exact = False
        sub_colors = bracket[2]
    colors = [0] * n
    for i, v in enumerate(universal):
        colors[v] = i
    for v, c in zip(rest, _normalize(list(sub_colors))):
        colors[v] = u + c
    used = len(set(colors))
    if exact:
        return colors, used, used, True, counter.nodes
    return colors, max(1, placed + bracket[0]) if n else 0, used, False, counter.nodes


def chromatic_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    colors, lower, upper, exact, nodes = _chromatic(g, budget)
    return ExactResult(
        value=upper,
        witness=KColoring(1, tuple(colors)),
        status=EXACT if exact else TIMED_OUT,
        lower=lower,
        upper=upper,
        nodes_explored=nodes,
    )


def k_distance_chromatic(g: Graph, k: int, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    """chi_{<=k}(g): the chromatic number of the k-th power of ``g``.

    For k >= 2 every closed neighbourhood of ``g`` is a clique of the power
    graph, which seeds the lower bound (in a corona product these are the
    endpoint-plus-satellite blocks).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    p = power_graph(g, k)
    hints = []
    if k >= 2 and g.n:
        v = max(range(g.n), key=lambda x: (g.degrees[x], -x))
        hints.append(sorted(g.adjacency[v] | {v}))
    colors, lower, upper, exact, nodes = _chromatic(p, budget, hints)
    return ExactResult(
        value=upper,
        witness=KColoring(k, tuple(colors)),
        status=EXACT if exact else TIMED_OUT,
        lower=lower,
        upper=upper,
        nodes_explored=nodes,
    )


# -- domination ----------------------------------------------------------------------


def _domination(adj: Sequence[int], counter: _Counter, state: dict) -> None:
    n = len(adj)
    closed = [adj[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1

    # greedy seed: take the vertex covering most undominated vertices
    undom = full
    seed = []
    while undom:
        counter.tick()
        v = max(range(n), key=lambda x: (_popcount(closed[x] & undom), -x))
        seed.append(v)
        undom &= ~closed[v]
    state["best"] = seed

    def lower_bound(undom: int, allowed: int) -> int:
        best_cov = 0
        for w in _bits(allowed):
            c = _popcount(closed[w] & undom)
            if c > best_cov:
                best_cov = c
        if best_cov == 0:
            return n + 1
        by_cover = -(-_popcount(undom) // best_cov)
        # undominated vertices with pairwise disjoint candidate sets need distinct dominators
        used = 0
        packing = 0
        for u in _bits(undom):
            cand = closed[u] & allowed
            if not cand:
                return n + 1
            if not cand & used:
                used |= cand
                packing += 1
        return max(by_cover, packing)

    def search(undom: int, allowed: int, chosen: list[int]):
        counter.tick()
        if not undom:
            if len(chosen) < len(state["best"]):
                state["best"] = list(chosen)
            return
        if len(chosen) + lower_bound(undom, allowed) >= len(state["best"]):
            return
        u = min(_bits(undom), key=lambda x: (_popcount(closed[x] & allowed), x))
        cands = list(_bits(closed[u] & allowed))
        cover = {w: closed[w] & undom for w in cands}
        keep = []
        for w in cands:
            dominated = any(
                x != w and cover[w] & ~cover[x] == 0 and (cover[w] != cover[x] or x < w) for x in cands
            )
            if not dominated:
                keep.append(w)
        keep.sort(key=lambda w: (-_popcount(cover[w]), w))
        for w in keep:
            search(undom & ~closed[w], allowed & ~(1 << w), chosen + [w])
            allowed &= ~(1 << w)

    state["root_lower"] = lower_bound(full, full) if n else 0
    search(full, full, [])


def domination_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    """gamma(g); isolated vertices must dominate themselves."""
    counter = _Counter(budget)
    state: dict = {"best": list(range(g.n)), "root_lower": 0}
    exact = True
    try:
        _domination(g.adj_bits, counter, state)
    except OutOfBudget:
        exact = False
    best = state["best"]
    return ExactResult(
        value=len(best),
        witness=DominatingSet(frozenset(best)),
        status=EXACT if exact else TIMED_OUT,
        lower=len(best) if exact else state["root_lower"],
        upper=len(best),
        nodes_explored=counter.nodes,
    )


# -- matching -------------------------------------------------------------------------


def _matching(adj: Sequence[int], counter: _Counter, state: dict) -> None:
    n = len(adj)

    def greedy(avail: int) -> list[tuple[int, int]]:
        out = []
        for u in _bits(avail):
            if not avail >> u & 1:
                continue
            nb = adj[u] & avail
            if nb:
                counter.tick()
                w = (nb & -nb).bit_length() - 1
                out.append((u, w))
                avail &= ~((1 << u) | (1 << w))
        return out

    def active(avail: int) -> int:
        return sum(1 << v for v in _bits(avail) if adj[v] & avail)

    def search(avail: int, chosen: list[tuple[int, int]]):
        counter.tick()
        avail = active(avail)
        ext = chosen + greedy(avail)
        if len(ext) > len(state["best"]):
            state["best"] = ext
        if len(chosen) + _popcount(avail) // 2 <= len(state["best"]):
            return
        u = (avail & -avail).bit_length() - 1
        for w in _bits(adj[u] & avail):
            search(avail & ~((1 << u) | (1 << w)), chosen + [(u, w)])
        search(avail & ~(1 << u), chosen)

    full = (1 << n) - 1
    state["root_upper"] = _popcount(active(full)) // 2
    search(full, [])


def matching_number(g: Graph, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    counter = _Counter(budget)
    state: dict = {"best": [], "root_upper": g.n // 2}
    exact = True
    try:
        _matching(g.adj_bits, counter, state)
    except OutOfBudget:
        exact = False
    best = state["best"]
    return ExactResult(
        value=len(best),
        witness=Matching(frozenset((min(e), max(e)) for e in best)),
        status=EXACT if exact else TIMED_OUT,
        lower=len(best),
        upper=len(best) if exact else state["root_upper"],
        nodes_explored=counter.nodes,
    )


INVARIANTS = ("chromatic", "independence", "vertex-cover", "domination", "matching")


def solve(g: Graph, invariant: str, budget: Budget = DEFAULT_BUDGET) -> ExactResult:
    """Dispatch by name; ``kdist:<k>`` selects the k-distance chromatic number."""
    if invariant.startswith("kdist:"):
        return k_distance_chromatic(g, int(invariant.split(":", 1)[1]), budget)
    table = {
        "chromatic": chromatic_number,
        "independence": independence_number,
        "vertex-cover": vertex_cover_number,
        "domination": domination_number,
        "matching": matching_number,
    }
    if invariant not in table:
        raise ValueError(f"unknown invariant {invariant!r}")
    return table[invariant](g, budget)
