"""Closed-form predictions for invariants of edge corona products, and
verifiers that check each prediction against an exact solve of the product.

``predict`` only ever solves the factor graphs; ``verify`` builds the product
and solves it.  A ``holds`` verdict is therefore an independent cross-check of
formula against search.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from . import solvers
from .certificates import Certificate, DominatingSet, certificate_to_json
from .corona import CoronaGraph, edge_block, generalized_edge_corona
from .edgelist import render_edge_list
from .graph import (
    Graph,
    bfs_distances,
    complete_bipartition,
    is_complete,
    is_connected,
    is_tree,
    metric_summary,
)
from .solvers import DEFAULT_BUDGET, Budget, ExactResult

CHARACTERIZATION_MAX_VERTICES = 16


class TheoremId(str, enum.Enum):
    CHROMATIC_OF_PRODUCT = "chromatic-of-product"
    TREE_TWO_DISTANCE = "tree-two-distance"
    TREE_TWO_DISTANCE_UNIFORM = "tree-two-distance-uniform"
    MATCHING_OF_COMPLETE = "matching-of-complete"
    KN_TWO_DISTANCE_UPPER = "kn-two-distance-upper"
    KN_TWO_DISTANCE_UNIFORM_EXACT = "kn-two-distance-uniform-exact"
    GENERAL_TWO_DISTANCE_BOUNDS = "general-two-distance-bounds"
    DIAMETER_OF_PRODUCT = "diameter-of-product"
    KN_THREE_DISTANCE = "kn-three-distance"
    KMN_THREE_DISTANCE = "kmn-three-distance"
    DOMINATING_SET_CHARACTERIZATION = "dominating-set-characterization"
    DOMINATION_EQUALS_VERTEX_COVER = "domination-equals-vertex-cover"
    INDEPENDENCE_SUM = "independence-sum"

    def __str__(self) -> str:
        return self.value


EQUAL = "equal"
UPPER_BOUND = "upper-bound"
LOWER_BOUND = "lower-bound"
INTERVAL = "interval"

HOLDS = "holds"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

HYPOTHESIS_VIOLATION = "hypothesis-violation"
SOLVER_BRACKET = "solver-bracket"


class HypothesisError(ValueError):
    """The instance does not satisfy the theorem's hypotheses."""


@dataclass(frozen=True)
class Instance:
    g: Graph
    factors: tuple[Graph, ...]
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.g.m:
            raise ValueError(f"instance needs {self.g.m} factors (one per edge), got {len(self.factors)}")

    @classmethod
    def uniform(cls, g: Graph, h: Graph, **params) -> Instance:
        return cls(g, (h,) * g.m, params)

    def to_json(self) -> dict:
        return {"graph": render_edge_list(self.g), "factors": [render_edge_list(h) for h in self.factors]}


@dataclass(frozen=True)
class Prediction:
    relation: str
    value: int | None = None
    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        if self.relation == INTERVAL and not (self.lo is not None and self.hi is not None and self.lo <= self.hi):
            raise ValueError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    def admits(self, observed: int) -> bool:
        if self.relation == EQUAL:
            return observed == self.value
        if self.relation == UPPER_BOUND:
            return observed <= self.value
        if self.relation == LOWER_BOUND:
            return observed >= self.value
        return self.lo <= observed <= self.hi

    def decide(self, lo: int, hi: int) -> bool | None:
        """Decide against an observation known only to lie in [lo, hi]."""
        if lo == hi:
            return self.admits(lo)
        if self.relation == EQUAL:
            return False if not lo <= self.value <= hi else None
        if self.relation == UPPER_BOUND:
            return True if hi <= self.value else (False if lo > self.value else None)
        if self.relation == LOWER_BOUND:
            return True if lo >= self.value else (False if hi < self.value else None)
        if self.lo <= lo and hi <= self.hi:
            return True
        if hi < self.lo or lo > self.hi:
            return False
        return None

    def to_json(self) -> dict:
        if self.relation == INTERVAL:
            return {"relation": self.relation, "lo": self.lo, "hi": self.hi}
        return {"relation": self.relation, "value": self.value}


@dataclass(frozen=True)
class Verdict:
    theorem: TheoremId
    status: str
    instance: Instance
    prediction: Prediction | None = None
    observed: int | None = None
    bracket: tuple[int, int] | None = None
    reason: str | None = None
    certificate: Certificate | None = None
    nodes_explored: int = 0
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem.value,
            "verdict": self.status,
            "prediction": None if self.prediction is None else self.prediction.to_json(),
            "observed": self.observed,
            "nodes_explored": self.nodes_explored,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.bracket is not None:
            out["bracket"] = list(self.bracket)
        if self.notes:
            out["notes"] = self.notes
        if self.status == REFUTED:
            out["witness"] = {
                "instance": self.instance.to_json(),
                "certificate": None if self.certificate is None else certificate_to_json(self.certificate),
            }
        return out


# -- hypotheses ---------------------------------------------------------------


def _need(cond: bool, what: str):
    if not cond:
        raise HypothesisError(what)


def _has_edge(inst: Instance):
    _need(inst.g.m >= 1, "G must have at least one edge")


def _connected_with_edge(inst: Instance):
    _need(is_connected(inst.g), "G must be connected")
    _has_edge(inst)


def _tree(inst: Instance):
    _need(is_tree(inst.g), "G must be a tree")


def _uniform(inst: Instance):
    _need(len(set(inst.factors)) <= 1, "all factors must be the same graph H")


def _complete_n2(inst: Instance):
    _need(inst.g.n >= 2 and is_complete(inst.g), "G must be a complete graph K_n with n >= 2")


def _nonempty_factors(inst: Instance):
    _need(all(h.n >= 1 for h in inst.factors), "every factor H_i must have at least one vertex")


def _complete_bipartite(inst: Instance):
    _need(complete_bipartition(inst.g) is not None, "G must be a complete bipartite graph K_{m,n} with m, n >= 1")


def _complete_any(inst: Instance):
    _need(inst.g.n >= 1 and is_complete(inst.g), "G must be a complete graph")


# -- prediction helpers -------------------------------------------------------------


def _factor_value(res: ExactResult) -> int:
    if not res.exact:
        raise _FactorTimeout(res)
    return res.value


class _FactorTimeout(Exception):
    def __init__(self, res: ExactResult):
        super().__init__("factor solve ran out of budget")
        self.result = res


def _vertex_loads(inst: Instance) -> list[int]:
    """deg_G(v) + sum of n_e over edges e at v: the degree of v in the product."""
    load = list(inst.g.degrees)
    for (u, v), h in zip(inst.g.edges, inst.factors):
        load[u] += h.n
        load[v] += h.n
    return load


def _max_factor_order(inst: Instance) -> int:
    return max((h.n for h in inst.factors), default=0)


def _tree_literal_reading(inst: Instance) -> int:
    """The value obtained by fixing the lowest-index vertex of maximum degree."""
    g = inst.g
    v = max(range(g.n), key=lambda x: (g.degrees[x], -x))
    total = sum(h.n for e, h in zip(g.edges, inst.factors) if v in e)
    return g.degrees[v] + 1 + total


def _p_chromatic(inst, budget):
    chi_g = _factor_value(solvers.chromatic_number(inst.g, budget))
    chi_h = max(_factor_value(solvers.chromatic_number(h, budget)) + 2 for h in inst.factors)
    return Prediction(EQUAL, max(chi_g, chi_h))


def _p_tree(inst, budget):
    return Prediction(EQUAL, max(_vertex_loads(inst)) + 1)


def _p_tree_uniform(inst, budget):
    n2 = inst.factors[0].n if inst.factors else 0
    return Prediction(EQUAL, (n2 + 1) * inst.g.max_degree + 1)


def _p_matching(inst, budget):
    n = inst.g.n
    return Prediction(EQUAL, n // 2 if n % 2 == 0 else (n - 1) // 2)


def _kn_two(n: int, t: int) -> int:
    return n * (t + 1) if n % 2 else n * (t + 1) - t


def _p_kn_upper(inst, budget):
    return Prediction(UPPER_BOUND, _kn_two(inst.g.n, _max_factor_order(inst)))


def _p_kn_uniform(inst, budget):
    return Prediction(EQUAL, _kn_two(inst.g.n, inst.factors[0].n))


def _p_general(inst, budget):
    lo = max(_vertex_loads(inst)) + 1
    hi = inst.g.n * (_max_factor_order(inst) + 1)
    return Prediction(INTERVAL, lo=lo, hi=hi)


def _p_diameter(inst, budget):
    return Prediction(UPPER_BOUND, metric_summary(inst.g).diameter + 2)


def _p_three_distance(inst, budget):
    return Prediction(EQUAL, inst.g.n + sum(h.n for h in inst.factors))


def _p_characterization(inst, budget):
    n = inst.g.n + sum(h.n for h in inst.factors)
    return Prediction(EQUAL, 2**n)


def _p_domination(inst, budget):
    return Prediction(EQUAL, _factor_value(solvers.vertex_cover_number(inst.g, budget)))


def _p_independence(inst, budget):
    return Prediction(EQUAL, sum(_factor_value(solvers.independence_number(h, budget)) for h in inst.factors))


# -- observation on the product --------------------------------------------------------


def _o_solver(fn: Callable[[Graph, Budget], ExactResult]):
    def observe(cg: CoronaGraph, inst: Instance, budget: Budget) -> ExactResult:
        return fn(cg.graph, budget)

    return observe


def _o_matching(cg, inst, budget):
    return solvers.matching_number(inst.g, budget)


def _o_diameter(cg, inst, budget):
    """Product diameter, one budget step per BFS source."""
    g = cg.graph
    counter = solvers._Counter(budget)
    ecc = 0
    try:
        for v in range(g.n):
            counter.tick()
            ecc = max(ecc, max(bfs_distances(g, v).values()))
    except solvers.OutOfBudget:
        # D <= 2 * ecc(v) for any single vertex v
        return ExactResult(ecc, None, solvers.TIMED_OUT, ecc, 2 * ecc, counter.nodes)
    return ExactResult(ecc, None, solvers.EXACT, ecc, ecc, counter.nodes)


def dominates(g: Graph, chosen: int) -> bool:
    """Bitmask version of the dominating-set definition."""
    for v in range(g.n):
        if not chosen >> v & 1 and not any(chosen >> w & 1 for w in g.adjacency[v]):
            return False
    return True


def _o_characterization(cg, inst, budget):
    """Count subsets D for which 'D dominates the product' agrees with 'D meets
    every block e_i + H_i in a dominating set of that block'."""
    blocks = [edge_block(cg, i) for i in range(cg.base.m)]
    n = cg.graph.n
    counter = solvers._Counter(budget)
    agree = checked = 0
    first_bad = None
    try:
        for mask in range(1 << n):
            counter.tick()
            checked += 1
            whole = dominates(cg.graph, mask)
            local = all(
                dominates(b.block, sum(1 << j for j, v in enumerate(b.mapping) if mask >> v & 1)) for b in blocks
            )
            if whole == local:
                agree += 1
            elif first_bad is None:
                first_bad = mask
    except solvers.OutOfBudget:
        disagree = checked - 1 - agree
        return ExactResult(agree, _subset_cert(first_bad), solvers.TIMED_OUT, agree, (1 << n) - disagree, counter.nodes)
    return ExactResult(agree, _subset_cert(first_bad), solvers.EXACT, agree, agree, counter.nodes)


def _subset_cert(mask):
    if mask is None:
        return None
    return DominatingSet(frozenset(v for v in range(mask.bit_length()) if mask >> v & 1))


@dataclass(frozen=True)
class TheoremSpec:
    id: TheoremId
    statement: str
    hypotheses: tuple[str, ...]
    relation: str
    anchor: str
    checks: tuple[Callable[[Instance], None], ...]
    predictor: Callable
    observer: Callable
    observed_invariant: str


_k2 = lambda k: (lambda g, b: solvers.k_distance_chromatic(g, k, b))  # noqa: E731

CATALOG: dict[TheoremId, TheoremSpec] = {
    spec.id: spec
    for spec in [
        TheoremSpec(
            TheoremId.CHROMATIC_OF_PRODUCT,
            "chi(G ◊ (H_1..H_m)) = max(chi(G), max_i chi(H_i) + 2)",
            ("G has at least one edge",),
            EQUAL,
            "chromatic number of the product",
            (_has_edge,),
            _p_chromatic,
            _o_solver(solvers.chromatic_number),
            "chromatic",
        ),
        TheoremSpec(
            TheoremId.TREE_TWO_DISTANCE,
            "chi_<=2(T ◊ (H_1..H_m)) = 1 + max_v (deg_T(v) + sum of n_e over edges e at v)",
            ("G is a tree",),
            EQUAL,
            "2-distance chromatic number of tree products",
            (_tree,),
            _p_tree,
            _o_solver(_k2(2)),
            "kdist:2",
        ),
        TheoremSpec(
            TheoremId.TREE_TWO_DISTANCE_UNIFORM,
            "chi_<=2(T ◊ H) = (|V(H)| + 1) * Delta(T) + 1",
            ("G is a tree", "all factors equal H"),
            EQUAL,
            "corollary for T ◊ H",
            (_tree, _uniform),
            _p_tree_uniform,
            _o_solver(_k2(2)),
            "kdist:2",
        ),
        TheoremSpec(
            TheoremId.MATCHING_OF_COMPLETE,
            "nu(K_n) = n/2 for even n, (n-1)/2 for odd n",
            ("G is complete",),
            EQUAL,
            "lemma on independent edges of K_n",
            (_complete_any,),
            _p_matching,
            _o_matching,
            "matching",
        ),
        TheoremSpec(
            TheoremId.KN_TWO_DISTANCE_UPPER,
            "chi_<=2(K_n ◊ (H_1..H_m)) <= n(t+1) for odd n, n(t+1) - t for even n, t = max |V(H_i)|",
            ("G is K_n with n >= 2", "every H_i has at least one vertex"),
            UPPER_BOUND,
            "upper bound for complete-graph products",
            (_complete_n2, _nonempty_factors),
            _p_kn_upper,
            _o_solver(_k2(2)),
            "kdist:2",
        ),
        TheoremSpec(
            TheoremId.KN_TWO_DISTANCE_UNIFORM_EXACT,
            "chi_<=2(K_n ◊ H) = n(|V(H)|+1) for odd n, n(|V(H)|+1) - |V(H)| for even n",
            ("G is K_n with n >= 2", "all factors equal H", "H has at least one vertex"),
            EQUAL,
            "corollary for K_n ◊ H",
            (_complete_n2, _uniform, _nonempty_factors),
            _p_kn_uniform,
            _o_solver(_k2(2)),
            "kdist:2",
        ),
        TheoremSpec(
            TheoremId.GENERAL_TWO_DISTANCE_BOUNDS,
            "Delta(product) + 1 <= chi_<=2(G ◊ (H_1..H_m)) <= n(t+1), t = max |V(H_i)|",
            ("G has at least one edge",),
            INTERVAL,
            "general 2-distance bounds",
            (_has_edge,),
            _p_general,
            _o_solver(_k2(2)),
            "kdist:2",
        ),
        TheoremSpec(
            TheoremId.DIAMETER_OF_PRODUCT,
            "D(G ◊ (H_1..H_m)) <= D(G) + 2",
            ("G is connected",),
            UPPER_BOUND,
            "diameter lemma",
            (lambda inst: _need(is_connected(inst.g), "G must be connected"),),
            _p_diameter,
            _o_diameter,
            "diameter",
        ),
        TheoremSpec(
            TheoremId.KN_THREE_DISTANCE,
            "chi_<=3(K_n ◊ (H_1..H_m)) = n + sum |V(H_i)|",
            ("G is complete",),
            EQUAL,
            "3-distance chromatic number of K_n products",
            (_complete_any,),
            _p_three_distance,
            _o_solver(_k2(3)),
            "kdist:3",
        ),
        TheoremSpec(
            TheoremId.KMN_THREE_DISTANCE,
            "chi_<=3(K_{a,b} ◊ (H_1..H_ab)) = a + b + sum |V(H_i)|",
            ("G is complete bipartite K_{a,b} with a, b >= 1",),
            EQUAL,
            "3-distance chromatic number of K_{m,n} products",
            (_complete_bipartite,),
            _p_three_distance,
            _o_solver(_k2(3)),
            "kdist:3",
        ),
        TheoremSpec(
            TheoremId.DOMINATING_SET_CHARACTERIZATION,
            "D dominates the product iff D ∩ V(e_i + H_i) dominates e_i + H_i for every edge e_i",
            (
                "G is connected with at least one edge",
                "every H_i has at least one vertex",
                f"product has at most {CHARACTERIZATION_MAX_VERTICES} vertices",
            ),
            EQUAL,
            "dominating-set characterization",
            (_connected_with_edge, _nonempty_factors, lambda inst: _need(
                inst.g.n + sum(h.n for h in inst.factors) <= CHARACTERIZATION_MAX_VERTICES,
                f"product must have at most {CHARACTERIZATION_MAX_VERTICES} vertices for subset enumeration",
            )),
            _p_characterization,
            _o_characterization,
            "agreeing-subsets",
        ),
        TheoremSpec(
            TheoremId.DOMINATION_EQUALS_VERTEX_COVER,
            "gamma(G ◊ (H_1..H_m)) = beta(G)",
            ("G is connected with at least one edge", "every H_i has at least one vertex"),
            EQUAL,
            "domination number equals vertex covering number",
            (_connected_with_edge, _nonempty_factors),
            _p_domination,
            _o_solver(solvers.domination_number),
            "domination",
        ),
        TheoremSpec(
            TheoremId.INDEPENDENCE_SUM,
            "alpha(G ◊ (H_1..H_m)) = sum alpha(H_i)",
            ("G is connected with at least one edge", "every H_i has at least one vertex"),
            EQUAL,
            "independence number of the product",
            (_connected_with_edge, _nonempty_factors),
            _p_independence,
            _o_solver(solvers.independence_number),
            "independence",
        ),
    ]
}


def theorem_id(name) -> TheoremId:
    if isinstance(name, TheoremId):
        return name
    try:
        return TheoremId(name)
    except ValueError:
        raise ValueError(f"unknown theorem {name!r}; known: {[t.value for t in TheoremId]}") from None


def list_theorems() -> list[dict]:
    return [
        {
            "id": spec.id.value,
            "statement": spec.statement,
            "hypotheses": list(spec.hypotheses),
            "relation": spec.relation,
            "anchor": spec.anchor,
        }
        for spec in CATALOG.values()
    ]


def check_hypotheses(tid, inst: Instance) -> None:
    for check in CATALOG[theorem_id(tid)].checks:
        check(inst)


def predict(tid, inst: Instance, budget: Budget = DEFAULT_BUDGET) -> Prediction:
    """Closed-form prediction; raises ``HypothesisError`` outside the hypotheses.

    Solves only G and the factors, never the product.  Raises
    ``RuntimeError`` if a factor solve exhausts ``budget``.
    """
    spec = CATALOG[theorem_id(tid)]
    check_hypotheses(spec.id, inst)
    try:
        return spec.predictor(inst, budget)
    except _FactorTimeout as exc:
        raise RuntimeError(f"factor solve for {spec.id} exceeded its budget") from exc


def verify(tid, inst: Instance, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    spec = CATALOG[theorem_id(tid)]
    try:
        check_hypotheses(spec.id, inst)
    except HypothesisError as exc:
        return Verdict(spec.id, INCONCLUSIVE, inst, reason=HYPOTHESIS_VIOLATION, notes={"hypothesis": str(exc)})
    try:
        prediction = spec.predictor(inst, budget)
    except _FactorTimeout as exc:
        res = exc.result
        return Verdict(
            spec.id, INCONCLUSIVE, inst, reason=SOLVER_BRACKET, bracket=(res.lower, res.upper),
            nodes_explored=res.nodes_explored, notes={"stage": "factor"},
        )

    notes = {}
    if spec.id is TheoremId.TREE_TWO_DISTANCE:
        literal = _tree_literal_reading(inst)
        if literal != prediction.value:
            notes["literal_reading"] = literal

    cg = generalized_edge_corona(inst.g, inst.factors)
    res = spec.observer(cg, inst, budget)

    if res.exact:
        ok = prediction.admits(res.value)
        return Verdict(
            spec.id, HOLDS if ok else REFUTED, inst, prediction, res.value,
            certificate=res.witness, nodes_explored=res.nodes_explored, notes=notes,
        )
    decided = prediction.decide(res.lower, res.upper)
    if decided is None:
        return Verdict(
            spec.id, INCONCLUSIVE, inst, prediction, None, bracket=(res.lower, res.upper),
            reason=SOLVER_BRACKET, nodes_explored=res.nodes_explored, notes=notes,
        )
    return Verdict(
        spec.id, HOLDS if decided else REFUTED, inst, prediction, None, bracket=(res.lower, res.upper),
        certificate=res.witness, nodes_explored=res.nodes_explored, notes=notes,
    )


def replay(record: dict, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Re-run the verifier on the instance embedded in a refutation record."""
    from .edgelist import parse_edge_list

    inst_json = record["witness"]["instance"]
    inst = Instance(parse_edge_list(inst_json["graph"]), tuple(parse_edge_list(f) for f in inst_json["factors"]))
    return verify(record["theorem"], inst, budget)
