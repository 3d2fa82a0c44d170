"""Seeded fuzz campaigns over the theorem catalog.

Each (trial, theorem) pair gets its own generator seed derived from the
master seed, so records do not depend on the theorem filter, on scheduling,
or on how many worker threads run them.
"""

from __future__ import annotations

import datetime
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from . import __version__
from .families import complete, complete_bipartite, gnp_connected, make_rng, random_gnp, random_tree
from .graph import Graph
from .solvers import Budget
from .theorems import (
    CHARACTERIZATION_MAX_VERTICES,
    HOLDS,
    INCONCLUSIVE,
    REFUTED,
    Instance,
    TheoremId,
    verify,
)

T = TheoremId

# theorems whose hypotheses need every factor to have a vertex
_NONEMPTY = {
    T.KN_TWO_DISTANCE_UPPER,
    T.KN_TWO_DISTANCE_UNIFORM_EXACT,
    T.DOMINATING_SET_CHARACTERIZATION,
    T.DOMINATION_EQUALS_VERTEX_COVER,
    T.INDEPENDENCE_SUM,
}
_UNIFORM = {T.TREE_TWO_DISTANCE_UNIFORM, T.KN_TWO_DISTANCE_UNIFORM_EXACT}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FuzzConfig:
    master_seed: int = 0
    trials: int = 10
    theorems: tuple[TheoremId, ...] = tuple(TheoremId)
    max_base_vertices: int = 6
    max_factor_vertices: int = 3
    max_product_vertices: int = 40
    budget_nodes: int | None = 2_000_000
    budget_ms: int | None = None
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "theorems", tuple(TheoremId(t) for t in self.theorems))
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not self.theorems:
            raise ConfigError("theorem filter is empty")
        for name in ("max_base_vertices", "max_factor_vertices", "max_product_vertices", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must fit in 64 bits")

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_nodes, None if self.budget_ms is None else self.budget_ms / 1000)

    def to_json(self) -> dict:
        out = asdict(self)
        out["theorems"] = [t.value for t in self.theorems]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> FuzzConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        obj = dict(obj)
        if "theorems" in obj:
            obj["theorems"] = tuple(obj["theorems"])
        try:
            return cls(**obj)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def _min_product(tid: TheoremId) -> int:
    # smallest admissible instance is K_2 with one factor
    return 2 + (1 if tid in _NONEMPTY else 0)


def check_caps(cfg: FuzzConfig) -> None:
    """Reject configs under which some selected theorem has no valid instance."""
    if cfg.max_base_vertices < 2:
        raise ConfigError("max_base_vertices must be >= 2: every theorem needs a base graph with an edge")
    for tid in cfg.theorems:
        need = _min_product(tid)
        if cfg.max_product_vertices < need:
            raise ConfigError(f"{tid}: max_product_vertices={cfg.max_product_vertices} admits no instance (need >= {need})")


def _factor(rng: random.Random, lo: int, hi: int) -> Graph:
    return random_gnp(rng.randint(lo, hi), rng.choice((0.3, 0.5, 0.8)), rng)


def draw_instance(tid: TheoremId, rng: random.Random, max_base: int, max_factor: int) -> Instance:
    """An instance satisfying ``tid``'s structural hypotheses."""
    lo = 1 if tid in _NONEMPTY else 0
    if tid in (T.TREE_TWO_DISTANCE, T.TREE_TWO_DISTANCE_UNIFORM):
        g = random_tree(rng.randint(2, max_base), rng)
    elif tid in (T.MATCHING_OF_COMPLETE, T.KN_TWO_DISTANCE_UPPER, T.KN_TWO_DISTANCE_UNIFORM_EXACT, T.KN_THREE_DISTANCE):
        g = complete(rng.randint(2, max_base))
    elif tid is T.KMN_THREE_DISTANCE:
        a = rng.randint(1, max_base - 1)
        g = complete_bipartite(a, rng.randint(1, max_base - a))
    elif tid is T.DOMINATING_SET_CHARACTERIZATION:
        g = gnp_connected(rng.randint(2, min(max_base, 4)), rng.choice((0.4, 0.7)), rng)
        max_factor = min(max_factor, 2)
    else:
        g = gnp_connected(rng.randint(2, max_base), rng.choice((0.3, 0.5, 0.7, 0.9)), rng)

    if tid is T.MATCHING_OF_COMPLETE:
        return Instance.uniform(g, Graph(0))
    if tid in _UNIFORM:
        return Instance.uniform(g, _factor(rng, lo, max_factor))
    return Instance(g, tuple(_factor(rng, lo, max_factor) for _ in range(g.m)))


def _product_size(inst: Instance) -> int:
    return inst.g.n + sum(h.n for h in inst.factors)


def run_trial(cfg: FuzzConfig, trial: int, tid: TheoremId) -> dict:
    rng = make_rng(cfg.master_seed, trial, tid.value)
    inst = draw_instance(tid, rng, cfg.max_base_vertices, cfg.max_factor_vertices)
    cap = cfg.max_product_vertices
    if tid is T.DOMINATING_SET_CHARACTERIZATION:
        cap = min(cap, CHARACTERIZATION_MAX_VERTICES)
    record = {"trial": trial, "theorem": tid.value, "instance": inst.to_json()}
    if _product_size(inst) > cap:
        record.update(
            prediction=None, observed=None, verdict=INCONCLUSIVE, reason="size-cap",
            nodes_explored=0, elapsed_ms=0 if cfg.timing else None,
        )
        return record
    start = time.perf_counter()
    verdict = verify(tid, inst, cfg.budget)
    elapsed = round((time.perf_counter() - start) * 1000)
    out = verdict.to_json()
    out.pop("theorem")
    record.update(out)
    record["elapsed_ms"] = elapsed if cfg.timing else None
    return record


@dataclass
class Report:
    header: dict
    records: list[dict] = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    @property
    def refuted(self) -> int:
        return self.footer.get(REFUTED, 0)

    def lines(self):
        yield dumps({"type": "header", **self.header})
        for r in self.records:
            yield dumps({"type": "record", **r})
        yield dumps({"type": "footer", **self.footer})

    def records_text(self) -> str:
        return "".join(dumps({"type": "record", **r}) + "\n" for r in self.records)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def run_fuzz_campaign(cfg: FuzzConfig) -> Report:
    check_caps(cfg)
    header = {
        "tool": "coronalab",
        "version": __version__,
        "config": cfg.to_json(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    tasks = [(i, tid) for i in range(cfg.trials) for tid in cfg.theorems]
    if cfg.workers == 1:
        records = [run_trial(cfg, i, tid) for i, tid in tasks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(lambda task: run_trial(cfg, *task), tasks))
    footer = {
        HOLDS: sum(r["verdict"] == HOLDS for r in records),
        REFUTED: sum(r["verdict"] == REFUTED for r in records),
        INCONCLUSIVE: sum(r["verdict"] == INCONCLUSIVE for r in records),
        "records": len(records),
    }
    return Report(header, records, footer)
