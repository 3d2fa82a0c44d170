import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from coronalab import theorems
from coronalab.corona import generalized_edge_corona
from coronalab.families import complete, complete_bipartite, cycle, empty, path, star
from coronalab.graph import Graph
from coronalab.solvers import Budget
from coronalab.theorems import (
    EQUAL,
    HOLDS,
    HYPOTHESIS_VIOLATION,
    INCONCLUSIVE,
    INTERVAL,
    REFUTED,
    SOLVER_BRACKET,
    UPPER_BOUND,
    HypothesisError,
    Instance,
    Prediction,
    TheoremId,
    list_theorems,
    predict,
    replay,
    verify,
)

T = TheoremId


def test_predict_examples():
    assert predict(T.CHROMATIC_OF_PRODUCT, Instance.uniform(cycle(5), complete(3))) == Prediction(EQUAL, 5)
    assert predict(T.TREE_TWO_DISTANCE_UNIFORM, Instance.uniform(star(4), complete(2))) == Prediction(EQUAL, 13)
    assert predict(T.KN_TWO_DISTANCE_UNIFORM_EXACT, Instance.uniform(complete(4), complete(2))) == Prediction(EQUAL, 10)


def test_predict_other_entries():
    assert predict(T.MATCHING_OF_COMPLETE, Instance.uniform(complete(5), Graph(0))).value == 2
    assert predict(T.KN_TWO_DISTANCE_UPPER, Instance(complete(3), (complete(1), path(3), empty(2)))) == Prediction(UPPER_BOUND, 12)
    p = predict(T.GENERAL_TWO_DISTANCE_BOUNDS, Instance.uniform(path(3), complete(2)))
    assert p == Prediction(INTERVAL, lo=2 + 4 + 1, hi=3 * 3)
    assert predict(T.DIAMETER_OF_PRODUCT, Instance.uniform(path(4), complete(1))).value == 5
    assert predict(T.KMN_THREE_DISTANCE, Instance.uniform(complete_bipartite(2, 3), complete(2))).value == 17
    assert predict(T.DOMINATION_EQUALS_VERTEX_COVER, Instance.uniform(cycle(5), complete(1))).value == 3
    assert predict(T.INDEPENDENCE_SUM, Instance(path(3), (empty(3), complete(2)))).value == 4


def test_predict_rejects_hypothesis_violations():
    with pytest.raises(HypothesisError, match="tree"):
        predict(T.TREE_TWO_DISTANCE, Instance.uniform(cycle(4), complete(1)))
    with pytest.raises(HypothesisError, match="complete"):
        predict(T.KN_THREE_DISTANCE, Instance.uniform(path(3), complete(1)))
    with pytest.raises(HypothesisError, match="at least one vertex"):
        predict(T.KN_TWO_DISTANCE_UPPER, Instance(complete(3), (complete(1), Graph(0), complete(1))))
    with pytest.raises(HypothesisError, match="same graph"):
        predict(T.TREE_TWO_DISTANCE_UNIFORM, Instance(path(3), (complete(1), complete(2))))


def test_predict_does_not_build_the_product(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("product constructed during predict")

    monkeypatch.setattr(theorems, "generalized_edge_corona", boom)
    inst = Instance.uniform(complete(4), complete(2))
    for tid in T:
        try:
            predict(tid, inst)
        except HypothesisError:
            pass


def test_verify_examples():
    v = verify(T.DOMINATION_EQUALS_VERTEX_COVER, Instance.uniform(cycle(4), complete(1)))
    assert (v.status, v.observed, v.prediction.value) == (HOLDS, 2, 2)
    v = verify(T.INDEPENDENCE_SUM, Instance.uniform(cycle(3), complete(2)))
    assert (v.status, v.observed, v.prediction.value) == (HOLDS, 3, 3)
    v = verify(T.KN_THREE_DISTANCE, Instance.uniform(complete(3), complete(1)))
    assert (v.status, v.observed, v.prediction.value) == (HOLDS, 6, 6)


def test_tree_example_k13():
    inst = Instance.uniform(star(3), complete(1))
    assert predict(T.TREE_TWO_DISTANCE, inst).value == 7
    cg = generalized_edge_corona(inst.g, inst.factors)
    assert oracles.k_distance_chromatic(cg.graph.n, cg.graph.edges, 2) == 7
    assert verify(T.TREE_TWO_DISTANCE, inst).status == HOLDS


def test_tree_literal_reading_is_logged():
    # two vertices of degree 2; the heavier factors sit on the later one
    g = path(4)
    inst = Instance(g, (complete(1), complete(1), complete(3)))
    v = verify(T.TREE_TWO_DISTANCE, inst)
    assert v.prediction.value == 2 + 1 + 1 + 3
    assert v.notes["literal_reading"] == 2 + 1 + 1 + 1
    assert v.status == HOLDS


def test_hypothesis_violation_is_inconclusive():
    v = verify(T.KMN_THREE_DISTANCE, Instance.uniform(cycle(5), complete(1)))
    assert v.status == INCONCLUSIVE and v.reason == HYPOTHESIS_VIOLATION
    assert "bipartite" in v.notes["hypothesis"]


def _tiny_instance(tid):
    if tid in (T.TREE_TWO_DISTANCE, T.TREE_TWO_DISTANCE_UNIFORM):
        return Instance.uniform(star(3), complete(2))
    if tid is T.MATCHING_OF_COMPLETE:
        return Instance.uniform(complete(6), Graph(0))
    if tid in (T.KN_TWO_DISTANCE_UPPER, T.KN_TWO_DISTANCE_UNIFORM_EXACT, T.KN_THREE_DISTANCE):
        return Instance.uniform(complete(4), complete(2))
    if tid is T.KMN_THREE_DISTANCE:
        return Instance.uniform(complete_bipartite(2, 2), complete(1))
    if tid is T.DOMINATING_SET_CHARACTERIZATION:
        return Instance.uniform(path(3), complete(2))
    if tid is T.DIAMETER_OF_PRODUCT:
        return Instance.uniform(path(4), complete(1))
    return Instance.uniform(cycle(5), complete(2))


@pytest.mark.parametrize("tid", list(T))
def test_single_node_budget_is_inconclusive(tid):
    inst = _tiny_instance(tid)
    assert verify(tid, inst).status == HOLDS
    v = verify(tid, inst, Budget(max_search_nodes=1))
    assert v.status == INCONCLUSIVE and v.reason == SOLVER_BRACKET
    assert v.bracket[0] <= v.bracket[1]


def test_list_theorems():
    entries = list_theorems()
    assert len(entries) == 13
    by_id = {e["id"]: e for e in entries}
    assert by_id["diameter-of-product"]["relation"] == UPPER_BOUND
    assert by_id["general-two-distance-bounds"]["relation"] == INTERVAL
    assert [e["id"] for e in entries] == [t.value for t in T]
    json.dumps(entries)


def test_prediction_relations():
    assert Prediction(UPPER_BOUND, 5).admits(5) and not Prediction(UPPER_BOUND, 5).admits(6)
    assert Prediction(INTERVAL, lo=2, hi=4).decide(2, 3) is True
    assert Prediction(INTERVAL, lo=2, hi=4).decide(3, 6) is None
    assert Prediction(EQUAL, 3).decide(4, 9) is False
    assert Prediction(EQUAL, 3).decide(1, 9) is None
    with pytest.raises(ValueError):
        Prediction(INTERVAL, lo=5, hi=4)


def test_empty_factors_break_domination_statements():
    # K_4 with only two nonempty factors: gamma = 1 but beta(K_4) = 3,
    # which is why those verifiers require |V(H_i)| >= 1
    factors = (Graph(0), Graph(0), Graph(0), path(3), Graph(0), complete(1))
    inst = Instance(complete(4), factors)
    cg = generalized_edge_corona(inst.g, inst.factors)
    assert oracles.domination(cg.graph.n, cg.graph.edges) == 1
    assert oracles.vertex_cover(4, complete(4).edges) == 3
    v = verify(T.DOMINATION_EQUALS_VERTEX_COVER, inst)
    assert v.status == INCONCLUSIVE and v.reason == HYPOTHESIS_VIOLATION


def test_refutation_record_replays(monkeypatch):
    # force a wrong predictor so a refutation exists to replay
    spec = theorems.CATALOG[T.INDEPENDENCE_SUM]
    bad = spec.__class__(**{**spec.__dict__, "predictor": lambda inst, b: Prediction(EQUAL, 99)})
    monkeypatch.setitem(theorems.CATALOG, T.INDEPENDENCE_SUM, bad)
    v = verify(T.INDEPENDENCE_SUM, Instance.uniform(cycle(3), complete(2)))
    assert v.status == REFUTED
    record = json.loads(json.dumps(v.to_json()))
    assert record["witness"]["certificate"]["type"] == "independent-set"
    again = replay(record)
    assert again.status == REFUTED and again.observed == v.observed


def test_characterization_counts_all_subsets():
    inst = Instance.uniform(path(3), complete(1))
    v = verify(T.DOMINATING_SET_CHARACTERIZATION, inst)
    assert v.status == HOLDS and v.observed == 2**5


def test_characterization_size_cap():
    # 4 + 6 * 3 = 22 vertices, past the 16-vertex enumeration cap
    inst = Instance.uniform(complete(4), complete(3))
    v = verify(T.DOMINATING_SET_CHARACTERIZATION, inst)
    assert v.reason == HYPOTHESIS_VIOLATION


def test_kmn_k11_agrees_with_kn_at_two():
    inst = Instance.uniform(complete_bipartite(1, 1), complete(2))
    a = verify(T.KMN_THREE_DISTANCE, inst)
    b = verify(T.KN_THREE_DISTANCE, inst)
    assert a.prediction == b.prediction and a.observed == b.observed == 4


@given(st.integers(2, 7), st.integers(1, 5))
def test_kn_uniform_prediction_inside_general_interval(n, n2):
    inst = Instance.uniform(complete(n), empty(n2))
    exact = predict(T.KN_TWO_DISTANCE_UNIFORM_EXACT, inst).value
    interval = predict(T.GENERAL_TWO_DISTANCE_BOUNDS, inst)
    assert interval.lo <= exact <= interval.hi


@given(st.integers(2, 9), st.integers(0, 2**32), st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_tree_prediction_is_interval_lower_end(n, seed, sizes):
    from coronalab.families import RandomTree, standard_family

    t = standard_family(RandomTree(n, seed))
    inst = Instance(t, tuple(empty(sizes[i % len(sizes)]) for i in range(t.m)))
    assert predict(T.TREE_TWO_DISTANCE, inst).value == predict(T.GENERAL_TWO_DISTANCE_BOUNDS, inst).lo
