import random

import pytest
from hypothesis import given, settings, strategies as st

from surfk6.fixtures import torus_grid
from surfk6.graphs import Graph, apex_graph, petersen, random_graph, triangulated_grid
from surfk6.minors import (
    MinorModel,
    OracleSizeError,
    PropagationError,
    SearchBudgetExceeded,
    SearchStats,
    _with_witnesses,
    brute_force_minor_oracle,
    has_minor,
    propagate_model_through_delta_wye,
    verify_minor_model,
)
from surfk6.surgery import Move, delta_to_wye

K4, K5, K6 = (Graph.complete(t) for t in (4, 5, 6))


def _petersen_k5_model():
    # outer 5-cycle 0..4, spokes i -- i+5: contract the spokes
    p = petersen()
    spokes = [(i, j) for i, j in p.edges if abs(i - j) == 5]
    branch = {x: frozenset(e) for x, e in enumerate(sorted(spokes))}
    owner = {v: x for x, s in branch.items() for v in s}
    witness = {}
    for u, v in p.edges:
        a, b = owner[u], owner[v]
        if a != b:
            witness[(min(a, b), max(a, b))] = (u, v) if a < b else (v, u)
    return p, MinorModel(branch, witness)


def test_petersen_matching_model():
    p, m = _petersen_k5_model()
    assert len(m.branch) == 5 and len(m.witness) == 10
    assert verify_minor_model(p, K5, m)


@pytest.mark.parametrize("damage, reason", [
    (lambda b: {**b, 0: frozenset()}, "empty branch set"),
    (lambda b: {**b, 1: b[1] | b[0]}, "overlap"),
])
def test_verifier_reasons(damage, reason):
    p, m = _petersen_k5_model()
    bad = MinorModel(damage(dict(m.branch)), m.witness)
    verdict = verify_minor_model(p, K5, bad)
    assert not verdict and verdict.reason == reason


def test_verifier_disconnected():
    p, m = _petersen_k5_model()
    branch = {x: s for x, s in m.branch.items() if x < 4}
    branch[0] = branch[0] | {9}
    wit = {k: e for k, e in m.witness.items() if k[1] < 4}
    assert verify_minor_model(p, K4, MinorModel(branch, wit)).reason == "disconnected branch set"


def test_verifier_witness_checks():
    p, m = _petersen_k5_model()
    wit = dict(m.witness)
    wit.pop((0, 1))
    assert verify_minor_model(p, K5, MinorModel(m.branch, wit)).reason == "missing witness"
    wit[(0, 1)] = (0, 2)
    assert verify_minor_model(p, K5, MinorModel(m.branch, wit)).reason == "witness not an edge"


def test_model_format_parse():
    p, m = _petersen_k5_model()
    assert MinorModel.parse(m.format()) == m
    with pytest.raises(ValueError):
        MinorModel.parse("bogus 1: 2")


def test_basic_answers(backend):
    m = has_minor(Graph.complete(7), K6, backend=backend)
    assert m is not None and verify_minor_model(Graph.complete(7), K6, m)
    assert has_minor(K5, K6, backend=backend) is None
    assert has_minor(petersen(), K6, backend=backend) is None
    assert has_minor(petersen(), K5, backend=backend) is not None
    assert has_minor(petersen(), petersen(), backend=backend) is not None


def test_exact_search_without_heuristic(backend):
    g = torus_grid(4).to_graph()
    stats = SearchStats()
    m = has_minor(g, K6, heuristic=False, backend=backend, stats=stats)
    assert m is not None and verify_minor_model(g, K6, m)
    assert stats.nodes > 0 and not stats.heuristic


def test_disconnected_target():
    two_k3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert has_minor(Graph.cycle(7), two_k3) is None
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
    m = has_minor(g, two_k3)
    assert m is not None and verify_minor_model(g, two_k3, m)


def test_oracle_examples():
    k33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
    m = brute_force_minor_oracle(k33, K4)
    assert m is not None and verify_minor_model(k33, K4, m)
    m = brute_force_minor_oracle(Graph.cycle(6), Graph.complete(3))
    assert m is not None and verify_minor_model(Graph.cycle(6), Graph.complete(3), m)
    assert brute_force_minor_oracle(petersen(), K6) is None
    with pytest.raises(OracleSizeError):
        brute_force_minor_oracle(Graph.cycle(15), Graph.complete(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 9), st.floats(0.2, 0.9), st.integers(0, 10**6), st.sampled_from([4, 5]))
def test_agrees_with_oracle(n, p, seed, t):
    g = random_graph(n, p, random.Random(seed))
    h = Graph.complete(t)
    found = has_minor(g, h)
    assert (found is None) == (brute_force_minor_oracle(g, h) is None)


def test_budget_exceeded(backend):
    g = apex_graph(triangulated_grid(4, 5, random.Random(7)))
    with pytest.raises(SearchBudgetExceeded) as info:
        has_minor(g, K6, budget=10, backend=backend)
    assert info.value.nodes > 10


def test_budget_from_environment(monkeypatch):
    g = apex_graph(triangulated_grid(4, 5, random.Random(7)))
    monkeypatch.setenv("SURFK6_NODE_BUDGET", "5")
    with pytest.raises(SearchBudgetExceeded):
        has_minor(g, K6)


def test_backends_agree():
    g = apex_graph(triangulated_grid(4, 4, random.Random(3)))
    runs = []
    for be in ("python", "cython"):
        stats = SearchStats()
        runs.append((has_minor(g, K6, backend=be, stats=stats), stats.nodes))
    assert runs[0] == runs[1]


def apex_corpus(count=20, seed=2026):
    rng = random.Random(seed)
    for _ in range(count):
        a, b = rng.choice((3, 4)), rng.randint(4, 7)
        yield apex_graph(triangulated_grid(a, b, rng, drop=rng.uniform(0.05, 0.2)))


def test_apex_negative_control():
    sizes = []
    for g in apex_corpus():
        sizes.append(g.n)
        assert has_minor(g, K6, budget=20_000_000) is None
    assert max(sizes) <= 30 and len(sizes) == 20


# -- propagation through a ΔY move ---------------------------------------------------


def _k5_dy():
    g = Graph.complete(5)
    return g, delta_to_wye(g, (0, 1, 2)), Move("dy", (0, 1, 2))


def _model(g, h, branch):
    return _with_witnesses(g, h, {x: set(s) for x, s in branch.items()})


def test_propagate_unused_vertex():
    g, g2, mv = _k5_dy()
    k3 = Graph.complete(3)
    m2 = _model(g2, k3, {0: {0}, 1: {3}, 2: {4}})
    m = propagate_model_through_delta_wye(g, g2, m2, mv, k3)
    assert m.branch == m2.branch and verify_minor_model(g, k3, m)


def test_propagate_singleton():
    g, g2, mv = _k5_dy()
    m2 = _model(g2, K4, {0: {5}, 1: {0, 3}, 2: {1, 4}, 3: {2}})
    assert verify_minor_model(g2, K4, m2)
    m = propagate_model_through_delta_wye(g, g2, m2, mv, K4)
    assert verify_minor_model(g, K4, m)
    assert len(m.branch[0]) == 1 and m.branch[0] <= {0, 1, 2}


def test_propagate_internal():
    g = Graph.complete(7)
    g2 = delta_to_wye(g, (0, 1, 2))
    m2 = _model(g2, K6, {0: {3}, 1: {4}, 2: {5}, 3: {6}, 4: {0}, 5: {1, 7, 2}})
    assert verify_minor_model(g2, K6, m2)
    m = propagate_model_through_delta_wye(g, g2, m2, Move("dy", (0, 1, 2)), K6)
    assert m.branch[5] == frozenset({1, 2}) and verify_minor_model(g, K6, m)


def test_propagate_rejects_bad_records():
    g, g2, mv = _k5_dy()
    m2 = _model(g2, K4, {0: {5}, 1: {0, 3}, 2: {1, 4}, 3: {2}})
    with pytest.raises(PropagationError, match="not a ΔY"):
        propagate_model_through_delta_wye(g, g2, m2, Move("yd", vertex=5), K4)
    with pytest.raises(PropagationError, match="do not match"):
        propagate_model_through_delta_wye(g, g2, m2, Move("dy", (1, 2, 3)), K4)
    with pytest.raises(PropagationError, match="invalid transformation"):
        propagate_model_through_delta_wye(Graph.cycle(5), g2, m2, mv, K4)
    broken = MinorModel({**m2.branch, 0: frozenset({0})}, m2.witness)
    with pytest.raises(PropagationError, match="not valid"):
        propagate_model_through_delta_wye(g, g2, broken, mv, K4)


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 9), st.floats(0.4, 0.95), st.integers(0, 10**6), st.sampled_from([4, 5, 6]))
def test_propagation_property(n, p, seed, t):
    rng = random.Random(seed)
    g = random_graph(n, p, rng)
    tris = g.triangles()
    if not tris:
        return
    tri = rng.choice(tris)
    g2 = delta_to_wye(g, tri)
    h = Graph.complete(t)
    m2 = has_minor(g2, h, seed=seed)
    if m2 is None:
        return
    m = propagate_model_through_delta_wye(g, g2, m2, Move("dy", tuple(sorted(tri))), h)
    assert verify_minor_model(g, h, m)
