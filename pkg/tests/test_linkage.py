import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from surfk6.curves import CurveError, PreconditionError
from surfk6.fixtures import connected_sum, torus_grid
from surfk6.graphs import Graph, random_graph
from surfk6.linkage import (
    CASES,
    CylinderGridInstance,
    InstanceError,
    build_k6_on_cylinder,
    check_preconditions,
    contracted_restriction,
    distance_on_cycle,
    homologous_cycle_linkage_check,
    make_cylinder_grid,
    max_disjoint_paths,
    random_cylinder_instance,
    randomized_theorem_4_1_sweep,
    separates,
)
from surfk6.minors import brute_force_minor_oracle, has_minor, verify_minor_model

K6 = Graph.complete(6)


def _nx_linkage_size(g, S, T):
    # reference: node connectivity through a super source and sink
    G = g.to_networkx()
    common = set(S) & set(T)
    G.remove_nodes_from(common)
    G.add_edges_from(("s", v) for v in set(S) - common)
    G.add_edges_from((v, "t") for v in set(T) - common)
    if "s" not in G or "t" not in G:
        return len(common)
    return len(common) + len(nx.minimum_node_cut(G, "s", "t")) if nx.has_path(G, "s", "t") else len(common)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 16), st.floats(0.05, 0.6), st.integers(0, 10**6))
def test_menger_against_networkx(n, p, seed):
    rng = random.Random(seed)
    g = random_graph(n, p, rng)
    S = set(rng.sample(range(n), rng.randint(1, max(1, n // 3))))
    T = set(rng.sample(range(n), rng.randint(1, max(1, n // 3))))
    link, sep = max_disjoint_paths(g, S, T)
    link.check(g)
    assert len(link) == len(sep) == _nx_linkage_size(g, S, T)
    assert separates(g, S, T, sep)


def test_separator_blocks_random_paths():
    rng = random.Random(9)
    g = random_graph(14, 0.3, rng)
    S, T = {0, 1, 2}, {11, 12, 13}
    _, sep = max_disjoint_paths(g, S, T)
    G = g.to_networkx()
    for _ in range(500):
        s, t = rng.choice(sorted(S)), rng.choice(sorted(T))
        walk = [s]
        while walk[-1] != t and len(walk) < 60:
            walk.append(rng.choice(sorted(G[walk[-1]])) if G[walk[-1]] else walk[-1])
        if walk[-1] == t:
            assert set(walk) & sep


def test_grid_columns():
    g = Graph.from_networkx(nx.convert_node_labels_to_integers(nx.grid_2d_graph(5, 4)))
    S, T = {0, 1, 2, 3}, {16, 17, 18, 19}
    link, sep = max_disjoint_paths(g, S, T)
    assert len(link) == 4 and all(len(p) == 5 for p in link.paths)


def test_overlapping_terminals_and_cut_vertex():
    g = Graph.cycle(6)
    link, sep = max_disjoint_paths(g, {0, 1}, {1, 3})
    assert len(link) == 2 and (1,) in link.paths
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    link, sep = max_disjoint_paths(bowtie, {0, 1}, {3, 4})
    assert len(link) == 1 and sep == frozenset({2})
    with pytest.raises(ValueError):
        max_disjoint_paths(g, set(), {1})


@pytest.mark.parametrize("n", [5, 6, 7])
def test_homologous_linkage_on_torus(n):
    r = homologous_cycle_linkage_check(torus_grid(n), list(range(n)), [(n // 2) * n + j for j in range(n)])
    assert r.passed and r.nsfw == n and min(r.sides) >= n


def test_homologous_preconditions():
    # rows of the two handles of a double torus
    double = connected_sum(torus_grid(5), 0, torus_grid(5), 0)
    with pytest.raises(PreconditionError, match="not homologous"):
        homologous_cycle_linkage_check(double, [10, 11, 12, 13, 14], [33, 34, 35, 36, 37])
    t = torus_grid(5)
    with pytest.raises(PreconditionError, match="separating"):
        homologous_cycle_linkage_check(t, list(t.faces[12].vertices), list(range(5)))
    with pytest.raises(PreconditionError, match="disjoint"):
        homologous_cycle_linkage_check(t, list(range(5)), [0, 5, 10, 15, 20])


def test_distance_on_cycle():
    cyc = list(range(10))
    S = {0, 2, 4, 6, 8}
    assert distance_on_cycle(cyc, S, 0, 4) == 1
    assert distance_on_cycle(cyc, S, 1, 7) == 2
    assert distance_on_cycle(cyc, S, 3, 3) == 0
    assert distance_on_cycle(cyc, S, 1, 2) == 0
    with pytest.raises(CurveError):
        distance_on_cycle(cyc, S, 0, 11)


def _instance(k, seed, pairs):
    emb, cycles, spokes = make_cylinder_grid(k, random.Random(seed))
    chords = tuple((spokes[a][0], spokes[b][-1]) for a, b in pairs)
    inst = CylinderGridInstance(emb, cycles, spokes, chords)
    inst.validate()
    return inst


def test_case_three_example():
    inst = _instance(7, 1, [(0, 1), (3, 5)])
    res = build_k6_on_cylinder(inst, "i")
    assert res.case == "i.3" and res.spokes == (0, 1, 3, 5)
    assert verify_minor_model(inst.augmented(), K6, res.model)
    small = contracted_restriction(inst, res.spokes, res.chords)
    assert small.n == 12
    assert brute_force_minor_oracle(small, K6) is not None


def test_role_swap_example():
    inst = _instance(7, 1, [(0, 1), (3, 2), (6, 5)])
    res = build_k6_on_cylinder(inst, "ii")
    assert res.case == "ii.2.swap"
    assert verify_minor_model(inst.augmented(), K6, res.model)


def test_preconditions():
    inst = _instance(8, 2, [(0, 1), (2, 4)])
    with pytest.raises(PreconditionError, match="dist\\(C1,S\\)"):
        check_preconditions(inst, "i")
    inst = _instance(8, 2, [(0, 1), (4, 2)])
    with pytest.raises(PreconditionError, match="< 1"):
        check_preconditions(inst, "i")
    with pytest.raises(PreconditionError, match="third chord"):
        check_preconditions(inst, "ii")
    inst = _instance(8, 2, [(0, 1), (4, 3), (6, 6)])
    with pytest.raises(PreconditionError, match="!= 0"):
        check_preconditions(inst, "ii")
    inst = _instance(8, 2, [(0, 1), (4, 2), (6, 2)])
    with pytest.raises(PreconditionError, match="b3"):
        check_preconditions(inst, "ii")
    inst = _instance(8, 2, [(0, 1), (4, 1)])
    with pytest.raises(PreconditionError, match="b1 = b2"):
        check_preconditions(inst, "i")


def test_instance_validation():
    emb, cycles, spokes = make_cylinder_grid(7, random.Random(0))
    with pytest.raises(InstanceError, match="7 spokes"):
        CylinderGridInstance(emb, cycles, spokes[:6], ()).validate()
    swapped = (spokes[1], spokes[0]) + spokes[2:]
    with pytest.raises(InstanceError, match="clockwise"):
        CylinderGridInstance(emb, cycles, swapped, ()).validate()
    with pytest.raises(InstanceError, match="chords"):
        CylinderGridInstance(emb, cycles, spokes, ((cycles[1][0], cycles[2][0]),)).validate()


def test_cylinder_without_chords_has_no_k6():
    inst = _instance(7, 3, [])
    assert nx.check_planarity(inst.graph().to_networkx())[0]
    assert has_minor(inst.graph(), K6) is None


def test_cyl_round_trip(tmp_path):
    inst, _ = random_cylinder_instance(8, random.Random(4), "ii.2.b")
    inst.write(tmp_path / "x")
    back = CylinderGridInstance.read(tmp_path / "x")
    assert (back.cycles, back.spokes, back.chords) == (inst.cycles, inst.spokes, inst.chords)
    assert back.emb.edges == inst.emb.edges


@pytest.mark.parametrize("label", CASES)
def test_every_case_reachable(label):
    rng = random.Random(CASES.index(label))
    for k in (7, 8, 9):
        inst, part = random_cylinder_instance(k, rng, label, unsnap=0.0)
        inst.validate()
        res = build_k6_on_cylinder(inst, part)
        assert res.case == label
        assert verify_minor_model(inst.augmented(), K6, res.model)


def test_small_sweep():
    rep = randomized_theorem_4_1_sweep(28, seed=5)
    assert rep.passed and set(rep.coverage) == set(CASES)
    assert randomized_theorem_4_1_sweep(0).trials == 0
    with pytest.raises(ValueError):
        randomized_theorem_4_1_sweep(1, ks=(6,))
