import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from surfk6.embedding import (
    DisconnectedError,
    EmbeddingError,
    EmbParseError,
    build_embedding,
    components,
    euler_genus,
    format_emb,
    normalize_signature,
    parse_emb,
    radial_graph,
    switch_vertices,
    trace_facial_walks,
)
from surfk6.fixtures import NAMED, cube, k2, k3, k6_projective, klein_grid, scramble, torus_grid


def test_triangle_is_planar():
    e = k3()
    s = euler_genus(e)
    assert (s.euler_genus, s.orientable) == (0, True)
    assert len(e.faces) == 2


def test_incomplete_rotation_rejected():
    with pytest.raises(EmbeddingError, match="incomplete rotation"):
        build_embedding(3, [(0, 1), (1, 2), (2, 0)], [[0, 5], [1], [3, 4]])


@pytest.mark.parametrize("edges, msg", [
    ([(0, 1), (0, 1)], "duplicate edge"),
    ([(0, 0)], "loop"),
])
def test_simple_graphs_only(edges, msg):
    rot = [[] for _ in range(2)]
    for d in range(2 * len(edges)):
        rot[edges[d >> 1][d & 1]].append(d)
    with pytest.raises(EmbeddingError, match=msg):
        build_embedding(2, edges, rot)


def test_bad_sign_and_foreign_dart():
    with pytest.raises(EmbeddingError, match="sign"):
        build_embedding(2, [(0, 1)], [[0], [1]], [2])
    with pytest.raises(EmbeddingError, match="non-incident"):
        build_embedding(2, [(0, 1)], [[1], [0]])


def test_cube_faces():
    walks = trace_facial_walks(cube())
    assert [len(w) for w in walks] == [4] * 6
    assert euler_genus(cube()).name == "sphere"


def test_k6_projective_faces():
    e = k6_projective()
    walks = trace_facial_walks(e)
    assert len(walks) == 10 and all(len(w) == 3 for w in walks)
    s = euler_genus(e)
    assert (s.euler_genus, s.orientable) == (1, False)


def test_k2_single_face():
    walks = trace_facial_walks(k2())
    assert len(walks) == 1 and len(walks[0]) == 2


def test_torus7():
    e = torus_grid(7)
    assert (e.n, e.num_edges, len(e.faces)) == (49, 98, 49)
    s = euler_genus(e)
    assert (s.euler_genus, s.orientable) == (2, True)


def test_klein_grid_surface():
    s = euler_genus(klein_grid(4, 5))
    assert (s.euler_genus, s.orientable) == (2, False)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_euler_and_dart_conservation(name):
    e = NAMED[name]()
    walks = trace_facial_walks(e)
    used = Counter((d, s) for w in walks for d, s in zip(w.darts, w.sides))
    assert all(c == 1 for c in used.values())
    assert sum(len(w) for w in walks) == 2 * e.num_edges
    s = euler_genus(e)
    assert e.n - e.num_edges + len(walks) == 2 - s.euler_genus
    assert not s.orientable or s.euler_genus % 2 == 0


def test_normalize_signature():
    rng = random.Random(3)
    t = scramble(torus_grid(5), rng)
    assert -1 in t.signature
    assert set(normalize_signature(t).signature) == {1}
    assert -1 in normalize_signature(k6_projective()).signature
    assert set(normalize_signature(cube()).signature) == {1}


@pytest.mark.parametrize("name", sorted(NAMED))
def test_normalize_keeps_face_lengths(name):
    e = scramble(NAMED[name](), random.Random(1))
    before = sorted(len(w) for w in e.faces)
    assert sorted(len(w) for w in normalize_signature(e).faces) == before


def test_radial_graph_sizes():
    r = radial_graph(cube())
    assert (r.embedding.n, r.embedding.num_edges) == (14, 24)
    r = radial_graph(k6_projective())
    assert (r.embedding.n, r.embedding.num_edges) == (16, 30)
    r = radial_graph(k3())
    assert (r.embedding.n, r.embedding.num_edges) == (5, 6)


def test_radial_graph_is_bipartite_on_same_surface():
    e = k6_projective()
    r = radial_graph(e).embedding
    assert all((u < e.n) != (v < e.n) for u, v in r.edges)
    assert euler_genus(r) == euler_genus(e)


def test_emb_round_trip(tmp_path):
    e = scramble(k6_projective(), random.Random(2))
    text = format_emb(e)
    back = parse_emb(text)
    assert (back.edges, back.rotation, back.signature) == (e.edges, e.rotation, e.signature)


@pytest.mark.parametrize("text, line", [
    ("emb 2\nn 1\nrot 0\n", 1),
    ("emb 1\nn 2\ne 0 0 1 x\nrot 0 0\nrot 1 0\n", 3),
    ("emb 1\nn 2\ne 0 0 1 +\nfoo 1\n", 4),
    ("emb 1\nn 2\ne 0 0 1 +\nrot 0 0\nrot 0 0\n", 5),
])
def test_emb_parse_errors_carry_line(text, line):
    with pytest.raises(EmbParseError) as info:
        parse_emb(text)
    assert info.value.line == line


def test_disconnected_rejected():
    e = build_embedding(4, [(0, 1), (2, 3)], [[0], [1], [2], [3]])
    assert len(components(e)) == 2
    with pytest.raises(DisconnectedError):
        euler_genus(e)


@st.composite
def random_embeddings(draw):
    n = draw(st.integers(3, 8))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    edges = [(i, i + 1) for i in range(n - 1)]
    extra = [(u, v) for u in range(n) for v in range(u + 2, n) if rng.random() < 0.4]
    edges += extra
    rot = [[] for _ in range(n)]
    for d in range(2 * len(edges)):
        rot[edges[d >> 1][d & 1]].append(d)
    for r in rot:
        rng.shuffle(r)
    sig = [rng.choice((1, -1)) for _ in edges]
    return build_embedding(n, edges, rot, sig)


@settings(max_examples=80, deadline=None)
@given(random_embeddings(), st.integers(0, 10**6))
def test_random_rotation_systems(e, seed):
    s = euler_genus(e)
    assert e.n - e.num_edges + len(e.faces) == 2 - s.euler_genus
    assert sum(len(w) for w in e.faces) == 2 * e.num_edges
    rng = random.Random(seed)
    sw = switch_vertices(e, [v for v in range(e.n) if rng.random() < 0.5])
    assert euler_genus(sw) == s
    assert sorted(len(w) for w in sw.faces) == sorted(len(w) for w in e.faces)
