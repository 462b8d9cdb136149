import random

import networkx as nx
import pytest

from surfk6.curves import (
    NON_CONTRACTIBLE,
    NON_SEPARATING,
    CurveError,
    FaceChain,
    PreconditionError,
    chain_extension_bound_check,
    classify_cycle,
    exhaustive_width,
    face_width,
    is_clean,
    is_nice,
    layer_cycles,
    nonseparating_face_width,
    three_path_check,
)
from surfk6.embedding import DisconnectedError, build_embedding
from surfk6.fixtures import (
    cube,
    k6_projective,
    klein_grid,
    projective_grid,
    random_grid_sum,
    scramble,
    torus_grid,
)

# values frozen from the exhaustive radial-cycle oracle
WIDTHS = {
    "torus3": (lambda: torus_grid(3), 3, 3),
    "torus4": (lambda: torus_grid(4), 4, 4),
    "torus3x5": (lambda: torus_grid(3, 5), 3, 3),
    "torus4x6": (lambda: torus_grid(4, 6), 4, 4),
    "klein3": (lambda: klein_grid(3), 3, 3),
    "klein4": (lambda: klein_grid(4), 4, 4),
    "klein3x5": (lambda: klein_grid(3, 5), 3, 3),
    "k6": (k6_projective, 3, 3),
    "projective-grid": (projective_grid, 4, 4),
    "sum18": (lambda: random_grid_sum(random.Random(18), 2, 4, 5), 4, 5),
}


@pytest.mark.parametrize("name", sorted(WIDTHS))
def test_widths(name):
    make, fw, nsfw = WIDTHS[name]
    e = make()
    a, b = face_width(e), nonseparating_face_width(e)
    assert (a.value, b.value) == (fw, nsfw)
    assert a.value <= b.value
    assert classify_cycle(e, a.witness).in_class(NON_CONTRACTIBLE)
    assert classify_cycle(e, b.witness).in_class(NON_SEPARATING)
    assert len(a.witness) == fw and len(b.witness) == nsfw


@pytest.mark.parametrize("name", ["torus3", "torus4", "klein3", "k6", "projective-grid"])
def test_exhaustive_oracle_agrees(name):
    make, fw, nsfw = WIDTHS[name]
    e = make()
    assert exhaustive_width(e, NON_CONTRACTIBLE, fw).value == fw
    assert exhaustive_width(e, NON_SEPARATING, nsfw).value == nsfw
    assert exhaustive_width(e, NON_CONTRACTIBLE, fw - 1).value == -1


def test_torus7_nsfw():
    assert nonseparating_face_width(torus_grid(7)).value == 7


def test_separating_essential_witness():
    e = WIDTHS["sum18"][0]()
    c = classify_cycle(e, face_width(e).witness)
    assert not c.contractible and c.separating


def test_witness_deterministic():
    e = projective_grid()
    base = nonseparating_face_width(e).witness
    assert nonseparating_face_width(projective_grid()).witness == base
    for s in range(3):
        assert nonseparating_face_width(scramble(e, random.Random(s))).value == 4


def test_sphere_is_unbounded():
    for klass_width in (face_width, nonseparating_face_width):
        cert = klass_width(cube())
        assert cert.unbounded and cert.value is None and cert.witness is None


def test_disconnected_rejected():
    e = build_embedding(4, [(0, 1), (2, 3)], [[0], [1], [2], [3]])
    with pytest.raises(DisconnectedError):
        face_width(e)


def test_exhaustive_size_guard():
    with pytest.raises(CurveError, match="refused"):
        exhaustive_width(torus_grid(7), NON_CONTRACTIBLE, 7, max_nodes=40)


def test_classify_basic_cycles():
    t = torus_grid(5)
    face = list(t.faces[0].vertices)
    c = classify_cycle(t, face)
    assert c.contractible and c.separating and c.two_sided
    meridian = classify_cycle(t, [0, 1, 2, 3, 4])
    assert meridian.two_sided and not meridian.contractible and not meridian.separating
    k6 = k6_projective()
    one_sided = [c for c in ([0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 3, 5], [0, 3, 4])
                 if not classify_cycle(k6, c).two_sided]
    assert one_sided
    c = classify_cycle(k6, one_sided[0])
    assert not c.contractible and not c.separating


def test_classify_rejects_non_cycles():
    t = torus_grid(5)
    with pytest.raises(CurveError):
        classify_cycle(t, [0, 1, 7])
    with pytest.raises(CurveError):
        classify_cycle(t, [0, 1])


def test_chain_format_parse():
    e = projective_grid()
    w = nonseparating_face_width(e).witness
    line = w.format()
    assert line.startswith("chain ") and line.split()[-1] == line.split()[1]
    back = FaceChain.parse(line)
    assert (back.vertices, back.faces, back.closed) == (w.vertices, w.faces, True)
    with pytest.raises(CurveError):
        FaceChain.parse("chain 1 2")


def test_nice_and_clean():
    t = torus_grid(6)
    w = nonseparating_face_width(t).witness
    assert is_nice(w) and is_clean(w, t)
    doubled = FaceChain(w.vertices[:2], (w.faces[0], w.faces[0]))
    assert not is_nice(doubled)
    with pytest.raises(CurveError):
        is_nice(FaceChain((0, 1), (0,), closed=False))


@pytest.mark.parametrize("make", [lambda: torus_grid(5), lambda: torus_grid(4, 6), projective_grid,
                                  lambda: klein_grid(4)])
def test_minimal_witness_is_clean(make):
    e = make()
    w = nonseparating_face_width(e).witness
    assert is_clean(w, e) and is_nice(w)


def test_three_path_planar_theta():
    c = cube()
    G = c.to_graph().to_networkx()
    y = max(G.nodes, key=lambda v: nx.shortest_path_length(G, 0, v))
    paths = list(nx.node_disjoint_paths(G, 0, y))
    assert len(paths) == 3
    r = three_path_check(c, *paths)
    assert r.passed and r.contractible_count == 3 and r.separating_count == 3


def test_three_path_torus():
    t = torus_grid(5)
    # meridian halves plus a detour: two essential, one contractible
    p1 = [0, 1, 2]
    p2 = [0, 4, 3, 2]
    p3 = [0, 5, 6, 7, 2]
    r = three_path_check(t, p1, p2, p3)
    assert r.passed
    assert r.contractible_count == 1 and r.separating_count == 1


def test_three_path_errors():
    t = torus_grid(5)
    with pytest.raises(CurveError, match="internally disjoint"):
        three_path_check(t, [0, 1, 2], [0, 1, 6, 7, 2], [0, 4, 3, 2])
    with pytest.raises(CurveError, match="both ends"):
        three_path_check(t, [0, 1, 2], [0, 4, 3], [0, 5, 6, 7, 2])


def _open_chains(e, lam, i, j):
    """All 2-face open chains from F_i to F_j avoiding the faces of lam."""
    at = {}
    for f, w in enumerate(e.faces):
        for v in w.vertex_set:
            at.setdefault(v, set()).add(f)
    used = set(lam.faces)
    fi, fj = e.faces[lam.faces[i]].vertex_set, e.faces[lam.faces[j]].vertex_set
    for w0 in sorted(fi):
        for g1 in sorted(at[w0] - used):
            for w1 in sorted(e.faces[g1].vertex_set - {w0}):
                for g2 in sorted(at[w1] - used - {g1}):
                    for w2 in sorted(e.faces[g2].vertex_set & fj - {w1}):
                        yield FaceChain((w0, w1, w2), (g1, g2), False)


def test_extension_bound_k2_on_torus():
    t = torus_grid(6)
    lam = nonseparating_face_width(t).witness
    rng = random.Random(0)
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    for i, j in rng.sample(pairs, 6):
        chains = list(_open_chains(t, lam, i, j))
        assert chains
        for ch in rng.sample(chains, min(3, len(chains))):
            r = chain_extension_bound_check(t, lam, ch, i, j, nsfw=6)
            assert r.k == 2 and r.bound == 6 and r.passed
            assert sum(r.lengths) == 6 + 2 + 2 * 2


def test_extension_bound_k0():
    t = torus_grid(6)
    lam = nonseparating_face_width(t).witness
    r = chain_extension_bound_check(t, lam, FaceChain((lam.vertices[1],), (), False), 0, 1, nsfw=6)
    assert r.bound == 2 and r.passed


def test_extension_requires_minimal_chain():
    t = torus_grid(6)
    lam = nonseparating_face_width(t).witness
    with pytest.raises(PreconditionError):
        chain_extension_bound_check(t, lam, FaceChain((lam.vertices[1],), (), False), 0, 1, nsfw=7)
    with pytest.raises(CurveError, match="ends"):
        far = next(v for v in range(t.n) if v not in t.faces[lam.faces[0]].vertex_set)
        chain_extension_bound_check(t, lam, FaceChain((far,), (), False), 0, 1, nsfw=6)


def _check_layers(e, f, k):
    layers = layer_cycles(e, f, k)
    assert len(layers) == k + 1
    assert sorted(layers[0]) == sorted(e.faces[f].vertex_set)
    seen = set()
    fw = face_width(e).value
    for i, c in enumerate(layers):
        assert not seen & set(c)
        seen |= set(c)
        cls = classify_cycle(e, c)
        assert cls.separating
        if i <= fw // 2 - 1:
            assert cls.contractible
    return layers


def test_layers_toroidal_grid():
    layers = _check_layers(torus_grid(6), 0, 2)
    assert [len(c) for c in layers] == [4, 12, 20]
    assert [len(c) for c in _check_layers(torus_grid(4), 0, 1)] == [4, 12]


def test_layers_projective_grid():
    e = projective_grid()
    for f in range(len(e.faces)):
        _check_layers(e, f, 1)


def test_layers_bound():
    with pytest.raises(PreconditionError, match="exceeds"):
        layer_cycles(torus_grid(4), 0, 2)
    with pytest.raises(PreconditionError):
        layer_cycles(k6_projective(), 0, 1)
