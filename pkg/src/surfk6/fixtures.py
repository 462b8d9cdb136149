"""Embedded fixtures used by tests, the CLI and the projective pipeline."""
from __future__ import annotations

import random

from .embedding import (
    EmbeddedGraph,
    build_embedding,
    embedding_from_faces,
    switch_vertices,
)

K6_PROJECTIVE_FACES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
)


def k2() -> EmbeddedGraph:
    return build_embedding(2, [(0, 1)], [[0], [1]])


def k3() -> EmbeddedGraph:
    # darts: e0=(0,1) e1=(1,2) e2=(2,0)
    return build_embedding(3, [(0, 1), (1, 2), (2, 0)], [[0, 5], [1, 2], [3, 4]])


def cube() -> EmbeddedGraph:
    faces = [(0, 1, 2, 3), (4, 7, 6, 5), (0, 4, 5, 1), (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0)]
    return embedding_from_faces(8, faces)


def k6_projective() -> EmbeddedGraph:
    return embedding_from_faces(6, K6_PROJECTIVE_FACES)


def torus_grid(n: int, m: int | None = None) -> EmbeddedGraph:
    """``n x m`` toroidal grid, vertex ``(i, j)`` is ``i * m + j``."""
    m = n if m is None else m
    if n < 3 or m < 3:
        raise ValueError("toroidal grids need both sides >= 3")
    V = lambda i, j: (i % n) * m + (j % m)  # noqa: E731
    faces = [(V(i, j), V(i, j + 1), V(i + 1, j + 1), V(i + 1, j)) for i in range(n) for j in range(m)]
    return embedding_from_faces(n * m, faces)


def klein_grid(n: int, m: int | None = None) -> EmbeddedGraph:
    """Grid on the Klein bottle: rows wrap straight, the last row glues to
    the first with columns reflected."""
    m = n if m is None else m
    if n < 3 or m < 3:
        raise ValueError("Klein grids need both sides >= 3")

    def V(i, j):
        if i == n:
            i, j = 0, -j
        return i * m + (j % m)

    faces = [(V(i, j), V(i, j + 1), V(i + 1, j + 1), V(i + 1, j)) for i in range(n) for j in range(m)]
    return embedding_from_faces(n * m, faces)


def projective_grid() -> EmbeddedGraph:
    """The projective 4x4 grid: a 4x4 planar grid whose boundary 12-cycle is
    closed off by a crosscap, realized with three twisted quadrilaterals and
    one octagon."""
    V = lambda r, c: 4 * r + c  # noqa: E731
    faces = [(V(r, c), V(r, c + 1), V(r + 1, c + 1), V(r + 1, c)) for r in range(3) for c in range(3)]
    faces += [(V(r, 3), V(r + 1, 3), V(2 - r, 0), V(3 - r, 0)) for r in range(3)]
    faces.append(tuple(V(0, c) for c in range(4)) + tuple(V(3, c) for c in range(4)))
    return embedding_from_faces(16, faces)


def scramble(emb: EmbeddedGraph, rng: random.Random) -> EmbeddedGraph:
    """Switch a random vertex set: same embedding, scattered signs."""
    return switch_vertices(emb, [v for v in range(emb.n) if rng.random() < 0.5])


def connected_sum(a: EmbeddedGraph, fa: int, b: EmbeddedGraph, fb: int, shift: int = 0) -> EmbeddedGraph:
    """Remove face ``fa`` of ``a`` and face ``fb`` of ``b`` (same length) and
    glue the two holes, vertex ``i`` of one boundary onto vertex ``-i + shift``
    of the other."""
    wa, wb = a.faces[fa].vertices, b.faces[fb].vertices
    L = len(wa)
    if len(wb) != L or len(set(wa)) != L or len(set(wb)) != L:
        raise ValueError("faces must be simple and of equal length")
    glue = {wb[i]: wa[(shift - i) % L] for i in range(L)}
    fresh = iter(range(a.n, a.n + b.n))
    vmap = [glue[v] if v in glue else next(fresh) for v in range(b.n)]
    faces = [w.vertices for f, w in enumerate(a.faces) if f != fa]
    faces += [tuple(vmap[v] for v in w.vertices) for f, w in enumerate(b.faces) if f != fb]
    return embedding_from_faces(a.n + b.n - L, faces)


def random_grid_sum(rng: random.Random, parts: int | None = None, low: int = 3, high: int = 5) -> EmbeddedGraph:
    """Connected sum of random torus and Klein grids, signs scrambled."""
    parts = parts if parts is not None else rng.randint(1, 3)

    def piece():
        make = torus_grid if rng.random() < 0.5 else klein_grid
        return make(rng.randint(low, high), rng.randint(low, high))

    emb = piece()
    for _ in range(parts - 1):
        other = piece()
        emb = connected_sum(emb, rng.randrange(len(emb.faces)), other,
                            rng.randrange(len(other.faces)), rng.randrange(4))
    return scramble(emb, rng)


NAMED = {
    "k2": k2,
    "k3": k3,
    "cube": cube,
    "k6-projective": k6_projective,
    "projective-grid": projective_grid,
    "torus4": lambda: torus_grid(4),
    "torus5": lambda: torus_grid(5),
    "torus6": lambda: torus_grid(6),
    "torus7": lambda: torus_grid(7),
    "klein4": lambda: klein_grid(4),
}
