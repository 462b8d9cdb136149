"""Combinatorial embeddings: rotation systems with edge signatures.

Darts are numbered ``2*e`` (leaving ``edges[e][0]``) and ``2*e + 1``
(leaving ``edges[e][1]``), so the reverse of a dart is ``d ^ 1``.

Faces are traced on states ``(dart, side)``.  ``side`` is the local
orientation (+1 or -1) used at the origin of the dart; traversing an edge
multiplies it by the edge signature, and at the head we turn to the
rotation successor (side +1) or predecessor (side -1) of the reverse dart.
Every face is a pair of mirror orbits of this step map; we keep the orbit
containing the least unused state.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class EmbeddingError(ValueError):
    """Malformed embedding input."""


class DisconnectedError(EmbeddingError):
    """A topological operation was given a disconnected embedding."""


@dataclass(frozen=True)
class FacialWalk:
    darts: tuple[int, ...]
    sides: tuple[int, ...]
    vertices: tuple[int, ...]
    corners: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class SurfaceDescriptor:
    euler_genus: int
    orientable: bool
    components: int = 1

    @property
    def name(self) -> str:
        if self.euler_genus == 0:
            return "sphere"
        if self.orientable:
            return f"orientable genus {self.euler_genus // 2}"
        return f"non-orientable genus {self.euler_genus}"


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    """An immutable embedded graph.  Build through :func:`build_embedding`."""

    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    signature: tuple[int, ...]
    multigraph: bool = field(default=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self.n, self.edges, self.rotation, self.signature) == (
            other.n, other.edges, other.rotation, other.signature)

    def __hash__(self):
        return hash((self.n, self.edges, self.rotation, self.signature))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def origin(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def dart(self, u: int, e: int) -> int:
        """The dart of edge ``e`` leaving ``u``."""
        a, b = self.edges[e]
        if a == u:
            return 2 * e
        if b == u:
            return 2 * e + 1
        raise EmbeddingError(f"vertex {u} is not an end of edge {e}")

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.head(d) for d in self.rotation[v]]

    @cached_property
    def _position(self) -> tuple[int, ...]:
        pos = [0] * (2 * len(self.edges))
        for rot in self.rotation:
            for i, d in enumerate(rot):
                pos[d] = i
        return tuple(pos)

    @cached_property
    def edge_index(self) -> dict[frozenset, int]:
        """Map ``frozenset({u, v})`` to the (first) edge joining u and v."""
        out: dict[frozenset, int] = {}
        for e, (u, v) in enumerate(self.edges):
            out.setdefault(frozenset((u, v)), e)
        return out

    def edge_between(self, u: int, v: int) -> int:
        try:
            return self.edge_index[frozenset((u, v))]
        except KeyError:
            raise EmbeddingError(f"no edge between {u} and {v}") from None

    def succ(self, d: int, side: int = 1) -> int:
        rot = self.rotation[self.origin(d)]
        return rot[(self._position[d] + side) % len(rot)]

    def step(self, d: int, side: int) -> tuple[int, int]:
        """Advance a face-tracing state by one dart."""
        side *= self.signature[d >> 1]
        r = d ^ 1
        rot = self.rotation[self.origin(r)]
        return rot[(self._position[r] + side) % len(rot)], side

    @cached_property
    def faces(self) -> tuple[FacialWalk, ...]:
        return tuple(_trace(self))

    @cached_property
    def corner_face(self) -> tuple[int, ...]:
        """Face index of the corner following each dart in its rotation."""
        out = [-1] * (2 * len(self.edges))
        for f, walk in enumerate(self.faces):
            for c in walk.corners:
                out[c] = f
        return tuple(out)

    @cached_property
    def edge_faces(self) -> tuple[tuple[int, int], ...]:
        """The two face occurrences of every edge (possibly equal)."""
        occ: list[list[int]] = [[] for _ in self.edges]
        for f, walk in enumerate(self.faces):
            for d in walk.darts:
                occ[d >> 1].append(f)
        return tuple(tuple(o) for o in occ)  # type: ignore[misc]

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def to_graph(self):
        from .graphs import Graph

        return Graph.from_edges(self.n, self.edges)


def _trace(emb: EmbeddedGraph) -> list[FacialWalk]:
    m = len(emb.edges)
    used = bytearray(4 * m)  # index 2*d + (side == -1)
    walks = []
    for start in range(4 * m):
        if used[start]:
            continue
        d0, s0 = start >> 1, (1 if start & 1 == 0 else -1)
        darts, sides = [], []
        d, s = d0, s0
        while True:
            key = 2 * d + (s == -1)
            if used[key]:
                raise EmbeddingError("face tracing revisited a state")
            used[key] = 1
            darts.append(d)
            sides.append(s)
            d, s = emb.step(d, s)
            if d == d0 and s == s0:
                break
        # mark the mirror orbit: mirror of (d, s) is (d ^ 1, -s * sig)
        for d, s in zip(darts, sides):
            md, ms = d ^ 1, -s * emb.signature[d >> 1]
            key = 2 * md + (ms == -1)
            if used[key]:
                raise EmbeddingError("facial walk is its own mirror")
            used[key] = 1
        L = len(darts)
        corners = []
        for i in range(L):
            prev = darts[i - 1]
            if sides[i] == 1:
                corners.append(prev ^ 1)
            else:
                corners.append(darts[i])
        walks.append(FacialWalk(
            darts=tuple(darts),
            sides=tuple(sides),
            vertices=tuple(emb.origin(d) for d in darts),
            corners=tuple(corners),
        ))
    return walks


def trace_facial_walks(emb: EmbeddedGraph) -> list[FacialWalk]:
    return list(emb.faces)


def build_embedding(
    n: int,
    edges: Sequence[Sequence[int]],
    rotation: Sequence[Sequence[int]],
    signature: Sequence[int] | None = None,
    *,
    allow_multi: bool = False,
) -> EmbeddedGraph:
    """Validate and freeze an embedding.

    ``rotation[v]`` lists the darts leaving ``v`` in cyclic order.  Loops are
    always rejected; parallel edges only pass with ``allow_multi`` (internal
    surgery).
    """
    if n < 0:
        raise EmbeddingError("negative vertex count")
    edges_t = tuple((int(u), int(v)) for u, v in edges)
    seen = set()
    for e, (u, v) in enumerate(edges_t):
        if not (0 <= u < n and 0 <= v < n):
            raise EmbeddingError(f"edge {e} has an endpoint out of range")
        if u == v:
            raise EmbeddingError(f"loop at vertex {u} (edge {e})")
        key = (min(u, v), max(u, v))
        if key in seen and not allow_multi:
            raise EmbeddingError(f"duplicate edge {key}")
        seen.add(key)
    if signature is None:
        signature = [1] * len(edges_t)
    sig = tuple(int(s) for s in signature)
    if len(sig) != len(edges_t):
        raise EmbeddingError("signature length differs from edge count")
    for e, s in enumerate(sig):
        if s not in (1, -1):
            raise EmbeddingError(f"sign of edge {e} is not +1 or -1")
    if len(rotation) != n:
        raise EmbeddingError("rotation must list every vertex")
    rot_t = tuple(tuple(int(d) for d in r) for r in rotation)
    m2 = 2 * len(edges_t)
    placed = [False] * m2
    for v, rot in enumerate(rot_t):
        for d in rot:
            if not 0 <= d < m2:
                raise EmbeddingError(f"rotation at {v} mentions unknown dart {d}")
            if edges_t[d >> 1][d & 1] != v:
                raise EmbeddingError(f"rotation at {v} mentions non-incident dart {d}")
            if placed[d]:
                raise EmbeddingError(f"dart {d} repeated in rotation at {v}")
            placed[d] = True
    for d in range(m2):
        if not placed[d]:
            v = edges_t[d >> 1][d & 1]
            raise EmbeddingError(f"incomplete rotation at vertex {v}: dart {d} missing")
    return EmbeddedGraph(n, edges_t, rot_t, sig, multigraph=allow_multi)


def from_edge_rotation(
    n: int,
    edges: Sequence[Sequence[int]],
    edge_rotation: Sequence[Sequence[int]],
    signature: Sequence[int] | None = None,
) -> EmbeddedGraph:
    """Build from per-vertex cyclic orders of edge ids (the ``.emb`` style)."""
    edges_t = [tuple(e) for e in edges]
    rotation = []
    for v, rot in enumerate(edge_rotation):
        darts = []
        for e in rot:
            if not 0 <= e < len(edges_t):
                raise EmbeddingError(f"rotation at {v} mentions unknown edge {e}")
            a, b = edges_t[e]
            if a == v:
                darts.append(2 * e)
            elif b == v:
                darts.append(2 * e + 1)
            else:
                raise EmbeddingError(f"rotation at {v} mentions non-incident edge {e}")
        rotation.append(darts)
    return build_embedding(n, edges_t, rotation, signature)


def embedding_from_faces(n: int, faces: Sequence[Sequence[int]]) -> EmbeddedGraph:
    """Glue polygons (cyclic vertex lists) into a closed surface.

    Every edge must lie on exactly two polygon sides and every vertex link
    must be a single cycle.  Vertices of degree two are not supported.
    """
    edge_ids: dict[frozenset, int] = {}
    edges: list[tuple[int, int]] = []
    sides_of_edge: dict[int, list[tuple[int, int]]] = {}
    for f, face in enumerate(faces):
        L = len(face)
        for i in range(L):
            u, v = face[i], face[(i + 1) % L]
            key = frozenset((u, v))
            if key not in edge_ids:
                edge_ids[key] = len(edges)
                edges.append((u, v))
            sides_of_edge.setdefault(edge_ids[key], []).append((f, i))
    for e, occ in sides_of_edge.items():
        if len(occ) != 2:
            raise EmbeddingError(f"edge {edges[e]} lies on {len(occ)} polygon sides")

    # link of each vertex: corner (prev, v, next) joins edges v-prev and v-next
    links: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    corner_of: dict[tuple[int, int], tuple[int, int, int]] = {}
    for f, face in enumerate(faces):
        L = len(face)
        for i in range(L):
            v = face[i]
            a = edge_ids[frozenset((v, face[i - 1]))]
            b = edge_ids[frozenset((v, face[(i + 1) % L]))]
            links[v].append((a, b))
            corner_of[(f, i)] = (v, a, b)

    rotation_edges: list[list[int]] = []
    for v in range(n):
        link = links[v]
        if not link:
            raise EmbeddingError(f"vertex {v} lies on no polygon")
        nbr: dict[int, list[int]] = {}
        for a, b in link:
            nbr.setdefault(a, []).append(b)
            nbr.setdefault(b, []).append(a)
        if any(len(x) != 2 for x in nbr.values()):
            raise EmbeddingError(f"link of vertex {v} is not a cycle")
        start = min(nbr)
        order = [start]
        prev, cur = None, start
        while True:
            a, b = nbr[cur]
            nxt = min(a, b) if prev is None else (b if a == prev else a)
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) != len(nbr):
            raise EmbeddingError(f"link of vertex {v} is not a single cycle")
        if len(order) == 2:
            raise EmbeddingError(f"vertex {v} has degree two")
        rotation_edges.append(order)

    pos = [dict((e, i) for i, e in enumerate(r)) for r in rotation_edges]

    def corner_side(v: int, a: int, b: int) -> int:
        L = len(rotation_edges[v])
        return 1 if rotation_edges[v][(pos[v][a] + 1) % L] == b else -1

    signature = [0] * len(edges)
    for f, face in enumerate(faces):
        L = len(face)
        for i in range(L):
            u, w = face[i], face[(i + 1) % L]
            e = edge_ids[frozenset((u, w))]
            _, a, b = corner_of[(f, i)]
            su = corner_side(u, a, b)
            _, a2, b2 = corner_of[(f, (i + 1) % L)]
            sw = corner_side(w, a2, b2)
            # the walk leaves u with side su and must reach w with side sw
            sig = su * sw
            if signature[e] and signature[e] != sig:
                raise EmbeddingError("inconsistent polygon orientations")
            signature[e] = sig
    return from_edge_rotation(n, edges, rotation_edges, signature)


def components(emb: EmbeddedGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(emb.n)]
    for u, v in emb.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * emb.n
    comps = []
    for s in range(emb.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    q.append(y)
        comps.append(sorted(comp))
    return comps


def _require_connected(emb: EmbeddedGraph) -> None:
    if emb.n == 0 or not emb.is_connected():
        raise DisconnectedError("embedding is not connected; split components first")


def normalize_signature(emb: EmbeddedGraph) -> EmbeddedGraph:
    """Switch vertices so that every BFS-tree edge has sign +1.

    Switching a vertex reverses its rotation and negates its incident edge
    signs; facial walks are preserved.
    """
    _require_connected(emb)
    switch = [0] * emb.n
    switch[0] = 1
    q = deque([0])
    while q:
        u = q.popleft()
        for d in emb.rotation[u]:
            v = emb.head(d)
            if not switch[v]:
                switch[v] = switch[u] * emb.signature[d >> 1]
                q.append(v)
    return switch_vertices(emb, [v for v in range(emb.n) if switch[v] == -1])


def switch_vertices(emb: EmbeddedGraph, vertices: Iterable[int]) -> EmbeddedGraph:
    """Reverse the rotation at each given vertex and negate its incident signs.

    The result is an equivalent embedding with the same facial walks.
    """
    flip = [1] * emb.n
    for v in vertices:
        flip[v] = -flip[v]
    rotation = [r if flip[v] == 1 else tuple(reversed(r)) for v, r in enumerate(emb.rotation)]
    signature = [flip[u] * s * flip[v] for (u, v), s in zip(emb.edges, emb.signature)]
    return EmbeddedGraph(emb.n, emb.edges, tuple(tuple(r) for r in rotation),
                         tuple(signature), multigraph=emb.multigraph)


def is_orientable(emb: EmbeddedGraph) -> bool:
    return all(s == 1 for s in normalize_signature(emb).signature)


def euler_genus(emb: EmbeddedGraph) -> SurfaceDescriptor:
    _require_connected(emb)
    eg = 2 - emb.n + len(emb.edges) - len(emb.faces)
    return SurfaceDescriptor(euler_genus=eg, orientable=is_orientable(emb))


def surface_components(emb: EmbeddedGraph) -> list[SurfaceDescriptor]:
    """Per-component surface descriptors (isolated vertices count as spheres)."""
    out = []
    for comp in components(emb):
        out.append(euler_genus(induced_embedding(emb, comp)[0]))
    return out


def induced_embedding(emb: EmbeddedGraph, vertices: Iterable[int]) -> tuple[EmbeddedGraph, list[int]]:
    """Restrict to a union of connected components; returns (embedding, old ids)."""
    keep = sorted(set(vertices))
    new_id = {v: i for i, v in enumerate(keep)}
    edge_map = {}
    edges = []
    signature = []
    for e, (u, v) in enumerate(emb.edges):
        if u in new_id and v in new_id:
            edge_map[e] = len(edges)
            edges.append((new_id[u], new_id[v]))
            signature.append(emb.signature[e])
        elif u in new_id or v in new_id:
            raise EmbeddingError("vertex set is not a union of components")
    rotation = []
    for v in keep:
        rotation.append([2 * edge_map[d >> 1] + (d & 1) for d in emb.rotation[v]])
    return build_embedding(len(keep), edges, rotation, signature,
                           allow_multi=emb.multigraph), keep


# -- radial graph -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RadialGraph:
    """Vertex-face incidence graph, itself embedded on the same surface.

    Node ``v < n`` is a vertex of the base graph, node ``n + f`` is face ``f``.
    Radial edge ``r`` joins ``vertex_of[r]`` and ``n + face_of[r]``; it is the
    corner ``corner_of[r]`` (a base dart) at position ``position_of[r]`` of
    the facial walk.
    """

    base: EmbeddedGraph
    embedding: EmbeddedGraph
    vertex_of: tuple[int, ...]
    face_of: tuple[int, ...]
    position_of: tuple[int, ...]
    corner_of: tuple[int, ...]
    edge_of_corner: tuple[int, ...]

    @property
    def num_nodes(self) -> int:
        return self.embedding.n

    def is_face_node(self, x: int) -> bool:
        return x >= self.base.n

    def corner_edge(self, v: int, f: int) -> int:
        """Radial edge of the first occurrence of vertex v on face f."""
        walk = self.base.faces[f]
        for i, c in enumerate(walk.corners):
            if walk.vertices[i] == v:
                return self.edge_of_corner[c]
        raise ValueError(f"vertex {v} is not on face {f}")


def radial_graph(emb: EmbeddedGraph) -> RadialGraph:
    return _radial_cached(emb)


def _radial_cached(emb: EmbeddedGraph) -> RadialGraph:
    cached = emb.__dict__.get("_radial")
    if cached is not None:
        return cached
    n = emb.n
    faces = emb.faces
    vertex_of, face_of, position_of, corner_of, signs = [], [], [], [], []
    edge_of_corner = [-1] * (2 * len(emb.edges))
    for f, walk in enumerate(faces):
        for i, c in enumerate(walk.corners):
            edge_of_corner[c] = len(vertex_of)
            vertex_of.append(walk.vertices[i])
            face_of.append(f)
            position_of.append(i)
            corner_of.append(c)
            signs.append(walk.sides[i])
    redges = [(v, n + f) for v, f in zip(vertex_of, face_of)]
    rotation: list[list[int]] = []
    for v in range(n):
        rotation.append([2 * edge_of_corner[a] for a in emb.rotation[v]])
    for f, walk in enumerate(faces):
        base = edge_of_corner[walk.corners[0]]
        L = len(walk)
        rotation.append([2 * (base + i) + 1 for i in reversed(range(L))])
    remb = build_embedding(n + len(faces), redges, rotation, signs, allow_multi=True)
    rad = RadialGraph(emb, remb, tuple(vertex_of), tuple(face_of), tuple(position_of),
                      tuple(corner_of), tuple(edge_of_corner))
    emb.__dict__["_radial"] = rad
    return rad


# -- .emb files -----------------------------------------------------------------


class EmbParseError(EmbeddingError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_emb(text: str) -> EmbeddedGraph:
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((i, s.split()))
    if not lines or lines[0][1] != ["emb", "1"]:
        raise EmbParseError("expected header 'emb 1'", lines[0][0] if lines else 1)
    if len(lines) < 2 or lines[1][1][0] != "n" or len(lines[1][1]) != 2:
        raise EmbParseError("expected 'n <vertex-count>'", lines[1][0] if len(lines) > 1 else None)
    try:
        n = int(lines[1][1][1])
    except ValueError:
        raise EmbParseError("vertex count is not an integer", lines[1][0]) from None
    edges: dict[int, tuple[int, int, int]] = {}
    rot: dict[int, list[int]] = {}
    for ln, tok in lines[2:]:
        try:
            if tok[0] == "e":
                if len(tok) != 5 or tok[4] not in "+-" or len(tok[4]) != 1:
                    raise EmbParseError("expected 'e <id> <u> <v> <+|->'", ln)
                eid, u, v = int(tok[1]), int(tok[2]), int(tok[3])
                if eid in edges:
                    raise EmbParseError(f"edge id {eid} defined twice", ln)
                edges[eid] = (u, v, 1 if tok[4] == "+" else -1)
            elif tok[0] == "rot":
                if len(tok) < 2:
                    raise EmbParseError("expected 'rot <v> <edge-id> ...'", ln)
                v = int(tok[1])
                if v in rot:
                    raise EmbParseError(f"rotation of vertex {v} given twice", ln)
                rot[v] = [int(x) for x in tok[2:]]
            else:
                raise EmbParseError(f"unknown record '{tok[0]}'", ln)
        except ValueError as exc:
            if isinstance(exc, EmbParseError):
                raise
            raise EmbParseError("malformed integer", ln) from None
    if sorted(edges) != list(range(len(edges))):
        raise EmbParseError("edge ids must be 0..m-1")
    if sorted(rot) != list(range(n)):
        raise EmbParseError("expected exactly one 'rot' line per vertex")
    edge_list = [edges[e][:2] for e in range(len(edges))]
    sig = [edges[e][2] for e in range(len(edges))]
    rotation = [rot.get(v, []) for v in range(n)]
    return from_edge_rotation(n, edge_list, rotation, sig)


def format_emb(emb: EmbeddedGraph) -> str:
    out = ["emb 1", f"n {emb.n}"]
    for e, ((u, v), s) in enumerate(zip(emb.edges, emb.signature)):
        out.append(f"e {e} {u} {v} {'+' if s == 1 else '-'}")
    for v, rot in enumerate(emb.rotation):
        out.append(" ".join(["rot", str(v)] + [str(d >> 1) for d in rot]))
    return "\n".join(out) + "\n"


def read_emb(path) -> EmbeddedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_emb(fh.read())


def write_emb(emb: EmbeddedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_emb(emb))
