"""Surgery on embedded graphs: cutting, contraction, deletion and ΔY/YΔ moves.

All operations return fresh embeddings.  Internally they edit a mutable
draft (edge records plus per-vertex dart lists) and freeze it through
``build_embedding`` so every output is validated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .curves import (
    CurveClassification,
    CurveError,
    FaceChain,
    PreconditionError,
    chain_radial_cycle,
    classify_cycle,
    cycle_edges,
    cycle_regions,
    face_width,
    is_nice,
    nonseparating_face_width,
)
from .embedding import (
    EmbeddedGraph,
    EmbeddingError,
    build_embedding,
    components,
    euler_genus,
    format_emb,
    induced_embedding,
    parse_emb,
    radial_graph,
)
from .graphs import Graph, GraphError


class SurgeryError(ValueError):
    pass


class _Draft:
    def __init__(self, emb: EmbeddedGraph):
        self.edges: list[list[int] | None] = [[u, v, s] for (u, v), s in zip(emb.edges, emb.signature)]
        self.rot: dict[int, list[int]] = {v: list(r) for v, r in enumerate(emb.rotation)}

    def origin(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def sign(self, e: int) -> int:
        return self.edges[e][2]

    def switch(self, v: int) -> None:
        self.rot[v].reverse()
        for d in self.rot[v]:
            self.edges[d >> 1][2] *= -1

    def add_vertex(self) -> int:
        v = max(self.rot) + 1 if self.rot else 0
        self.rot[v] = []
        return v

    def add_edge(self, u: int, v: int, sign: int = 1) -> int:
        self.edges.append([u, v, sign])
        return len(self.edges) - 1

    def delete_edge(self, e: int) -> None:
        u, v, _ = self.edges[e]
        self.rot[u].remove(2 * e)
        self.rot[v].remove(2 * e + 1)
        self.edges[e] = None

    def remove_vertex(self, v: int) -> None:
        if self.rot[v]:
            raise SurgeryError(f"vertex {v} still has incident edges")
        del self.rot[v]

    def freeze(self, allow_multi: bool = False):
        """Return (embedding, vertex map old->new, edge map old->new)."""
        vmap = {v: i for i, v in enumerate(sorted(self.rot))}
        emap = {}
        edges, sig = [], []
        for e, rec in enumerate(self.edges):
            if rec is None:
                continue
            emap[e] = len(edges)
            edges.append((vmap[rec[0]], vmap[rec[1]]))
            sig.append(rec[2])
        rotation = []
        for v in sorted(self.rot):
            rotation.append([2 * emap[d >> 1] + (d & 1) for d in self.rot[v]])
        emb = build_embedding(len(vmap), edges, rotation, sig, allow_multi=allow_multi)
        return emb, vmap, emap


# -- deletion and contraction -------------------------------------------------------


def delete_edge(emb: EmbeddedGraph, e: int) -> EmbeddedGraph:
    if not 0 <= e < emb.num_edges:
        raise SurgeryError(f"no edge {e}")
    dr = _Draft(emb)
    dr.delete_edge(e)
    return dr.freeze(emb.multigraph)[0]


def contract_edge(emb: EmbeddedGraph, e: int) -> EmbeddedGraph:
    """Contract edge ``e``; the merged vertex keeps the smaller id.

    Parallel edges created by the contraction are collapsed onto the one
    with the smaller edge id.
    """
    if not 0 <= e < emb.num_edges:
        raise SurgeryError(f"no edge {e}")
    dr = _Draft(emb)
    u, v, _ = dr.edges[e]
    if u > v:
        u, v = v, u
    if dr.sign(e) == -1:
        dr.switch(v)
    du, dv = dr.rot[u], dr.rot[v]
    i = du.index(2 * e if dr.origin(2 * e) == u else 2 * e + 1)
    j = dv.index(2 * e if dr.origin(2 * e) == v else 2 * e + 1)
    merged = du[i + 1:] + du[:i] + dv[j + 1:] + dv[:j]
    dr.edges[e] = None
    for d in dv[j + 1:] + dv[:j]:
        dr.edges[d >> 1][d & 1] = u
    dr.rot[u] = merged
    dr.rot[v] = []
    dr.remove_vertex(v)
    # loops cannot arise from a simple graph; collapse parallels
    if not emb.multigraph:
        seen: dict[int, int] = {}
        for d in list(dr.rot[u]):
            f = d >> 1
            if dr.edges[f] is None:
                continue
            w = dr.head(d)
            if w == u:
                dr.delete_edge(f)
                continue
            if w in seen:
                keep = seen[w]
                drop = f if f > keep else keep
                seen[w] = min(f, keep)
                dr.delete_edge(drop)
            else:
                seen[w] = f
    return dr.freeze(emb.multigraph)[0]


# -- cutting ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    pieces: tuple[EmbeddedGraph, ...]
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]  # per piece, boundary cycles
    side_map: dict  # original vertex -> tuple of (piece, vertex)

    def format_cutmap(self) -> str:
        out = ["cutmap 1", f"pieces {len(self.pieces)}"]
        for v in sorted(self.side_map):
            out.append(" ".join(["copy", str(v)] + [f"{p}:{x}" for p, x in self.side_map[v]]))
        for p, bds in enumerate(self.boundaries):
            for b in bds:
                out.append(" ".join(["boundary", str(p)] + [str(x) for x in b]))
        return "\n".join(out) + "\n"

    def write(self, stem) -> list[str]:
        paths = []
        for p, piece in enumerate(self.pieces):
            path = f"{stem}.piece{p}.emb"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(format_emb(piece))
            paths.append(path)
        path = f"{stem}.cutmap"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.format_cutmap())
        return paths + [path]

    @classmethod
    def read(cls, stem) -> "CutResult":
        with open(f"{stem}.cutmap", encoding="utf-8") as fh:
            lines = [ln.split() for ln in fh if ln.strip()]
        if lines[0] != ["cutmap", "1"] or lines[1][0] != "pieces":
            raise SurgeryError("bad cutmap header")
        k = int(lines[1][1])
        pieces = []
        for p in range(k):
            with open(f"{stem}.piece{p}.emb", encoding="utf-8") as fh:
                pieces.append(parse_emb(fh.read()))
        side_map: dict[int, tuple] = {}
        bds: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
        for tok in lines[2:]:
            if tok[0] == "copy":
                side_map[int(tok[1])] = tuple(tuple(int(x) for x in t.split(":")) for t in tok[2:])
            elif tok[0] == "boundary":
                bds[int(tok[1])].append(tuple(int(x) for x in tok[2:]))
            else:
                raise SurgeryError(f"unknown cutmap record {tok[0]!r}")
        return cls(tuple(pieces), tuple(tuple(b) for b in bds), side_map)


def _cut_draft(emb: EmbeddedGraph, vertices: Sequence[int], edges: Sequence[int]):
    """Split a cycle in a draft; returns (draft, left copies, right copies, boundary edges)."""
    L = len(vertices)
    dr = _Draft(emb)
    for i in range(L - 1):
        if dr.sign(edges[i]) == -1:
            dr.switch(vertices[i + 1])
    one_sided = dr.sign(edges[L - 1]) == -1

    def dart_at(x, e):
        return 2 * e if dr.origin(2 * e) == x else 2 * e + 1

    left, right = [], []
    sides = []
    for i, x in enumerate(vertices):
        rot = dr.rot[x]
        din, dout = dart_at(x, edges[i - 1]), dart_at(x, edges[i])
        a, b = rot.index(dout), rot.index(din)
        k = len(rot)
        lpart = [rot[(a + t) % k] for t in range(1, (b - a) % k)]
        rpart = [rot[(b + t) % k] for t in range(1, (a - b) % k)]
        sides.append((lpart, rpart))
    for e in edges:
        dr.edges[e] = None
    new_edges = []
    for i, x in enumerate(vertices):
        lx, rx = dr.add_vertex(), dr.add_vertex()
        left.append(lx)
        right.append(rx)
        lpart, rpart = sides[i]
        for d in lpart:
            dr.edges[d >> 1][d & 1] = lx
        for d in rpart:
            dr.edges[d >> 1][d & 1] = rx
        dr.rot[lx] = lpart
        dr.rot[rx] = rpart
        dr.rot[x] = []
    for i in range(L - 1):
        el = dr.add_edge(left[i], left[i + 1])
        er = dr.add_edge(right[i], right[i + 1])
        new_edges += [el, er]
        dr.rot[left[i]].insert(0, 2 * el)
        dr.rot[left[i + 1]].append(2 * el + 1)
        dr.rot[right[i]].append(2 * er)
        dr.rot[right[i + 1]].insert(0, 2 * er + 1)
    if one_sided:
        ea = dr.add_edge(left[L - 1], right[0], -1)
        eb = dr.add_edge(right[L - 1], left[0], -1)
        dr.rot[left[L - 1]].insert(0, 2 * ea)
        dr.rot[right[0]].insert(0, 2 * ea + 1)
        dr.rot[right[L - 1]].append(2 * eb)
        dr.rot[left[0]].append(2 * eb + 1)
        new_edges += [ea, eb]
    else:
        el = dr.add_edge(left[L - 1], left[0])
        er = dr.add_edge(right[L - 1], right[0])
        dr.rot[left[L - 1]].insert(0, 2 * el)
        dr.rot[left[0]].append(2 * el + 1)
        dr.rot[right[L - 1]].append(2 * er)
        dr.rot[right[0]].insert(0, 2 * er + 1)
        new_edges += [el, er]
    for x in vertices:
        dr.remove_vertex(x)
    return dr, left, right, one_sided, new_edges


def _split_pieces(emb: EmbeddedGraph, origin_of: dict[int, int], boundary_cycles: list[list[int]]) -> CutResult:
    comps = components(emb)
    pieces, bds = [], []
    where = {}
    for p, comp in enumerate(comps):
        sub, keep = induced_embedding(emb, comp)
        idx = {v: i for i, v in enumerate(keep)}
        pieces.append(sub)
        for v in keep:
            where[v] = (p, idx[v])
        bds.append(tuple(tuple(idx[v] for v in cyc) for cyc in boundary_cycles if cyc[0] in idx))
    side_map: dict[int, list] = {}
    for v, o in origin_of.items():
        if v in where:
            side_map.setdefault(o, []).append(where[v])
    return CutResult(tuple(pieces), tuple(bds), {k: tuple(v) for k, v in sorted(side_map.items())})


def cut_along(emb: EmbeddedGraph, cycle: Sequence[int], classification: CurveClassification | None = None) -> CutResult:
    """Cut along a simple cycle of the graph and cap the new cuffs."""
    verts = list(cycle)
    if len(verts) > 1 and verts[0] == verts[-1]:
        verts = verts[:-1]
    try:
        edges = cycle_edges(emb, verts)
        actual = cycle_regions(emb, verts, edges).classification
    except CurveError as exc:
        raise SurgeryError(str(exc)) from None
    if classification is not None and classification != actual:
        raise SurgeryError(f"classification mismatch: cycle is {actual}")
    dr, left, right, one_sided, _ = _cut_draft(emb, verts, edges)
    out, vmap, _ = dr.freeze()
    origin_of = {}
    for v in range(emb.n):
        if v in vmap:
            origin_of[vmap[v]] = v
    for i, x in enumerate(verts):
        origin_of[vmap[left[i]]] = x
        origin_of[vmap[right[i]]] = x
    if one_sided:
        bcs = [[vmap[v] for v in left + right]]
    else:
        bcs = [[vmap[v] for v in left], [vmap[v] for v in right]]
    res = _split_pieces(out, origin_of, bcs)
    _check_cut_euler(emb, res, actual)
    return res


def _check_cut_euler(emb: EmbeddedGraph, res: CutResult, cls: CurveClassification) -> None:
    eg = euler_genus(emb).euler_genus
    total = sum(euler_genus(p).euler_genus for p in res.pieces)
    if not cls.two_sided:
        expect = eg - 1
    elif cls.separating:
        expect = eg
    else:
        expect = eg - 2
    if total != expect:
        raise SurgeryError(f"Euler accounting failed: got {total}, expected {expect}")


def cut_along_chain(emb: EmbeddedGraph, chain: FaceChain) -> CutResult:
    """Cut along the curve of a nice closed face-chain and cap the cuffs.

    Chords are drawn through the faces of the chain, the resulting cycle is
    cut, and the chord copies are erased again, so each chain vertex is split
    into two copies and the cuffs become parts of larger faces.
    """
    if not chain.closed or not is_nice(chain):
        raise SurgeryError("cutting needs a nice closed face-chain")
    if len(chain) < 2:
        raise SurgeryError("cutting along a single-face chain is not supported")
    rad = radial_graph(emb)
    _, redges = chain_radial_cycle(emb, chain)
    dr = _Draft(emb)
    k = len(chain)
    chords = []
    inserts = []  # (vertex, corner dart, chord dart)
    for i in range(k):
        x, y = chain.vertices[i], chain.vertices[(i + 1) % k]
        r1, r2 = redges[2 * i], redges[2 * i + 1]
        c1, c2 = rad.corner_of[r1], rad.corner_of[r2]
        f = chain.faces[i]
        walk = emb.faces[f]
        s1 = walk.sides[rad.position_of[r1]]
        s2 = walk.sides[rad.position_of[r2]]
        e = dr.add_edge(x, y, s1 * s2)
        chords.append(e)
        inserts.append((x, c1, 2 * e))
        inserts.append((y, c2, 2 * e + 1))
    for x, c, d in inserts:
        rot = dr.rot[x]
        rot.insert(rot.index(c) + 1, d)
    withc, vmap, emap = dr.freeze(allow_multi=True)
    if euler_genus(withc).euler_genus != euler_genus(emb).euler_genus:
        raise SurgeryError("chord insertion changed the surface")
    cverts = [vmap[x] for x in chain.vertices]
    cedges = [emap[e] for e in chords]
    dr2, left, right, one_sided, new_edges = _cut_draft(withc, cverts, cedges)
    for e in new_edges:
        dr2.delete_edge(e)
    # copies left without edges are bare points of the surface
    for v in left + right:
        if not dr2.rot[v]:
            dr2.remove_vertex(v)
    out, vmap2, _ = dr2.freeze()
    origin_of = {}
    inv = {nv: ov for ov, nv in vmap.items()}
    for v, nv in vmap2.items():
        if v < withc.n:
            origin_of[nv] = inv[v]
    for i in range(k):
        for v in (left[i], right[i]):
            if v in vmap2:
                origin_of[vmap2[v]] = chain.vertices[i]
    seq = left + right if one_sided else left
    bcs = [[vmap2[v] for v in seq if v in vmap2]]
    if not one_sided:
        bcs.append([vmap2[v] for v in right if v in vmap2])
    return _split_pieces(out, origin_of, [b for b in bcs if b])


@dataclass(frozen=True)
class CutWidthReport:
    fw: int | None
    nsfw: int | None
    fw_after: int | None
    nsfw_after: int | None
    pieces: int

    @staticmethod
    def _at_least(after, before) -> bool:
        if before is None:
            return after is None
        if after is None:
            return True
        return after >= math.ceil(before / 2)

    @property
    def fw_ok(self) -> bool:
        return self._at_least(self.fw_after, self.fw)

    @property
    def nsfw_ok(self) -> bool:
        return self._at_least(self.nsfw_after, self.nsfw)

    @property
    def passed(self) -> bool:
        return self.fw_ok and self.nsfw_ok


def _min_width(values):
    vals = [v for v in values if v is not None]
    return min(vals) if vals else None


def cut_width_inequality_check(emb: EmbeddedGraph, chain: FaceChain, *, cut: CutResult | None = None) -> CutWidthReport:
    """Cut through a minimal non-separating chain and compare widths.

    ``cut`` replaces the computed cut (used to inject corrupted cuts in tests).
    """
    fw = face_width(emb).value
    nsfw = nonseparating_face_width(emb).value
    try:
        cls = classify_cycle(emb, chain)
    except CurveError as exc:
        raise PreconditionError(str(exc)) from None
    if cls.separating or len(chain) != nsfw:
        raise PreconditionError("chain is not a minimal non-separating chain")
    res = cut if cut is not None else cut_along_chain(emb, chain)
    fws, nsfws = [], []
    for piece in res.pieces:
        if piece.n == 1 and piece.num_edges == 0:
            continue
        fws.append(face_width(piece).value)
        nsfws.append(nonseparating_face_width(piece).value)
    return CutWidthReport(fw, nsfw, _min_width(fws), _min_width(nsfws), len(res.pieces))


# -- ΔY and YΔ -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """A ΔY (``kind='dy'``, ``triangle``) or YΔ (``kind='yd'``, ``vertex``) step."""

    kind: str
    triangle: tuple[int, int, int] | None = None
    vertex: int | None = None

    def format(self) -> str:
        if self.kind == "dy":
            return "dy " + " ".join(map(str, self.triangle))
        return f"yd {self.vertex}"

    @classmethod
    def parse(cls, text: str) -> "Move":
        tok = text.split()
        if tok[0] == "dy" and len(tok) == 4:
            return cls("dy", tuple(sorted(int(t) for t in tok[1:])))
        if tok[0] == "yd" and len(tok) == 2:
            return cls("yd", vertex=int(tok[1]))
        raise SurgeryError(f"bad move {text!r}")


def _graph_delta_to_wye(g: Graph, tri: Sequence[int]) -> Graph:
    u, v, w = tri
    if len({u, v, w}) != 3 or not (g.has_edge(u, v) and g.has_edge(v, w) and g.has_edge(u, w)):
        raise SurgeryError(f"{tuple(tri)} is not a triangle")
    drop = {tuple(sorted(p)) for p in ((u, v), (v, w), (u, w))}
    y = g.n
    es = [e for e in g.edges if e not in drop] + [(u, y), (v, y), (w, y)]
    return Graph.from_edges(g.n + 1, es)


def _graph_wye_to_delta(g: Graph, y: int) -> Graph:
    if not 0 <= y < g.n:
        raise SurgeryError(f"no vertex {y}")
    nb = sorted(g.adj[y])
    if len(nb) != 3:
        raise SurgeryError(f"vertex {y} has degree {len(nb)}, not 3")
    a, b, c = nb
    if g.has_edge(a, b) or g.has_edge(b, c) or g.has_edge(a, c):
        raise SurgeryError(f"neighbours of {y} are not pairwise non-adjacent")
    relabel = lambda x: x if x < y else x - 1  # noqa: E731
    es = [(relabel(p), relabel(q)) for p, q in g.edges if y not in (p, q)]
    es += [(relabel(a), relabel(b)), (relabel(b), relabel(c)), (relabel(a), relabel(c))]
    try:
        return Graph.from_edges(g.n - 1, es)
    except GraphError as exc:
        raise SurgeryError(str(exc)) from None


def delta_to_wye(g, triangle: Sequence[int]):
    """Replace triangle ``uvw`` by a new vertex ``y = n`` adjacent to u, v, w."""
    if isinstance(g, Graph):
        return _graph_delta_to_wye(g, triangle)
    return _emb_delta_to_wye(g, triangle)


def wye_to_delta(g, y: int):
    """Replace degree-3 vertex ``y`` by a triangle on its neighbours.

    Vertices above ``y`` shift down by one.
    """
    if isinstance(g, Graph):
        return _graph_wye_to_delta(g, y)
    return _emb_wye_to_delta(g, y)


def _emb_delta_to_wye(emb: EmbeddedGraph, tri: Sequence[int]) -> EmbeddedGraph:
    u, v, w = tri
    try:
        es = [emb.edge_between(u, v), emb.edge_between(v, w), emb.edge_between(u, w)]
    except EmbeddingError:
        raise SurgeryError(f"{tuple(tri)} is not a triangle") from None
    if len({u, v, w}) != 3:
        raise SurgeryError(f"{tuple(tri)} is not a triangle")
    dr = _Draft(emb)
    if dr.sign(es[0]) == -1:
        dr.switch(v)
    if dr.sign(es[2]) == -1:
        dr.switch(w)
    switched, _, _ = dr.freeze()
    face = None
    for f, walk in enumerate(switched.faces):
        if len(walk) == 3 and walk.vertex_set == {u, v, w}:
            face = walk
            break
    if face is None:
        raise SurgeryError(f"triangle {tuple(tri)} is not facial")
    dr = _Draft(switched)
    y = dr.add_vertex()
    corner = {face.vertices[i]: face.corners[i] for i in range(3)}
    new = {}
    for x in (u, v, w):
        new[x] = dr.add_edge(x, y)
    for x in (u, v, w):
        rot = dr.rot[x]
        c = corner[x]
        i = rot.index(c)
        nxt = rot[(i + 1) % len(rot)]
        # the corner pair (c, nxt) is the two triangle darts at x
        rot[i] = 2 * new[x]
        rot.remove(nxt)
    first_other = switched.head(corner[u])  # c runs from this neighbour to the other
    other = ({v, w} - {first_other}).pop()
    order = [u, first_other, other]
    for e in es:
        dr.edges[e] = None
    f_before = len(emb.faces)
    for cand in (order, [u, other, first_other]):
        dr.rot[y] = [2 * new[x] + 1 for x in cand]
        out = dr.freeze()[0]
        if len(out.faces) == f_before - 1 and euler_genus(out) == euler_genus(emb):
            return out
    raise SurgeryError("ΔY failed to preserve the surface")


def _emb_wye_to_delta(emb: EmbeddedGraph, y: int) -> EmbeddedGraph:
    if not 0 <= y < emb.n:
        raise SurgeryError(f"no vertex {y}")
    if emb.degree(y) != 3:
        raise SurgeryError(f"vertex {y} has degree {emb.degree(y)}, not 3")
    nb = emb.neighbors(y)
    a, b, c = nb
    if any(frozenset(p) in emb.edge_index for p in ((a, b), (b, c), (a, c))):
        raise SurgeryError(f"neighbours of {y} are not pairwise non-adjacent")
    dr = _Draft(emb)
    for d in emb.rotation[y]:
        if dr.sign(d >> 1) == -1:
            dr.switch(emb.head(d))
    order = [dr.head(d) for d in dr.rot[y]]
    ys = {dr.head(d): d ^ 1 for d in dr.rot[y]}
    tri = {}
    for i in range(3):
        p, q = order[i], order[(i + 1) % 3]
        tri[(p, q)] = tri[(q, p)] = dr.add_edge(p, q)
    for i, x in enumerate(order):
        nxt, prv = order[(i + 1) % 3], order[(i - 1) % 3]
        e1, e2 = tri[(x, nxt)], tri[(x, prv)]
        d1 = 2 * e1 if dr.edges[e1][0] == x else 2 * e1 + 1
        d2 = 2 * e2 if dr.edges[e2][0] == x else 2 * e2 + 1
        rot = dr.rot[x]
        i0 = rot.index(ys[x])
        rot[i0:i0 + 1] = [d1, d2]
    for d in dr.rot[y]:
        dr.edges[d >> 1] = None
    dr.rot[y] = []
    dr.remove_vertex(y)
    out = dr.freeze()[0]
    if len(out.faces) != len(emb.faces) + 1 or euler_genus(out) != euler_genus(emb):
        raise SurgeryError("YΔ failed to preserve the surface")
    return out
