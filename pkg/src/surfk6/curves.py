"""Closed curves on embedded graphs: classification and face-width.

Curves meeting the graph only in vertices are cycles of the radial graph,
so both widths reduce to shortest cycles of a given class in the radial
embedding.  Contractible and separating classes both satisfy the 3-path
condition, hence a shortest cycle outside either class is a fundamental
cycle of some BFS tree (tree path + edge + tree path).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .embedding import (
    DisconnectedError,
    EmbeddedGraph,
    EmbeddingError,
    euler_genus,
    radial_graph,
)

NON_CONTRACTIBLE = "non-contractible"
NON_SEPARATING = "non-separating"
CLASSES = (NON_CONTRACTIBLE, NON_SEPARATING)


class CurveError(ValueError):
    pass


class PreconditionError(CurveError):
    pass


@dataclass(frozen=True)
class CurveClassification:
    two_sided: bool
    contractible: bool
    separating: bool

    @property
    def sidedness(self) -> str:
        return "two-sided" if self.two_sided else "one-sided"

    @property
    def homotopy(self) -> str:
        return "contractible" if self.contractible else "non-contractible"

    @property
    def homology(self) -> str:
        return "separating" if self.separating else "non-separating"

    def in_class(self, klass: str) -> bool:
        """True when the curve is a width witness for ``klass``."""
        if klass == NON_CONTRACTIBLE:
            return not self.contractible
        if klass == NON_SEPARATING:
            return not self.separating
        raise CurveError(f"unknown curve class {klass!r}")

    def __str__(self) -> str:
        return f"{self.sidedness}, {self.homotopy}, {self.homology}"


@dataclass(frozen=True)
class CycleRegions:
    """Pieces of the surface after cutting along a cycle of an embedding."""

    classification: CurveClassification
    face_label: tuple[int, ...]  # component index per face
    euler_char: tuple[int, ...]  # chi of each bordered piece


def cycle_regions(emb: EmbeddedGraph, vertices: Sequence[int], edges: Sequence[int]) -> CycleRegions:
    """Cut-and-count on a simple cycle given by its vertices and edge ids."""
    if len(vertices) != len(edges) or not vertices:
        raise CurveError("cycle needs as many edges as vertices")
    if len(set(vertices)) != len(vertices) or len(set(edges)) != len(edges):
        raise CurveError("cycle is not simple")
    L = len(vertices)
    for i, e in enumerate(edges):
        a, b = emb.edges[e]
        if {a, b} != {vertices[i], vertices[(i + 1) % L]}:
            raise CurveError(f"edge {e} does not join consecutive cycle vertices")
    on_v = set(vertices)
    on_e = set(edges)
    F = len(emb.faces)
    parent = list(range(F))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for e, (f1, f2) in enumerate(emb.edge_faces):
        if e not in on_e:
            union(f1, f2)
    corner_face = emb.corner_face
    for v in range(emb.n):
        if v in on_v:
            continue
        rot = emb.rotation[v]
        for d in rot[1:]:
            union(corner_face[rot[0]], corner_face[d])
    roots: dict[int, int] = {}
    label = []
    for f in range(F):
        label.append(roots.setdefault(find(f), len(roots)))
    k = len(roots)
    chi = [0] * k
    for f in range(F):
        chi[label[f]] += 1
    for e, (f1, _) in enumerate(emb.edge_faces):
        if e not in on_e:
            chi[label[f1]] -= 1
    for v in range(emb.n):
        if v not in on_v and emb.rotation[v]:
            chi[label[corner_face[emb.rotation[v][0]]]] += 1
    sign = 1
    for e in edges:
        sign *= emb.signature[e]
    two_sided = sign == 1
    separating = k > 1
    if k > 2:
        raise CurveError("cutting along a simple cycle produced more than two pieces")
    contractible = separating and two_sided and any(c == 1 for c in chi)
    return CycleRegions(CurveClassification(two_sided, contractible, separating),
                        tuple(label), tuple(chi))


def cycle_edges(emb: EmbeddedGraph, vertices: Sequence[int]) -> list[int]:
    L = len(vertices)
    if L < 3:
        raise CurveError("a cycle of a simple graph has at least three vertices")
    try:
        return [emb.edge_between(vertices[i], vertices[(i + 1) % L]) for i in range(L)]
    except EmbeddingError as exc:
        raise CurveError(str(exc)) from None


# -- face chains ------------------------------------------------------------------


@dataclass(frozen=True)
class FaceChain:
    """``x0, F0, x1, ..., F_{n-1}, x_n``; closed chains store ``x_n = x0`` implicitly.

    ``radial`` optionally pins the radial edges (corners) used, two per face.
    """

    vertices: tuple[int, ...]
    faces: tuple[int, ...]
    closed: bool = True
    radial: tuple[int, ...] | None = None
    embedding: EmbeddedGraph | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        need = len(self.faces) if self.closed else len(self.faces) + 1
        if len(self.vertices) != need:
            raise CurveError("face chain has inconsistent vertex/face counts")

    def __len__(self) -> int:
        return len(self.faces)

    @property
    def entries(self) -> tuple[int, ...]:
        out = []
        for i, f in enumerate(self.faces):
            out += [self.vertices[i], f]
        out.append(self.vertices[0] if self.closed else self.vertices[-1])
        return tuple(out)

    def format(self) -> str:
        return "chain " + " ".join(str(x) for x in self.entries)

    @classmethod
    def parse(cls, line: str, embedding: EmbeddedGraph | None = None) -> "FaceChain":
        tok = line.split()
        if not tok or tok[0] != "chain" or len(tok) % 2 != 0:
            raise CurveError("expected 'chain x0 F0 x1 ... x_n'")
        vals = [int(t) for t in tok[1:]]
        xs, fs = vals[0::2], vals[1::2]
        closed = xs[0] == xs[-1] and len(fs) > 0
        if closed:
            xs = xs[:-1]
        return cls(tuple(xs), tuple(fs), closed, None, embedding)


def chain_radial_cycle(emb: EmbeddedGraph, chain: FaceChain) -> tuple[list[int], list[int]]:
    """Radial nodes and edges realizing a closed chain."""
    if not chain.closed:
        raise CurveError("chain is not closed")
    rad = radial_graph(emb)
    n = emb.n
    nodes, edges = [], []
    k = len(chain)
    for i in range(k):
        x, f, y = chain.vertices[i], chain.faces[i], chain.vertices[(i + 1) % k]
        if not 0 <= f < len(emb.faces):
            raise CurveError(f"unknown face {f}")
        if chain.radial is not None:
            e1, e2 = chain.radial[2 * i], chain.radial[2 * i + 1]
        else:
            try:
                e1, e2 = rad.corner_edge(x, f), rad.corner_edge(y, f)
            except ValueError as exc:
                raise CurveError(str(exc)) from None
        nodes += [x, n + f]
        edges += [e1, e2]
    return nodes, edges


def is_nice(chain: FaceChain) -> bool:
    if not chain.closed:
        raise CurveError("niceness is defined for closed chains")
    return len(set(chain.faces)) == len(chain.faces) and len(set(chain.vertices)) == len(chain.vertices)


def is_clean(chain: FaceChain, emb: EmbeddedGraph | None = None) -> bool:
    """Consecutive faces meet only in the chain entry between them (a vertex,
    or a single edge through it); non-consecutive faces are disjoint."""
    emb = emb or chain.embedding
    if emb is None:
        raise CurveError("is_clean needs the embedding")
    if not is_nice(chain):
        return False
    k = len(chain)
    fv = [emb.faces[f].vertex_set for f in chain.faces]
    fe = [emb.faces[f].edge_set for f in chain.faces]
    for i in range(k):
        j = (i + 1) % k
        x = chain.vertices[j]
        common, shared = fv[i] & fv[j], fe[i] & fe[j]
        if common == {x} and not shared:
            continue
        # chain entries are vertices; a single shared edge through x stands in for an edge entry
        if len(shared) == 1 and common == set(emb.edges[next(iter(shared))]) and x in common:
            continue
        return False
    for i in range(k):
        for j in range(i + 1, k):
            if j - i == 1 or j - i == k - 1:
                continue
            if fv[i] & fv[j]:
                return False
    return True


# -- classification --------------------------------------------------------------


def classify_cycle(emb: EmbeddedGraph, cycle) -> CurveClassification:
    """Classify a simple cycle of ``emb`` (vertex list) or a nice closed face chain."""
    return _regions_of(emb, cycle).classification


def _regions_of(emb: EmbeddedGraph, cycle) -> CycleRegions:
    if isinstance(cycle, FaceChain):
        if not is_nice(cycle):
            raise CurveError("face chain is not nice")
        nodes, edges = chain_radial_cycle(emb, cycle)
        return cycle_regions(radial_graph(emb).embedding, nodes, edges)
    verts = list(cycle)
    if len(verts) > 1 and verts[0] == verts[-1]:
        verts = verts[:-1]
    return cycle_regions(emb, verts, cycle_edges(emb, verts))


# -- widths ----------------------------------------------------------------------------


@dataclass(frozen=True)
class WidthCertificate:
    klass: str
    value: int | None  # None means unbounded (sphere)
    witness: FaceChain | None

    @property
    def unbounded(self) -> bool:
        return self.value is None

    def format(self) -> str:
        if self.unbounded:
            return f"{self.klass} width unbounded"
        return f"{self.klass} width {self.value}\n{self.witness.format()}"


class _RadialClassifier:
    """Caches classifications of radial cycles keyed by their edge sets."""

    def __init__(self, emb: EmbeddedGraph):
        self.emb = emb
        self.rad = radial_graph(emb)
        self.R = self.rad.embedding
        self.cache: dict[frozenset, CurveClassification] = {}

    def classify(self, nodes: list[int], edges: list[int]) -> CurveClassification:
        key = frozenset(edges)
        c = self.cache.get(key)
        if c is None:
            c = cycle_regions(self.R, nodes, edges).classification
            self.cache[key] = c
        return c

    def dart_key(self, nodes: list[int], edges: list[int]) -> tuple[int, ...]:
        R = self.R
        L = len(nodes)
        fwd = [R.dart(nodes[i], edges[i]) for i in range(L)]
        bwd = [d ^ 1 for d in reversed(fwd)]
        best = None
        for seq in (fwd, bwd):
            i = seq.index(min(seq))
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
        return best

    def to_chain(self, nodes: list[int], edges: list[int]) -> FaceChain:
        n = self.emb.n
        L = len(nodes)
        key = self.dart_key(nodes, edges)
        # rebuild the node/edge order of the canonical dart sequence
        R = self.R
        nodes = [R.origin(d) for d in key]
        edges = [d >> 1 for d in key]
        vpos = [i for i in range(L) if nodes[i] < n]
        start = min(vpos, key=lambda i: nodes[i])
        nodes = nodes[start:] + nodes[:start]
        edges = edges[start:] + edges[:start]
        xs = tuple(nodes[0::2])
        fs = tuple(x - n for x in nodes[1::2])
        return FaceChain(xs, fs, True, tuple(edges), self.emb)


def _bfs(R: EmbeddedGraph, root: int):
    N = R.n
    dist = [-1] * N
    par_edge = [-1] * N
    branch = [-1] * N
    dist[root] = 0
    q = deque([root])
    while q:
        x = q.popleft()
        for d in R.rotation[x]:
            y = R.head(d)
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                par_edge[y] = d >> 1
                branch[y] = y if x == root else branch[x]
                q.append(y)
    return dist, par_edge, branch


def _tree_path(R: EmbeddedGraph, par_edge, x):
    nodes, edges = [x], []
    while par_edge[x] >= 0:
        e = par_edge[x]
        a, b = R.edges[e]
        x = a if b == x else b
        edges.append(e)
        nodes.append(x)
    return nodes, edges  # from x up to the root


def _require_surface(emb: EmbeddedGraph) -> int:
    if emb.n == 0 or not emb.is_connected():
        raise DisconnectedError("width computations need a connected embedding")
    return euler_genus(emb).euler_genus


def shortest_cycle_in_class(emb: EmbeddedGraph, klass: str) -> WidthCertificate:
    if klass not in CLASSES:
        raise CurveError(f"unknown curve class {klass!r}")
    if _require_surface(emb) == 0:
        return WidthCertificate(klass, None, None)
    clf = _RadialClassifier(emb)
    R = clf.R
    best_len = None
    best_key = None
    best_cycle = None
    for root in range(R.n):
        dist, par_edge, branch = _bfs(R, root)
        cands = []
        for e, (u, v) in enumerate(R.edges):
            if par_edge[u] == e or par_edge[v] == e:
                continue
            if u != root and v != root and branch[u] == branch[v]:
                continue
            L = dist[u] + dist[v] + 1
            if best_len is not None and L > best_len:
                continue
            cands.append((L, e, u, v))
        cands.sort()
        for L, e, u, v in cands:
            if best_len is not None and L > best_len:
                break
            pu_nodes, pu_edges = _tree_path(R, par_edge, u)
            pv_nodes, pv_edges = _tree_path(R, par_edge, v)
            # cycle: root ... u, (e), v ... root
            nodes = list(reversed(pu_nodes)) + pv_nodes[:-1]
            edges = list(reversed(pu_edges)) + [e] + pv_edges
            if not clf.classify(nodes, edges).in_class(klass):
                continue
            key = clf.dart_key(nodes, edges)
            if best_len is None or L < best_len or key < best_key:
                best_len, best_key, best_cycle = L, key, (nodes, edges)
    if best_cycle is None:
        raise CurveError(f"no {klass} cycle found on a non-spherical surface")
    chain = clf.to_chain(*best_cycle)
    return WidthCertificate(klass, best_len // 2, chain)


def face_width(emb: EmbeddedGraph) -> WidthCertificate:
    return shortest_cycle_in_class(emb, NON_CONTRACTIBLE)


def nonseparating_face_width(emb: EmbeddedGraph) -> WidthCertificate:
    return shortest_cycle_in_class(emb, NON_SEPARATING)


def radial_cycles(emb: EmbeddedGraph, max_length: int, max_nodes: int = 400):
    """All simple radial cycles of radial length <= max_length, as (nodes, edges)."""
    R = radial_graph(emb).embedding
    if R.n > max_nodes:
        raise CurveError(f"exhaustive enumeration refused: {R.n} radial nodes > {max_nodes}")
    out = []
    for s in range(R.n):
        nodes, edges = [s], []
        on = {s}

        def dfs(x):
            for d in R.rotation[x]:
                e = d >> 1
                y = R.head(d)
                if y == s:
                    if edges and e != edges[-1] and edges[0] < e:
                        out.append((list(nodes), edges + [e]))
                    continue
                if y <= s or y in on or len(edges) + 1 >= max_length:
                    continue
                on.add(y)
                nodes.append(y)
                edges.append(e)
                dfs(y)
                on.discard(y)
                nodes.pop()
                edges.pop()

        dfs(s)
    return out


def exhaustive_width(emb: EmbeddedGraph, klass: str, max_width: int, max_nodes: int = 400) -> WidthCertificate:
    """Oracle: enumerate every radial cycle up to ``2 * max_width``."""
    if klass not in CLASSES:
        raise CurveError(f"unknown curve class {klass!r}")
    if _require_surface(emb) == 0:
        return WidthCertificate(klass, None, None)
    clf = _RadialClassifier(emb)
    best = None
    for nodes, edges in radial_cycles(emb, 2 * max_width, max_nodes):
        if not clf.classify(nodes, edges).in_class(klass):
            continue
        key = (len(edges), clf.dart_key(nodes, edges))
        if best is None or key < best[0]:
            best = (key, nodes, edges)
    if best is None:
        return WidthCertificate(klass, -1, None)  # above the cap
    return WidthCertificate(klass, len(best[2]) // 2, clf.to_chain(best[1], best[2]))


# -- 3-path condition -----------------------------------------------------------------


@dataclass(frozen=True)
class ThreePathReport:
    classifications: tuple[CurveClassification, CurveClassification, CurveClassification]
    contractible_count: int
    separating_count: int

    @property
    def passed(self) -> bool:
        return self.contractible_count != 2 and self.separating_count != 2


def three_path_check(emb: EmbeddedGraph, p1, p2, p3) -> ThreePathReport:
    paths = [list(p) for p in (p1, p2, p3)]
    x, y = paths[0][0], paths[0][-1]
    if x == y:
        raise CurveError("paths must join two distinct vertices")
    inner: set[int] = set()
    for p in paths:
        if p[0] != x or p[-1] != y:
            raise CurveError("paths must share both ends")
        if len(set(p)) != len(p):
            raise CurveError("a path repeats a vertex")
        mid = set(p[1:-1])
        if inner & mid:
            raise CurveError("paths are not internally disjoint")
        inner |= mid
    edge_sets = [frozenset(cycle_edges_path(emb, p)) for p in paths]
    if len(set(edge_sets)) < 3:
        raise CurveError("two paths coincide")
    cls = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cyc = paths[i] + list(reversed(paths[j][1:-1]))
        cls.append(classify_cycle(emb, cyc))
    return ThreePathReport(
        tuple(cls),
        sum(c.contractible for c in cls),
        sum(c.separating for c in cls),
    )


def cycle_edges_path(emb: EmbeddedGraph, path: Sequence[int]) -> list[int]:
    try:
        return [emb.edge_between(path[i], path[i + 1]) for i in range(len(path) - 1)]
    except EmbeddingError as exc:
        raise CurveError(str(exc)) from None


# -- extension bound ------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionReport:
    k: int
    lengths: tuple[int, int]
    classifications: tuple[CurveClassification | None, CurveClassification | None]
    bound: int

    @property
    def passed(self) -> bool:
        if min(self.lengths) > self.bound:
            return False
        cls = [c for c in self.classifications if c is not None]
        if len(cls) == 2 and all(c.separating for c in cls):
            return False
        return True


def chain_extension_bound_check(
    emb: EmbeddedGraph,
    lam: FaceChain,
    lam_prime: FaceChain,
    i: int,
    j: int,
    nsfw: int | None = None,
) -> ExtensionReport:
    """Combine an open chain between faces ``F_i`` and ``F_j`` of a minimal
    non-separating chain with both arcs of the latter."""
    n = len(lam)
    if not lam.closed or lam_prime.closed:
        raise CurveError("expected a closed chain and an open chain")
    if nsfw is None:
        nsfw = nonseparating_face_width(emb).value
    if n != nsfw or classify_cycle(emb, lam).separating:
        raise PreconditionError("chain is not a minimal non-separating chain")
    if not 0 <= i < j < n:
        raise CurveError("need 0 <= i < j < |chain|")
    w = lam_prime.vertices
    fi, fj = emb.faces[lam.faces[i]], emb.faces[lam.faces[j]]
    if w[0] not in fi.vertex_set or w[-1] not in fj.vertex_set:
        raise CurveError("ends of the open chain are not on the selected faces")
    k = len(lam_prime)
    xs, fs = lam.vertices, lam.faces
    back_x = list(reversed(w[1:-1])) if k > 0 else []
    back_f = list(reversed(lam_prime.faces))
    # arc F_i .. F_j
    x1 = [w[0]] + [xs[t] for t in range(i + 1, j + 1)] + ([w[-1]] + back_x if k > 0 else [])
    f1 = [fs[t] for t in range(i, j + 1)] + back_f
    # arc F_j .. F_i through F_0
    arc2 = [(t % n) for t in range(j, n + i + 1)]
    x2 = [w[-1]] + [xs[t % n] for t in range(j + 1, n + i + 1)] + ([w[0]] + list(w[1:-1]) if k > 0 else [])
    f2 = [fs[t] for t in arc2] + list(lam_prime.faces)
    if k == 0:
        # w0 == wk: both arcs close at the single vertex
        x1 = [w[0]] + [xs[t] for t in range(i + 1, j + 1)]
        x2 = [w[0]] + [xs[t % n] for t in range(j + 1, n + i + 1)]
    c1 = FaceChain(tuple(x1), tuple(f1), True, None, emb)
    c2 = FaceChain(tuple(x2), tuple(f2), True, None, emb)
    cls = []
    for c in (c1, c2):
        try:
            cls.append(classify_cycle(emb, c) if is_nice(c) else None)
        except CurveError:
            cls.append(None)
    return ExtensionReport(k, (len(c1), len(c2)), (cls[0], cls[1]), 2 * k + 2)


# -- layer cycles ------------------------------------------------------------------------


def layer_cycles(emb: EmbeddedGraph, f: int, k: int, nsfw: int | None = None) -> list[list[int]]:
    """Pairwise disjoint separating cycles around face ``f``, one per layer."""
    if nsfw is None:
        cert = nonseparating_face_width(emb)
        nsfw = 10**9 if cert.unbounded else cert.value
    if nsfw < 2:
        raise PreconditionError("layer cycles need nsfw >= 2")
    if k < 0 or k > nsfw // 2 - 1:
        raise PreconditionError(f"k={k} exceeds floor(nsfw/2) - 1 = {nsfw // 2 - 1}")
    faces = emb.faces
    in_region = {f}
    prev_vertices: set[int] = set()
    region_vertices = set(faces[f].vertices)
    vertex_faces: list[set[int]] = [set() for _ in range(emb.n)]
    for g, walk in enumerate(faces):
        for v in walk.vertices:
            vertex_faces[v].add(g)
    out = []
    for i in range(k + 1):
        if i > 0:
            prev_vertices = set(region_vertices)
            for v in prev_vertices:
                in_region |= vertex_faces[v]
            region_vertices = set()
            for g in in_region:
                region_vertices |= set(faces[g].vertices)
        cyc = _region_boundary_cycle(emb, in_region, f)
        for v in cyc:
            if v in prev_vertices:
                raise CurveError("boundary cycle touches the previous layer")
        out.append(cyc)
    return out


def _region_boundary_cycle(emb: EmbeddedGraph, region: set[int], f: int) -> list[int]:
    bd = [e for e, (f1, f2) in enumerate(emb.edge_faces) if (f1 in region) != (f2 in region)]
    if not bd:
        raise CurveError("region has no boundary")
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in bd:
        u, v = emb.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    if any(len(a) != 2 for a in adj.values()):
        raise CurveError("region boundary is not a disjoint union of cycles")
    seen: set[int] = set()
    cycles = []
    for s in sorted(adj):
        if s in seen:
            continue
        verts, edges = [s], []
        seen.add(s)
        prev_e, x = None, s
        while True:
            (y1, e1), (y2, e2) = adj[x]
            y, e = (y1, e1) if e1 != prev_e else (y2, e2)
            edges.append(e)
            if y == s:
                break
            verts.append(y)
            seen.add(y)
            prev_e, x = e, y
        cycles.append((verts, edges))
    for verts, edges in cycles:
        reg = cycle_regions(emb, verts, edges)
        if not reg.classification.separating:
            continue
        lab = reg.face_label[f]
        if all(reg.face_label[g] == lab for g in region):
            return verts
    raise CurveError("no separating boundary cycle encloses the region")
