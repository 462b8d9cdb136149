"""Disjoint-path linkages and K6 models on three-cycle cylinder grids."""
from __future__ import annotations

import itertools
import math
import random
import tempfile
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .curves import CurveError, PreconditionError, classify_cycle, cycle_edges, nonseparating_face_width
from .embedding import EmbeddedGraph, euler_genus, format_emb, from_edge_rotation, parse_emb
from .graphs import Graph
from .minors import MinorModel, has_minor, verify_minor_model


class InstanceError(ValueError):
    pass


class CaseFailure(RuntimeError):
    """Restricted search found no K6 where the case analysis promises one."""


# -- Menger ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Linkage:
    paths: tuple
    sources: frozenset
    targets: frozenset

    def __len__(self) -> int:
        return len(self.paths)

    def check(self, g: Graph) -> None:
        used: set = set()
        for p in self.paths:
            if used & set(p) or len(set(p)) != len(p):
                raise AssertionError("paths are not vertex-disjoint")
            used |= set(p)
            if any(not g.has_edge(u, v) for u, v in zip(p, p[1:])):
                raise AssertionError(f"path {p} uses a non-edge")
            if p[0] not in self.sources or p[-1] not in self.targets:
                raise AssertionError(f"path {p} does not run from S to T")
            if any(x in self.sources for x in p[1:]) or any(x in self.targets for x in p[:-1]):
                raise AssertionError(f"path {p} meets S or T internally")


def max_disjoint_paths(g: Graph, S: Iterable[int], T: Iterable[int]) -> tuple[Linkage, frozenset]:
    """Maximum set of vertex-disjoint (S, T)-paths and a minimum separator.

    A vertex of S ∩ T is a path with one vertex.  Unit vertex capacities via
    the usual in/out split; augmenting paths by BFS.
    """
    S, T = frozenset(S), frozenset(T)
    if not S or not T:
        raise ValueError("S and T must be non-empty")
    common = S & T
    n = g.n
    big = n + 1
    # node 2v = v_in, 2v+1 = v_out; source 2n, sink 2n+1
    src, snk = 2 * n, 2 * n + 1
    cap: dict = {}
    nbrs: list = [[] for _ in range(2 * n + 2)]

    def arc(a, b, c):
        if (a, b) not in cap and (b, a) not in cap:
            nbrs[a].append(b)
            nbrs[b].append(a)
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)

    live = [v not in common for v in range(n)]
    for v in range(n):
        if live[v]:
            arc(2 * v, 2 * v + 1, 1)
    for u, v in g.edges:
        if live[u] and live[v]:
            arc(2 * u + 1, 2 * v, big)
            arc(2 * v + 1, 2 * u, big)
    for v in S - common:
        arc(src, 2 * v, big)
    for v in T - common:
        arc(2 * v + 1, snk, big)

    def bfs():
        par = {src: None}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in nbrs[x]:
                if y not in par and cap[(x, y)] > 0:
                    par[y] = x
                    if y == snk:
                        return par
                    q.append(y)
        return par

    while True:
        par = bfs()
        if snk not in par:
            break
        y = snk
        while par[y] is not None:
            x = par[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
    separator = set(common)
    separator |= {v for v in range(n) if live[v] and 2 * v in par and 2 * v + 1 not in par}
    # net flow along graph edges, read off the reverse residuals
    nxt = {}
    for u, v in g.edges:
        if not (live[u] and live[v]):
            continue
        f = cap[(2 * v, 2 * u + 1)] - cap[(2 * u, 2 * v + 1)]
        if f > 0:
            nxt[u] = v
        elif f < 0:
            nxt[v] = u
    paths = [(v,) for v in sorted(common)]
    for s in sorted(S - common):
        if cap[(2 * s, src)] == 0:
            continue
        p = [s]
        while not (p[-1] in T and cap[(snk, 2 * p[-1] + 1)] > 0):
            p.append(nxt[p[-1]])
        first_t = next(i for i, x in enumerate(p) if x in T)
        p = p[:first_t + 1]
        last_s = max(i for i, x in enumerate(p) if x in S)
        paths.append(tuple(p[last_s:]))
    return Linkage(tuple(paths), S, T), frozenset(separator)


def separates(g: Graph, S, T, X) -> bool:
    """True when every (S, T)-path meets ``X``."""
    X = set(X)
    seen = {v for v in S if v not in X}
    q = deque(seen)
    while q:
        v = q.popleft()
        if v in T:
            return False
        for w in g.adj[v]:
            if w not in X and w not in seen:
                seen.add(w)
                q.append(w)
    return True


# -- homologous cycles --------------------------------------------------------------


@dataclass(frozen=True)
class HomologousReport:
    nsfw: int
    sides: tuple  # linkage sizes on the two sides

    @property
    def passed(self) -> bool:
        return all(s >= self.nsfw for s in self.sides)


def _two_cycle_sides(emb: EmbeddedGraph, c1: Sequence[int], c2: Sequence[int]):
    on_v = set(c1) | set(c2)
    on_e = set(cycle_edges(emb, c1)) | set(cycle_edges(emb, c2))
    F = len(emb.faces)
    parent = list(range(F))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (f1, f2) in enumerate(emb.edge_faces):
        if e not in on_e:
            parent[find(f2)] = find(f1)
    for v in range(emb.n):
        if v not in on_v:
            rot = emb.rotation[v]
            for d in rot[1:]:
                parent[find(emb.corner_face[d])] = find(emb.corner_face[rot[0]])
    roots = sorted({find(f) for f in range(F)})
    return [roots.index(find(f)) for f in range(F)], len(roots), on_e


def homologous_cycle_linkage_check(emb: EmbeddedGraph, c1: Sequence[int], c2: Sequence[int],
                                   nsfw: int | None = None) -> HomologousReport:
    """Count disjoint (C1, C2)-paths on each side of two disjoint homologous
    non-separating cycles and compare with nsfw."""
    if set(c1) & set(c2):
        raise PreconditionError("cycles are not disjoint")
    for c in (c1, c2):
        cls = classify_cycle(emb, c)
        if cls.separating:
            raise PreconditionError("cycle is separating")
    label, k, on_e = _two_cycle_sides(emb, c1, c2)
    if k != 2:
        raise PreconditionError("cycles are not homologous: cutting along both leaves one piece")
    g = emb.to_graph()
    sizes = []
    for side in range(2):
        es = [emb.edges[e] for e in on_e]
        es += [emb.edges[e] for e, (f1, _) in enumerate(emb.edge_faces)
               if e not in on_e and label[f1] == side]
        gs = Graph.from_edges(g.n, {tuple(sorted(e)) for e in es})
        link, sep = max_disjoint_paths(gs, c1, c2)
        if len(link) != len(sep):
            raise AssertionError("linkage and separator sizes differ")
        sizes.append(len(link))
    if nsfw is None:
        nsfw = nonseparating_face_width(emb).value
    return HomologousReport(nsfw, tuple(sizes))


def distance_on_cycle(cycle: Sequence[int], S, x: int, y: int) -> int:
    """Fewest S-vertices on either component of ``cycle - {x, y}``."""
    pos = {v: i for i, v in enumerate(cycle)}
    if x not in pos or y not in pos:
        raise CurveError("both vertices must lie on the cycle")
    if x == y:
        return 0
    S = set(S)
    L = len(cycle)
    i, j = pos[x], pos[y]
    a = sum(1 for t in range(1, (j - i) % L) if cycle[(i + t) % L] in S)
    b = sum(1 for t in range(1, (i - j) % L) if cycle[(j + t) % L] in S)
    return min(a, b)


# -- cylinder instances -------------------------------------------------------------


@dataclass
class CylinderGridInstance:
    """Three disjoint homotopic cycles on a cylinder (C1 and C3 the cuffs)
    crossed by spokes P_0..P_{k-1}, plus chords a_i b_i with a_i on C1 and
    b_i on C3.  Cycles are listed clockwise, spoke ``i`` runs from ``s_i`` on
    C1 to ``t_i`` on C3, and the s_i appear clockwise in index order."""

    emb: EmbeddedGraph
    cycles: tuple
    spokes: tuple
    chords: tuple

    @property
    def k(self) -> int:
        return len(self.spokes)

    @property
    def S(self) -> list[int]:
        return [p[0] for p in self.spokes]

    @property
    def T(self) -> list[int]:
        return [p[-1] for p in self.spokes]

    def graph(self) -> Graph:
        return self.emb.to_graph()

    def augmented(self) -> Graph:
        g = self.graph()
        return g.add_edges([c for c in self.chords if not g.has_edge(*c)])

    def validate(self) -> None:
        g = self.graph()
        if self.k < 7:
            raise InstanceError("need at least 7 spokes")
        if euler_genus(self.emb).euler_genus != 0:
            raise InstanceError("the cylinder must be drawn in the plane")
        seen: set = set()
        for c in self.cycles:
            if len(c) < 3 or len(set(c)) != len(c) or seen & set(c):
                raise InstanceError("cycles must be simple and pairwise disjoint")
            seen |= set(c)
            if any(not g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))):
                raise InstanceError("cycle uses a non-edge")
        faces = {frozenset(w.vertices) for w in self.emb.faces}
        for c in (self.cycles[0], self.cycles[2]):
            if frozenset(c) not in faces:
                raise InstanceError("C1 and C3 must bound faces (the cuffs)")
        used: set = set()
        for i, p in enumerate(self.spokes):
            if used & set(p) or len(set(p)) != len(p):
                raise InstanceError("spokes must be pairwise disjoint paths")
            used |= set(p)
            if any(not g.has_edge(u, v) for u, v in zip(p, p[1:])):
                raise InstanceError(f"spoke {i} uses a non-edge")
            for j, c in enumerate(self.cycles):
                if len(set(p) & set(c)) != 1:
                    raise InstanceError(f"spoke {i} must meet C{j + 1} exactly once")
            if p[0] not in self.cycles[0] or p[-1] not in self.cycles[2]:
                raise InstanceError(f"spoke {i} must run from C1 to C3")
        for c, ends in ((self.cycles[0], self.S), (self.cycles[2], self.T)):
            pos = {v: i for i, v in enumerate(c)}
            order = sorted(range(self.k), key=lambda i: pos[ends[i]])
            start = order.index(0)
            if order[start:] + order[:start] != list(range(self.k)):
                raise InstanceError("spoke ends are not in clockwise index order")
        for a, b in self.chords:
            if a not in self.cycles[0] or b not in self.cycles[2]:
                raise InstanceError("chords must join C1 to C3")

    def format_cyl(self) -> str:
        lines = [f"C{j + 1} " + " ".join(map(str, c)) for j, c in enumerate(self.cycles)]
        lines += [f"spoke {i} " + " ".join(map(str, p)) for i, p in enumerate(self.spokes)]
        lines += [f"chord {a} {b}" for a, b in self.chords]
        return "\n".join(lines) + "\n"

    def write(self, stem) -> list[str]:
        stem = Path(stem)
        emb_path, cyl_path = stem.with_suffix(".emb"), stem.with_suffix(".cyl")
        emb_path.write_text(format_emb(self.emb))
        cyl_path.write_text(self.format_cyl())
        return [str(emb_path), str(cyl_path)]

    @classmethod
    def read(cls, stem) -> "CylinderGridInstance":
        stem = Path(stem)
        emb = parse_emb(stem.with_suffix(".emb").read_text())
        cycles, spokes, chords = [None] * 3, {}, []
        for line in stem.with_suffix(".cyl").read_text().splitlines():
            tok = line.split()
            if not tok:
                continue
            if tok[0] in ("C1", "C2", "C3"):
                cycles[int(tok[0][1]) - 1] = tuple(map(int, tok[1:]))
            elif tok[0] == "spoke":
                spokes[int(tok[1])] = tuple(map(int, tok[2:]))
            elif tok[0] == "chord":
                chords.append((int(tok[1]), int(tok[2])))
            else:
                raise InstanceError(f"unknown cyl record {tok[0]!r}")
        if None in cycles:
            raise InstanceError("cyl sidecar must name C1, C2 and C3")
        return cls(emb, tuple(cycles), tuple(spokes[i] for i in range(len(spokes))), tuple(chords))


def _planar_embedding(n: int, edges: list, pos: list) -> EmbeddedGraph:
    """Rotation system of a straight-line drawing."""
    inc: list = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        inc[u].append(e)
        inc[v].append(e)

    def angle(v, e):
        u, w = edges[e]
        o = w if u == v else u
        return math.atan2(pos[o][1] - pos[v][1], pos[o][0] - pos[v][0])

    rot = [sorted(inc[v], key=lambda e: -angle(v, e)) for v in range(n)]
    return from_edge_rotation(n, edges, rot)


def make_cylinder_grid(k: int, rng: random.Random, max_gap: int = 2, noise: float = 0.3) -> tuple:
    """Random three-cycle cylinder grid with ``k`` spokes.

    Arcs between consecutive spokes get 0..max_gap subdivision vertices, spokes
    get up to one extra vertex in each band, and some cells of the outer band
    receive a diagonal.  Returns (emb, cycles, spokes).
    """
    pos: list = []

    def vertex(r, theta):
        pos.append((r * math.cos(theta), r * math.sin(theta)))
        return len(pos) - 1

    step = 2 * math.pi / k
    theta = [-i * step for i in range(k)]  # clockwise
    radius = (3.0, 2.0, 1.0)
    hub = [[vertex(radius[j], theta[i]) for j in range(3)] for i in range(k)]
    spokes = []
    edges: list = []
    for i in range(k):
        path = [hub[i][0]]
        for j in (1, 2):
            if rng.random() < 0.5:
                path.append(vertex((radius[j - 1] + radius[j]) / 2, theta[i]))
            path.append(hub[i][j])
        spokes.append(tuple(path))
        edges += list(zip(path, path[1:]))
    cycles = []
    arcs = []
    for j in range(3):
        cyc, arc_j = [], []
        for i in range(k):
            cyc.append(hub[i][j])
            inner = [vertex(radius[j], theta[i] - step * (t + 1) / (g + 1))
                     for g in [rng.randint(0, max_gap)] for t in range(g)]
            cyc += inner
            arc_j.append(inner)
        cycles.append(tuple(cyc))
        arcs.append(arc_j)
        edges += [(cyc[t], cyc[(t + 1) % len(cyc)]) for t in range(len(cyc))]
    for i in range(k):
        if arcs[0][i] and rng.random() < noise:
            edges.append((rng.choice(arcs[0][i]), hub[(i + 1) % k][1]))
    emb = _planar_embedding(len(pos), edges, pos)
    return emb, tuple(cycles), tuple(spokes)


# -- the builder ----------------------------------------------------------------------

# spoke index tuples per case, for the normalized configuration
# a1 = s_0, a2 = s_j, {b1, b2} = {t_l, t_r} with l < r


def _case_i(k, j, l, r, b1_low):
    if not 3 <= j <= k - 3 or l == r:
        return None
    if 1 <= l and r <= j - 1:
        return ("i.1.a", (j + 1, l + 1, r, j)) if b1_low else ("i.1.b", (0, l, r, j, j + 1))
    if l == 0 and 2 <= r < j:
        return ("i.2.a", (j + 1, 1, r, j)) if b1_low else ("i.2.b", (k - 1, 1, r, j, j + 1))
    if l == 0 and r == j and j <= k - 4:
        return ("i.2.c", (k - 1, 1, j - 1, j + 1)) if b1_low else ("i.2.d", (k - 1, 1, j - 1, j + 1, j + 2))
    if 1 <= l <= j - 1 and j + 1 <= r <= k - 1:
        return "i.3", (r, 0, l, j)
    return None


def _case_ii(k, j, l, r, b1_low, b3):
    if not 3 <= j <= k - 3 or r != l + 1 or not 0 <= l <= j - 1:
        return None
    if l == 0:
        return ("ii.1.a" if b1_low else "ii.1.b"), (0, 1, j - 1, j, j + 1, k - 1)
    if l <= j - 2:
        if not b1_low:
            return "ii.2.a", (0, l, l + 1, j, j + 1)
        if l != 1:
            return "ii.2.b", (1, l, l + 1, j, j + 1, 0)
        if j == 3 and b3 is not None:
            if 5 <= b3 <= k - 2:
                return "ii.2.swap", None
            if b3 == 3:
                return "ii.2.c", (0, 1, 2, 3, 4, 5)
            if b3 == 4:
                return "ii.2.d", (0, 1, 2, 3, k - 2, k - 1)
    return None


CASES = ("i.1.a", "i.1.b", "i.2.a", "i.2.b", "i.2.c", "i.2.d", "i.3",
         "ii.1.a", "ii.1.b", "ii.2.a", "ii.2.b", "ii.2.c", "ii.2.d", "ii.2.swap")


def _idx_dist(k, p, q):
    if p == q:
        return 0
    return min((q - p - 1) % k, (p - q - 1) % k)


def _snap_options(cycle, ends, v):
    """Indices of the spoke ends that ``v`` can be merged into along the cycle."""
    pos = {x: i for i, x in enumerate(cycle)}
    at = {pos[x]: i for i, x in enumerate(ends)}
    p = pos[v]
    if p in at:
        return (at[p],)
    L = len(cycle)
    back = next(at[(p - t) % L] for t in range(1, L) if (p - t) % L in at)
    fwd = next(at[(p + t) % L] for t in range(1, L) if (p + t) % L in at)
    return (back, fwd)


def _symmetries(k):
    for swap in (False, True):
        for sgn in (1, -1):
            for c in range(k):
                yield swap, sgn, c


def _dispatch_i(k, a, b):
    """a, b: pairs of snapped indices of the two chords.  Returns (label,
    spokes in original indices, chord order) or None."""
    for swap, sgn, c in _symmetries(k):
        (a1, a2), (b1, b2) = ((a[1], a[0]), (b[1], b[0])) if swap else (a, b)
        f = lambda i: (sgn * i + c) % k  # noqa: E731
        if f(a1) != 0:
            continue
        j, x1, x2 = f(a2), f(b1), f(b2)
        got = _case_i(k, j, min(x1, x2), max(x1, x2), x1 < x2)
        if got:
            label, spokes = got
            inv = lambda i: (sgn * (i - c)) % k  # noqa: E731
            return label, tuple(sorted({inv(s % k) for s in spokes})), ((1, 0) if swap else (0, 1))
    return None


def _dispatch_ii(k, a, b, b3):
    for swap, sgn, c in _symmetries(k):
        (a1, a2), (b1, b2) = ((a[1], a[0]), (b[1], b[0])) if swap else (a, b)
        f = lambda i: (sgn * i + c) % k  # noqa: E731
        if f(a1) != 0:
            continue
        j, x1, x2 = f(a2), f(b1), f(b2)
        got = _case_ii(k, j, min(x1, x2), max(x1, x2), x1 < x2, f(b3))
        if got:
            label, spokes = got
            if spokes is None:
                return label, None, None
            inv = lambda i: (sgn * (i - c)) % k  # noqa: E731
            return label, tuple(sorted({inv(s % k) for s in spokes})), None
    return None


@dataclass(frozen=True)
class CylinderResult:
    case: str
    spokes: tuple
    chords: tuple
    model: MinorModel


def check_preconditions(inst: CylinderGridInstance, case: str) -> None:
    C1, _, C3 = inst.cycles
    S, T = inst.S, inst.T
    if len(inst.chords) < 2:
        raise PreconditionError("need at least two chords")
    (a1, b1), (a2, b2) = inst.chords[:2]
    if distance_on_cycle(C1, S, a1, a2) < 2:
        raise PreconditionError("dist(C1,S)(a1,a2) < 2")
    if b1 == b2:
        raise PreconditionError("b1 = b2")
    d = distance_on_cycle(C3, T, b1, b2)
    if case == "i":
        if d < 1:
            raise PreconditionError("dist(C3,T)(b1,b2) < 1")
    elif case == "ii":
        if d != 0:
            raise PreconditionError("dist(C3,T)(b1,b2) != 0")
        if len(inst.chords) < 3:
            raise PreconditionError("case (ii) needs a third chord")
        b3 = inst.chords[2][1]
        if distance_on_cycle(C3, T, b1, b3) < 1 and distance_on_cycle(C3, T, b2, b3) < 1:
            raise PreconditionError("dist(C3,T)(b1,b3) < 1 and dist(C3,T)(b2,b3) < 1")
    else:
        raise ValueError(f"unknown case {case!r}")


def _plan(inst: CylinderGridInstance, case: str):
    """Snap attachments to spoke ends and find the proof case.

    Returns (label, spoke indices, chords used).
    """
    C1, _, C3 = inst.cycles
    S, T, k = inst.S, inst.T, inst.k
    chords = list(inst.chords)
    a_opts = [_snap_options(C1, S, a) for a, _ in chords]
    b_opts = [_snap_options(C3, T, b) for _, b in chords]
    for a_snap in itertools.product(*a_opts):
        for b_snap in itertools.product(*b_opts):
            if _idx_dist(k, a_snap[0], a_snap[1]) < 2 or b_snap[0] == b_snap[1]:
                continue
            d = _idx_dist(k, b_snap[0], b_snap[1])
            if d >= 1:
                got = _dispatch_i(k, a_snap[:2], b_snap[:2])
                if got:
                    label, spokes, order = got
                    return label, spokes, tuple(chords[i] for i in order)
            elif case == "ii":
                b3 = b_snap[2]
                if _idx_dist(k, b_snap[0], b3) < 1 and _idx_dist(k, b_snap[1], b3) < 1:
                    continue
                got = _dispatch_ii(k, a_snap[:2], b_snap[:2], b3)
                if got is None:
                    continue
                label, spokes, _ = got
                if spokes is not None:
                    used = tuple(chords[:3]) if label in ("ii.2.c", "ii.2.d") else tuple(chords[:2])
                    return label, spokes, used
                # roles of C1 and C3 interchanged: b3, b_z act as a1, a2
                for z in (0, 1):
                    if _idx_dist(k, a_snap[2], a_snap[z]) < 1 or a_snap[2] == a_snap[z]:
                        continue
                    sw = _dispatch_i(k, (b_snap[2], b_snap[z]), (a_snap[2], a_snap[z]))
                    if sw:
                        _, spokes, order = sw
                        pair = (chords[2], chords[z])
                        return "ii.2.swap", spokes, tuple(pair[i] for i in order)
    raise CaseFailure("no proof case matches the snapped configuration")


def restricted_graph(inst: CylinderGridInstance, spokes: Sequence[int], chords) -> Graph:
    """C1 ∪ C2 ∪ C3 ∪ selected spokes ∪ chords, on the instance's vertex ids."""
    es = set()
    for c in inst.cycles:
        es |= {tuple(sorted((c[i], c[(i + 1) % len(c)]))) for i in range(len(c))}
    for i in spokes:
        p = inst.spokes[i]
        es |= {tuple(sorted(e)) for e in zip(p, p[1:])}
    es |= {tuple(sorted(c)) for c in chords}
    return Graph.from_edges(inst.emb.n, es)


def contracted_restriction(inst: CylinderGridInstance, spokes: Sequence[int], chords) -> Graph:
    """Quotient of :func:`restricted_graph`: keep spoke/cycle crossings and
    chord ends, contract everything else along the cycles and spokes."""
    keep = set()
    for i in spokes:
        for c in inst.cycles:
            keep |= set(inst.spokes[i]) & set(c)
    for a, b in chords:
        keep |= {a, b}
    order = sorted(keep)
    idx = {v: t for t, v in enumerate(order)}
    es = set()
    for c in inst.cycles:
        on = [v for v in c if v in keep]
        es |= {tuple(sorted((idx[on[t]], idx[on[(t + 1) % len(on)]]))) for t in range(len(on)) if len(on) > 1}
    for i in spokes:
        on = [v for v in inst.spokes[i] if v in keep]
        es |= {tuple(sorted((idx[x], idx[y]))) for x, y in zip(on, on[1:])}
    es |= {tuple(sorted((idx[a], idx[b]))) for a, b in chords}
    return Graph.from_edges(len(order), {e for e in es if e[0] != e[1]})


def build_k6_on_cylinder(inst: CylinderGridInstance, case: str, backend=None) -> CylinderResult:
    """K6 model in G + chords, found inside the union named by the proof case."""
    check_preconditions(inst, case)
    label, spokes, chords = _plan(inst, case)
    h = Graph.complete(6)
    model = has_minor(restricted_graph(inst, spokes, chords), h, backend=backend)
    if model is None:
        raise CaseFailure(f"case {label}: no K6 in the restricted union of spokes {spokes}")
    verdict = verify_minor_model(inst.augmented(), h, model)
    if not verdict:
        raise CaseFailure(f"case {label}: model failed verification ({verdict.reason})")
    return CylinderResult(label, spokes, chords, model)


# -- random instances ---------------------------------------------------------------


# whether b1 is the lower-indexed end in each case (i.3 allows both)
_LOW_FIRST = {
    "i.1.a": True, "i.1.b": False, "i.2.a": True, "i.2.b": False, "i.2.c": True, "i.2.d": False,
    "ii.1.a": True, "ii.1.b": False, "ii.2.a": False, "ii.2.b": True, "ii.2.c": True,
    "ii.2.d": True, "ii.2.swap": True,
}


def _canonical_config(label: str, k: int, rng: random.Random):
    """Index data (j, b1, b2, a3, b3) of a normalized configuration in ``label``."""
    a3 = b3 = None
    if label.startswith("i.1"):
        j = rng.randint(4, k - 3)
        l = rng.randint(1, j - 3)
        r = rng.randint(l + 2, j - 1)
    elif label in ("i.2.a", "i.2.b"):
        j = rng.randint(3, k - 3)
        l, r = 0, rng.randint(2, j - 1)
    elif label in ("i.2.c", "i.2.d"):
        j = rng.randint(3, k - 4)
        l, r = 0, j
    elif label == "i.3":
        j = rng.randint(3, k - 3)
        l, r = rng.randint(1, j - 1), rng.randint(j + 1, k - 1)
    elif label.startswith("ii.1"):
        j = rng.randint(3, k - 3)
        l, r = 0, 1
    elif label == "ii.2.a":
        j = rng.randint(3, k - 3)
        l = rng.randint(1, j - 2)
        r = l + 1
    elif label == "ii.2.b":
        j = rng.randint(4, k - 3)
        l = rng.randint(2, j - 2)
        r = l + 1
    else:
        j, l, r = 3, 1, 2
        b3 = {"ii.2.c": 3, "ii.2.d": 4}.get(label) or rng.randint(5, k - 2)
    low_first = _LOW_FIRST.get(label)
    if low_first is None:
        low_first = rng.random() < 0.5
    b1, b2 = (l, r) if low_first else (r, l)
    if label.startswith("ii"):
        a3 = rng.randrange(k)
        if b3 is None:
            b3 = rng.choice([t for t in range(k) if _idx_dist(k, b1, t) >= 1 or _idx_dist(k, b2, t) >= 1])
    return j, b1, b2, a3, b3


def random_cylinder_instance(k: int, rng: random.Random, label: str | None = None,
                             unsnap: float = 0.3) -> tuple[CylinderGridInstance, str]:
    """A random valid instance aimed at proof case ``label`` (random if None).

    The normalized configuration is moved by a random symmetry of the spoke
    labels, and attachments are moved off spoke ends when the distance
    conditions allow.  Returns (instance, part 'i' or 'ii').
    """
    label = label or rng.choice(CASES)
    emb, cycles, spokes = make_cylinder_grid(k, rng)
    j, b1, b2, a3, b3 = _canonical_config(label, k, rng)
    sgn, c = rng.choice((1, -1)), rng.randrange(k)
    g = lambda i: (sgn * (i - c)) % k  # noqa: E731  (inverse of a symmetry)
    pairs = [(g(0), g(b1)), (g(j), g(b2))]
    if rng.random() < 0.5:
        pairs.reverse()
    if a3 is not None:
        pairs.append((g(a3), g(b3)))
    part = "ii" if label.startswith("ii") else "i"
    S = [p[0] for p in spokes]
    T = [p[-1] for p in spokes]
    chords = [(S[x], T[y]) for x, y in pairs]
    inst = CylinderGridInstance(emb, cycles, spokes, tuple(chords))
    C1, C3 = cycles[0], cycles[2]
    for t in range(len(chords)):
        for side, cyc in ((0, C1), (1, C3)):
            if rng.random() >= unsnap:
                continue
            v = chords[t][side]
            p = cyc.index(v)
            cand = cyc[(p + rng.choice((-1, 1))) % len(cyc)]
            if cand in (S if side == 0 else T):
                continue
            trial = list(chords)
            trial[t] = (cand, trial[t][1]) if side == 0 else (trial[t][0], cand)
            attempt = CylinderGridInstance(emb, cycles, spokes, tuple(trial))
            try:
                check_preconditions(attempt, part)
            except PreconditionError:
                continue
            chords, inst = trial, attempt
    return inst, part


@dataclass
class SweepReport:
    trials: int = 0
    verified: int = 0
    coverage: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return self.verified == self.trials

    def format(self) -> str:
        lines = [f"verified {self.verified}/{self.trials}"]
        lines += [f"  case {c}: {self.coverage[c]}" for c in CASES if self.coverage[c]]
        return "\n".join(lines) + "\n"


class SweepFailure(RuntimeError):
    def __init__(self, message: str, paths: list[str]):
        super().__init__(f"{message} (replay: {' '.join(paths)})")
        self.paths = paths


def randomized_theorem_4_1_sweep(trials: int, ks: Sequence[int] = (7, 8, 9), seed: int = 0,
                                 replay_dir=None, backend=None) -> SweepReport:
    """Random valid instances cycling through every proof case; each must
    yield a verified K6 model.  A failing instance is written out for replay."""
    if any(k < 7 for k in ks):
        raise ValueError("k must be at least 7")
    rng = random.Random(seed)
    report = SweepReport()
    for t in range(trials):
        k = ks[t % len(ks)]
        label = CASES[t % len(CASES)]
        inst, part = random_cylinder_instance(k, rng, label)
        report.trials += 1
        try:
            inst.validate()
            res = build_k6_on_cylinder(inst, part, backend=backend)
        except (CaseFailure, InstanceError, PreconditionError) as exc:
            out = Path(replay_dir or tempfile.mkdtemp(prefix="surfk6-sweep-"))
            out.mkdir(parents=True, exist_ok=True)
            raise SweepFailure(f"trial {t} ({part}, aimed at {label}): {exc}",
                               inst.write(out / f"trial{t}")) from exc
        report.verified += 1
        report.coverage[res.case] += 1
    return report
