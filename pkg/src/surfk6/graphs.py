"""Abstract simple graphs, graph6 I/O and small generators."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with sorted edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        out = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            key = (u, v) if u < v else (v, u)
            if key in out:
                raise GraphError(f"duplicate edge {key}")
            out.add(key)
        return cls(n, tuple(sorted(out)))

    @classmethod
    def complete(cls, t: int) -> "Graph":
        return cls(t, tuple(combinations(range(t), 2)))

    @classmethod
    def cycle(cls, t: int) -> "Graph":
        return cls.from_edges(t, [(i, (i + 1) % t) for i in range(t)])

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in g.edges()])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for u, v in self.edges:
            for w in self.adj[u] & self.adj[v]:
                if w > v:
                    out.append((u, v, w))
        return sorted(out)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(sorted(comp))
        return comps

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        keep = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(keep)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph.from_edges(len(keep), es), keep

    def edge_subgraph(self, edges: Iterable[Sequence[int]]) -> "Graph":
        es = set()
        for u, v in edges:
            key = (u, v) if u < v else (v, u)
            if key not in self.edge_set:
                raise GraphError(f"{key} is not an edge")
            es.add(key)
        return Graph(self.n, tuple(sorted(es)))

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges) + [tuple(e) for e in edges])

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)


# -- graph6 ---------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        g = nx.from_graph6_bytes(s.encode("ascii"))
    except Exception as exc:  # networkx raises NetworkXError / ValueError
        raise GraphError(f"invalid graph6 string: {exc}") from None
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def read_graph6_file(path) -> list[Graph]:
    out = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(from_graph6(line))
    return out


# -- generators -----------------------------------------------------------------


def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_planar_graph(n: int, rng: random.Random, flips: int = 2, min_degree: int = 3) -> Graph:
    """Random planar triangulation: stacked insertions followed by about
    ``flips * n`` random edge flips that keep every degree >= ``min_degree``."""
    if n < 3:
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    faces = [(0, 1, 2), (0, 2, 1)]
    edges = {(0, 1), (1, 2), (0, 2)}
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces.pop(i)
        faces.extend([(a, b, v), (b, c, v), (c, a, v)])
        for x in (a, b, c):
            edges.add((min(x, v), max(x, v)))
    # random edge flips keep planarity and diversify degrees
    g = nx.Graph(list(edges))
    for _ in range(flips * n):
        u, v = rng.choice(sorted(g.edges()))
        common = sorted(set(g[u]) & set(g[v]))
        if len(common) != 2:
            continue
        x, y = common
        if g.has_edge(x, y) or g.degree(u) <= min_degree or g.degree(v) <= min_degree:
            continue
        g.remove_edge(u, v)
        g.add_edge(x, y)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(x, y)
            g.add_edge(u, v)
    return Graph.from_edges(n, g.edges())


def triangulated_grid(a: int, b: int, rng: random.Random, drop: float = 0.0) -> Graph:
    """``a x b`` planar grid with one random diagonal per square; each edge
    is then dropped with probability ``drop``."""
    V = lambda i, j: i * b + j  # noqa: E731
    es = []
    for i in range(a):
        for j in range(b):
            if j + 1 < b:
                es.append((V(i, j), V(i, j + 1)))
            if i + 1 < a:
                es.append((V(i, j), V(i + 1, j)))
            if i + 1 < a and j + 1 < b:
                es.append((V(i, j), V(i + 1, j + 1)) if rng.random() < 0.5 else (V(i + 1, j), V(i, j + 1)))
    return Graph.from_edges(a * b, [e for e in es if rng.random() >= drop])


def apex_graph(planar: Graph) -> Graph:
    """Add a universal vertex."""
    n = planar.n
    return Graph.from_edges(n + 1, list(planar.edges) + [(v, n) for v in range(n)])
