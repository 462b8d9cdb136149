"""Canonical labelling of simple graphs by individualization-refinement.

Partitions are ordered lists of vertex bitmasks.  Refinement splits cells by
neighbour counts into splitter cells until the partition is equitable; the
search individualizes vertices of the first smallest non-singleton cell and
keeps the leaf whose relabelled adjacency rows are lexicographically least.
Automorphisms discovered at equal leaves prune sibling subtrees.
"""
from __future__ import annotations

from .graphs import Graph, GraphError, to_graph6

MAX_VERTICES = 64


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _refine(adj: tuple[int, ...], cells: list[int], queue: list[int]) -> list[int]:
    cells = list(cells)
    queue = list(queue)
    pending = set(queue)
    qi = 0
    while qi < len(queue):
        W = queue[qi]
        qi += 1
        if W not in pending:
            continue
        pending.discard(W)
        i = 0
        while i < len(cells):
            X = cells[i]
            if X & (X - 1) == 0:
                i += 1
                continue
            groups: dict[int, int] = {}
            for v in _bits(X):
                c = (adj[v] & W).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                i += 1
                continue
            frags = [groups[c] for c in sorted(groups)]
            cells[i:i + 1] = frags
            pending.discard(X)
            for f in frags:
                queue.append(f)
                pending.add(f)
            i += len(frags)
    return cells


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.masks
        self.best_cert = None
        self.best_order = None
        self.first_cert = None
        self.first_order = None
        self.autos: list[list[int]] = []

    def leaf_cert(self, order: list[int]) -> tuple[int, ...]:
        lab = [0] * self.n
        for i, v in enumerate(order):
            lab[v] = i
        rows = []
        for v in order:
            r = 0
            for w in _bits(self.adj[v]):
                r |= 1 << lab[w]
            rows.append(r)
        return tuple(rows)

    def record_auto(self, a: list[int], b: list[int]) -> None:
        # vertex a[i] maps to b[i]
        gamma = [0] * self.n
        for x, y in zip(a, b):
            gamma[x] = y
        if any(gamma[v] != v for v in range(self.n)):
            self.autos.append(gamma)

    def orbits_fixing(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.autos:
            if all(gamma[p] == p for p in prefix):
                for v in range(self.n):
                    a, b = find(v), find(gamma[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def run(self, cells: list[int], prefix: list[int]) -> None:
        target = None
        for i, X in enumerate(cells):
            if X & (X - 1):
                if target is None or X.bit_count() < cells[target].bit_count():
                    target = i
        if target is None:
            order = [c.bit_length() - 1 for c in cells]
            cert = self.leaf_cert(order)
            if self.first_cert is None:
                self.first_cert, self.first_order = cert, order
                self.best_cert, self.best_order = cert, order
                return
            if cert == self.first_cert:
                self.record_auto(self.first_order, order)
            elif cert == self.best_cert:
                self.record_auto(self.best_order, order)
            elif cert < self.best_cert:
                self.best_cert, self.best_order = cert, order
            return
        X = cells[target]
        tried: list[int] = []
        for v in _bits(X):
            if tried:
                orb = self.orbits_fixing(prefix)
                if any(orb[v] == orb[t] for t in tried):
                    continue
            tried.append(v)
            child = cells[:target] + [1 << v, X & ~(1 << v)] + cells[target + 1:]
            self.run(_refine(self.adj, child, [1 << v]), prefix + [v])


def canonical_labeling(g: Graph) -> tuple[bytes, list[int]]:
    """Return (canonical form, perm) where ``g.relabel(perm)`` is canonical."""
    if g.n > MAX_VERTICES:
        raise GraphError(f"canonical form limited to {MAX_VERTICES} vertices")
    if g.n == 0:
        return b"?", []
    s = _Search(g)
    start = _refine(s.adj, [(1 << g.n) - 1], [(1 << g.n) - 1])
    s.run(start, [])
    perm = [0] * g.n
    for i, v in enumerate(s.best_order):
        perm[v] = i
    form = to_graph6(g.relabel(perm)).encode("ascii")
    return form, perm


def canonical_form(g: Graph) -> bytes:
    return canonical_labeling(g)[0]


def isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A map ``phi`` with ``g.relabel(phi) == h``, or None."""
    fg, pg = canonical_labeling(g)
    fh, ph = canonical_labeling(h)
    if fg != fh:
        return None
    inv_h = [0] * h.n
    for v, i in enumerate(ph):
        inv_h[i] = v
    return [inv_h[pg[v]] for v in range(g.n)]
