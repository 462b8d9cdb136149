"""Pure-Python search kernels (fallback for the compiled extension).

Both backends expose the same functions with identical semantics; the
compiled one is restricted to graphs with at most 64 vertices.

The partition search memoizes failed states.  Once the first ``k`` vertices
of the order are assigned, the future only sees each part through its
frontier (assigned vertices with an unassigned neighbour), how that
frontier is grouped into components of the part, which pairs of parts
already touch, and how many parts are still empty.
"""
from __future__ import annotations


class BudgetExceeded(Exception):
    def __init__(self, nodes: int):
        super().__init__(f"node budget exhausted after {nodes} expansions")
        self.nodes = nodes


def flood(adj, seed: int, allowed: int) -> int:
    """Vertices reachable from ``seed`` inside ``allowed`` (seed included)."""
    reach = seed
    frontier = seed
    while frontier:
        nbr = 0
        while frontier:
            low = frontier & -frontier
            nbr |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nbr & allowed & ~reach
        reach |= frontier
    return reach


def closed_nbhd(adj, mask: int) -> int:
    out = mask
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def _feasible(adj, parts, unassigned, need, h) -> bool:
    empties = 0
    reach = [0] * h
    for q in range(h):
        P = parts[q]
        if not P:
            empties += 1
            continue
        R = flood(adj, P & -P, P | unassigned)
        if P & ~R:
            return False
        reach[q] = R
    if empties > unassigned.bit_count():
        return False
    for q in range(h):
        if not parts[q]:
            continue
        Rq = reach[q]
        closed = closed_nbhd(adj, Rq)
        req = need[q]
        while req:
            low = req & -req
            r = low.bit_length() - 1
            req ^= low
            if parts[r]:
                if not (closed & reach[r]):
                    return False
            elif not (Rq & unassigned):
                return False
    return True


def _state_key(adj, parts, unassigned, h, k, complete):
    frontier = 0
    x = unassigned
    while x:
        low = x & -x
        frontier |= adj[low.bit_length() - 1]
        x ^= low
    sigs = []
    empties = 0
    for q in range(h):
        P = parts[q]
        if not P:
            empties += 1
            continue
        comps = []
        rest = P
        while rest:
            c = flood(adj, rest & -rest, P)
            rest &= ~c
            if c & frontier:
                comps.append(c & frontier)
        sigs.append((tuple(sorted(comps)), q))
    if complete:
        sigs.sort()
    labels = [q for _, q in sigs]
    touch = []
    for q in labels:
        cq = closed_nbhd(adj, parts[q])
        touch.append(tuple(bool(cq & parts[r]) for r in labels))
    if complete:
        return (k, tuple(s for s, _ in sigs), tuple(touch), empties)
    return (k, tuple(sigs), tuple(touch), empties)


MEMO_LIMIT = 1_000_000


def partition_search(n, adj, order, h, need, complete, allow_skip, budget, memo=True):
    """Assign vertices (in ``order``) to ``h`` connected parts so that parts
    ``p`` and ``q`` touch whenever bit ``q`` of ``need[p]`` is set.

    Without ``allow_skip`` every vertex is assigned.  ``complete`` enables
    restricted-growth symmetry breaking (all parts interchangeable).
    Returns (assignment or None, nodes expanded).
    """
    parts = [0] * h
    assign = [-1] * n
    unassigned = 0
    for v in order:
        unassigned |= 1 << v
    nodes = 0
    failed = set()
    use_memo = memo and not allow_skip

    def dfs(k, used):
        nonlocal nodes, unassigned
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if k == len(order):
            return True
        key = None
        if use_memo and k > 0:
            key = _state_key(adj, parts, unassigned, h, k, complete)
            if key in failed:
                return False
        v = order[k]
        bit = 1 << v
        unassigned &= ~bit
        limit = min(h, used + 1) if complete else h
        for p in range(limit):
            parts[p] |= bit
            assign[v] = p
            if _feasible(adj, parts, unassigned, need, h):
                if dfs(k + 1, max(used, p + 1)):
                    return True
            parts[p] &= ~bit
        assign[v] = -1
        if allow_skip and _feasible(adj, parts, unassigned, need, h):
            if dfs(k + 1, used):
                return True
        unassigned |= bit
        if key is not None and len(failed) < MEMO_LIMIT:
            failed.add(key)
        return False

    found = dfs(0, 0)
    return (list(assign) if found else None), nodes
