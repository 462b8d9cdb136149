"""Minor models: search, independent verification and a brute-force oracle.

``has_minor`` first shrinks ``G`` with reductions that cannot destroy an
``H``-minor when ``H`` is connected with minimum degree ``d``:

* vertices of degree at most one are deleted (``d >= 2``);
* degree-two vertices are suppressed (``d >= 3``);
* simplicial vertices of degree below ``d`` are deleted.

For complete ``H`` a seeded contraction heuristic runs first; the exact
phase searches partitions of each component into connected parts.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations

from . import _backend
from .graphs import Graph
from .surgery import Move, SurgeryError, delta_to_wye

DEFAULT_BUDGET = 5_000_000
BUDGET_ENV = "SURFK6_NODE_BUDGET"
ORACLE_MAX_VERTICES = 14
HEURISTIC_TRIALS = 40


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out; the answer is unknown, not negative."""

    def __init__(self, nodes: int):
        super().__init__(f"minor search exceeded its budget after {nodes} nodes")
        self.nodes = nodes


class OracleSizeError(ValueError):
    pass


class PropagationError(ValueError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


# -- models ------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorModel:
    branch: dict = field(default_factory=dict)  # H-vertex -> frozenset of G-vertices
    witness: dict = field(default_factory=dict)  # (a, b) with a < b -> (u, v)

    def format(self) -> str:
        out = []
        for x in sorted(self.branch):
            out.append(f"branch {x}: " + " ".join(str(v) for v in sorted(self.branch[x])))
        for (a, b) in sorted(self.witness):
            u, v = self.witness[(a, b)]
            out.append(f"witness {a}-{b}: {u}-{v}")
        return "\n".join(out) + "\n"

    @classmethod
    def parse(cls, text: str) -> "MinorModel":
        branch, witness = {}, {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(":")
            kind, _, key = head.partition(" ")
            if kind == "branch":
                branch[int(key)] = frozenset(int(t) for t in rest.split())
            elif kind == "witness":
                a, b = (int(t) for t in key.split("-"))
                u, v = (int(t) for t in rest.strip().split("-"))
                witness[(min(a, b), max(a, b))] = (u, v)
            else:
                raise ValueError(f"unknown model record {kind!r}")
        return cls(branch, witness)

    def relabel(self, phi) -> "MinorModel":
        """Move the model along a vertex map of G."""
        return MinorModel(
            {x: frozenset(phi[v] for v in s) for x, s in self.branch.items()},
            {k: (phi[u], phi[v]) for k, (u, v) in self.witness.items()},
        )

    def to_json(self) -> dict:
        return {
            "branch": {str(x): sorted(s) for x, s in sorted(self.branch.items())},
            "witness": {f"{a}-{b}": list(e) for (a, b), e in sorted(self.witness.items())},
        }


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _connected(g: Graph, vs: frozenset) -> bool:
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def verify_minor_model(g: Graph, h: Graph, model: MinorModel) -> Verdict:
    """Check every model invariant from scratch."""
    for x in model.branch:
        if not 0 <= x < h.n:
            return Verdict(False, "unknown H vertex")
    owner = {}
    for x in range(h.n):
        if x not in model.branch:
            return Verdict(False, "missing branch set")
        s = model.branch[x]
        if not s:
            return Verdict(False, "empty branch set")
        for v in s:
            if not 0 <= v < g.n:
                return Verdict(False, "vertex out of range")
            if v in owner:
                return Verdict(False, "overlap")
            owner[v] = x
    for x in range(h.n):
        if not _connected(g, frozenset(model.branch[x])):
            return Verdict(False, "disconnected branch set")
    for a, b in h.edges:
        wit = model.witness.get((a, b))
        if wit is None:
            return Verdict(False, "missing witness")
        u, v = wit
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return Verdict(False, "witness not an edge")
        if {owner.get(u), owner.get(v)} != {a, b}:
            return Verdict(False, "witness endpoints misplaced")
    for key in model.witness:
        if key not in h.edge_set:
            return Verdict(False, "witness for a non-edge of H")
    return Verdict(True)


def _with_witnesses(g: Graph, h: Graph, branch: dict) -> MinorModel:
    owner = {v: x for x, s in branch.items() for v in s}
    witness = {}
    for u, v in g.edges:
        a, b = owner.get(u), owner.get(v)
        if a is None or b is None or a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key in h.edge_set and key not in witness:
            witness[key] = (u, v) if owner[u] == key[0] else (v, u)
    return MinorModel({x: frozenset(s) for x, s in branch.items()}, witness)


# -- reductions ------------------------------------------------------------------------


class _Reducer:
    def __init__(self, g: Graph, min_deg: int, allow_isolated: bool):
        self.adj = {v: set(g.adj[v]) for v in range(g.n)}
        self.ops: list[tuple] = []
        self.min_deg = min_deg
        self.allow_isolated = allow_isolated

    def _delete(self, v):
        for w in self.adj.pop(v):
            self.adj[w].discard(v)
        self.ops.append(("del", v))

    def run(self):
        d = self.min_deg
        queue = sorted(self.adj)
        changed = True
        while changed:
            changed = False
            for v in queue:
                if v not in self.adj:
                    continue
                nb = self.adj[v]
                deg = len(nb)
                if deg == 0 and self.allow_isolated:
                    continue
                if deg <= 1 and (d >= 2 or deg == 0):
                    self._delete(v)
                    changed = True
                elif deg == 2 and d >= 3:
                    a, b = sorted(nb)
                    added = b not in self.adj[a]
                    self._delete(v)
                    self.ops[-1] = ("sup", v, a, b)
                    if added:
                        self.adj[a].add(b)
                        self.adj[b].add(a)
                    changed = True
                elif deg < d and all(y in self.adj[x] for x, y in combinations(nb, 2)):
                    self._delete(v)
                    changed = True
            queue = sorted(self.adj)
        return self

    def lift(self, branch: dict) -> dict:
        owner = {v: x for x, s in branch.items() for v in s}
        branch = {x: set(s) for x, s in branch.items()}
        for op in reversed(self.ops):
            if op[0] != "sup":
                continue
            _, v, a, b = op
            x = owner.get(a, owner.get(b))
            if x is not None:
                branch[x].add(v)
                owner[v] = x
        return branch


# -- heuristic for complete targets -------------------------------------------------


def _clique_with(adj: dict, u, t: int):
    """A t-clique containing ``u`` or None."""
    cand = [w for w in adj[u] if len(adj[w]) >= t - 1]

    def grow(clique, pool):
        if len(clique) == t:
            return clique
        for i, w in enumerate(pool):
            if len(clique) + len(pool) - i < t:
                return None
            rest = [x for x in pool[i + 1:] if x in adj[w]]
            got = grow(clique + [w], rest)
            if got:
                return got
        return None

    if len(adj[u]) < t - 1:
        return None
    return grow([u], sorted(cand))


def _contraction_heuristic(adj0: dict, t: int, rng: random.Random, trials: int):
    for v in sorted(adj0):
        c = _clique_with(adj0, v, t)
        if c:
            return {i: {x} for i, x in enumerate(c)}
    for _ in range(trials):
        adj = {v: set(nb) for v, nb in adj0.items()}
        members = {v: {v} for v in adj}
        while len(adj) > t:
            low = min(len(nb) for nb in adj.values())
            v = rng.choice(sorted(x for x, nb in adj.items() if len(nb) == low))
            if not adj[v]:
                del adj[v]
                continue
            best = min(len(adj[u] & adj[v]) for u in adj[v])
            u = rng.choice(sorted(x for x in adj[v] if len(adj[x] & adj[v]) == best))
            for w in adj.pop(v):
                adj[w].discard(v)
                if w != u:
                    adj[w].add(u)
                    adj[u].add(w)
            members[u] |= members.pop(v)
            c = _clique_with(adj, u, t)
            if c:
                return {i: members[x] for i, x in enumerate(c)}
    return None


# -- exact search ------------------------------------------------------------------------


def _search_order(adj: dict, vertices) -> list:
    """Greedy low-frontier order: start at a highest-degree vertex, then
    repeatedly take the vertex that leaves the fewest assigned vertices with
    unassigned neighbours (ties: more assigned neighbours, higher degree, id).
    """
    left = set(vertices)
    order = []
    frontier: set = set()
    while left:
        if not order or not any(w in left for x in frontier for w in adj[x]):
            v = min(left, key=lambda x: (-len(adj[x]), x))
        else:
            best = None
            for v0 in sorted(left):
                done = sum(1 for w in adj[v0] if w not in left)
                if done == 0:
                    continue
                after = {x for x in frontier if any(w in left and w != v0 for w in adj[x])}
                if any(w in left and w != v0 for w in adj[v0]):
                    after.add(v0)
                key = (len(after), -done, -len(adj[v0]), v0)
                if best is None or key < best[0]:
                    best = (key, v0)
            v = best[1]
        order.append(v)
        left.discard(v)
        frontier = {x for x in frontier | {v} if any(w in left for w in adj[x])}
    return order


def _exact(adj: dict, vertices, h: Graph, complete: bool, allow_skip: bool, budget: int, backend=None):
    verts = sorted(vertices)
    idx = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for v in verts:
        for w in adj[v]:
            if w in idx:
                masks[idx[v]] |= 1 << idx[w]
    order = [idx[v] for v in _search_order(adj, set(verts))]
    need = [0] * h.n
    for a, b in h.edges:
        need[a] |= 1 << b
        need[b] |= 1 << a
    try:
        assign, nodes = _backend.partition_search(
            len(verts), masks, order, h.n, need, complete, allow_skip, budget, backend)
    except _backend.BudgetExceeded as exc:
        raise SearchBudgetExceeded(exc.nodes) from None
    if assign is None:
        return None, nodes
    branch: dict = {x: set() for x in range(h.n)}
    for i, p in enumerate(assign):
        if p >= 0:
            branch[p].add(verts[i])
    return branch, nodes


def _is_complete(h: Graph) -> bool:
    return h.m == h.n * (h.n - 1) // 2


@dataclass
class SearchStats:
    nodes: int = 0
    heuristic: bool = False
    reduced_vertices: int = 0


def has_minor(g: Graph, h: Graph, budget: int | None = None, *, seed: int = 0,
              heuristic: bool = True, backend: str | None = None,
              stats: SearchStats | None = None) -> MinorModel | None:
    """Return a verified model of ``h`` in ``g`` or None.

    Raises SearchBudgetExceeded when the exact phase runs out of nodes.
    """
    budget = default_budget() if budget is None else budget
    stats = stats if stats is not None else SearchStats()
    if h.n == 0:
        return MinorModel({}, {})
    if g.n < h.n or g.m < h.m:
        return None
    complete = _is_complete(h)
    if not h.is_connected():
        adj = {v: set(g.adj[v]) for v in range(g.n)}
        branch, nodes = _exact(adj, set(range(g.n)), h, complete, True, budget, backend)
        stats.nodes += nodes
        return _finish(g, h, branch)
    d = h.min_degree()
    red = _Reducer(g, d, allow_isolated=(h.n == 1)).run()
    adj = red.adj
    stats.reduced_vertices = len(adj)
    comps = _components(adj)
    for comp in comps:
        if len(comp) < h.n:
            continue
        sub = {v: adj[v] for v in comp}
        if sum(len(nb) for nb in sub.values()) // 2 < h.m:
            continue
        branch = None
        if complete and heuristic and h.n >= 3:
            branch = _contraction_heuristic(sub, h.n, random.Random(seed), HEURISTIC_TRIALS)
            stats.heuristic = branch is not None
        if branch is None:
            branch, nodes = _exact(sub, set(comp), h, complete, False, budget - stats.nodes, backend)
            stats.nodes += nodes
        if branch is not None:
            return _finish(g, h, red.lift(branch))
    return None


def _components(adj: dict) -> list[list]:
    seen, out = set(), []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _finish(g: Graph, h: Graph, branch):
    if branch is None:
        return None
    model = _with_witnesses(g, h, branch)
    verdict = verify_minor_model(g, h, model)
    if not verdict:
        raise AssertionError(f"search produced an invalid model: {verdict.reason}")
    return model


# -- brute-force oracle -------------------------------------------------------------------


def _connected_subsets(g: Graph) -> list[int]:
    """Every non-empty vertex set inducing a connected subgraph, as bitmasks."""
    masks = g.masks
    out = set()
    for s in range(g.n):
        # grow sets whose minimum vertex is s
        allowed = ~((1 << s) - 1)
        stack = [1 << s]
        local = {1 << s}
        while stack:
            cur = stack.pop()
            nb = 0
            x = cur
            while x:
                low = x & -x
                nb |= masks[low.bit_length() - 1]
                x ^= low
            nb &= allowed & ~cur
            while nb:
                low = nb & -nb
                nb ^= low
                nxt = cur | low
                if nxt not in local:
                    local.add(nxt)
                    stack.append(nxt)
        out |= local
    return sorted(out, key=lambda m: (m.bit_count(), m))


def brute_force_minor_oracle(g: Graph, h: Graph) -> MinorModel | None:
    """Exhaustive search over disjoint connected branch sets (``|V(G)| <= 14``)."""
    if g.n > ORACLE_MAX_VERTICES:
        raise OracleSizeError(f"oracle is capped at {ORACLE_MAX_VERTICES} vertices")
    if h.n == 0:
        return MinorModel({}, {})
    subsets = _connected_subsets(g)
    masks = g.masks

    def nbhd(m):
        out = 0
        while m:
            low = m & -m
            out |= masks[low.bit_length() - 1]
            m ^= low
        return out

    nbr = {m: nbhd(m) for m in subsets}
    # for complete targets branch sets are taken in increasing order of their
    # minimum vertex; sort so each level scans a suffix
    if _is_complete(h):
        subsets.sort(key=lambda m: ((m & -m).bit_length(), m.bit_count(), m))
    by_min_start = [0] * (g.n + 2)
    for lo in range(g.n + 2):
        by_min_start[lo] = next((i for i, m in enumerate(subsets) if (m & -m).bit_length() > lo), len(subsets))
    # H vertices in BFS order so each one meets earlier neighbours
    order = []
    for s in range(h.n):
        if s in order:
            continue
        order.append(s)
        i = len(order) - 1
        while i < len(order):
            for y in sorted(h.adj[order[i]]):
                if y not in order:
                    order.append(y)
            i += 1
    complete = _is_complete(h)
    chosen: dict[int, int] = {}

    def rec(k, used):
        if k == len(order):
            return True
        x = order[k]
        earlier = [chosen[y] for y in h.adj[x] if y in chosen]
        lowest = 0
        if complete and k > 0:
            prev = chosen[order[k - 1]]
            lowest = (prev & -prev).bit_length()
        for m in subsets[by_min_start[lowest]:]:
            if m & used:
                continue
            nm = nbr[m]
            if all(nm & e for e in earlier):
                chosen[x] = m
                if rec(k + 1, used | m):
                    return True
                del chosen[x]
        return False

    if not rec(0, 0):
        return None
    branch = {x: {v for v in range(g.n) if m >> v & 1} for x, m in chosen.items()}
    return _with_witnesses(g, h, branch)


# -- propagation through ΔY ----------------------------------------------------------------


def propagate_model_through_delta_wye(g: Graph, g2: Graph, model2: MinorModel, move: Move,
                                      h: Graph | None = None) -> MinorModel:
    """Turn a model in ``g2 = delta_to_wye(g, T)`` into a model in ``g``.

    The new vertex of ``g2`` is ``g.n``.
    """
    if move.kind != "dy" or move.triangle is None:
        raise PropagationError("transformation record is not a ΔY move")
    try:
        expect = delta_to_wye(g, move.triangle)
    except SurgeryError as exc:
        raise PropagationError(f"invalid transformation record: {exc}") from None
    if expect != g2:
        raise PropagationError("invalid transformation record: graphs do not match")
    h = h if h is not None else Graph.complete(len(model2.branch))
    if not verify_minor_model(g2, h, model2):
        raise PropagationError("input model is not valid in the transformed graph")
    y = g.n
    tri = set(move.triangle)
    branch = {x: set(s) for x, s in model2.branch.items()}
    holder = next((x for x, s in branch.items() if y in s), None)
    if holder is None or len(branch[holder]) > 1:
        # y unused, or internal: the triangle edges reconnect what y joined
        if holder is not None:
            branch[holder].discard(y)
        model = _with_witnesses(g, h, branch)
        verdict = verify_minor_model(g, h, model)
        if not verdict:
            raise PropagationError(f"propagated model failed verification: {verdict.reason}")
        return model
    # y is a singleton: hand its role to a triangle vertex, free ones first
    owner = {v: x for x, s in branch.items() for v in s}
    for t in sorted(tri, key=lambda v: (v in owner, v)):
        trial = {x: set(s) for x, s in branch.items()}
        if t in owner:
            trial[owner[t]].discard(t)
        trial[holder] = {t}
        model = _with_witnesses(g, h, trial)
        if verify_minor_model(g, h, model):
            return model
    raise PropagationError("no triangle vertex can take over the singleton branch set")
