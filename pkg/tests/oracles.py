"""Independent reference implementations used only by the tests."""
import itertools

import networkx as nx


def _triangles(g):
    for a, b, c in itertools.combinations(sorted(g), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            yield a, b, c


def dy_moves(g: nx.Graph):
    for a, b, c in _triangles(g):
        h = g.copy()
        h.remove_edges_from([(a, b), (b, c), (a, c)])
        y = max(g) + 1
        h.add_edges_from([(y, a), (y, b), (y, c)])
        yield h
    for v in g:
        nb = list(g[v])
        if len(nb) == 3 and not any(g.has_edge(p, q) for p, q in itertools.combinations(nb, 2)):
            h = g.copy()
            h.remove_node(v)
            h.add_edges_from(itertools.combinations(nb, 2))
            yield nx.convert_node_labels_to_integers(h)


def dy_closure(seed: nx.Graph) -> list:
    """ΔY/YΔ class up to isomorphism, deduplicated with networkx."""
    buckets: dict = {}
    found = []

    def add(g):
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        if any(nx.is_isomorphic(o, g) for o in buckets.get(key, [])):
            return False
        buckets.setdefault(key, []).append(g)
        found.append(g)
        return True

    add(seed)
    stack = [seed]
    while stack:
        for h in dy_moves(stack.pop()):
            if add(h):
                stack.append(h)
    return found


def triangle_free(g: nx.Graph) -> bool:
    return next(_triangles(g), None) is None
