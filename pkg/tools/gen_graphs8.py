"""Generate every graph on at most 8 vertices, one per isomorphism class.

Graphs on n vertices are obtained from those on n - 1 vertices by adding a
vertex with every possible neighbourhood; duplicates are removed by
canonical form.  Output: one graph6 line per graph, ordered by
(vertex count, edge count, canonical form).
"""
import sys

from surfk6.canon import canonical_form
from surfk6.graphs import Graph, to_graph6


def main(path: str, nmax: int = 8) -> None:
    layers = [{canonical_form(Graph(1, ())): Graph(1, ())}]
    for n in range(2, nmax + 1):
        nxt = {}
        for g in layers[-1].values():
            for mask in range(1 << (n - 1)):
                h = Graph.from_edges(n, list(g.edges) + [(v, n - 1) for v in range(n - 1) if mask >> v & 1])
                f = canonical_form(h)
                if f not in nxt:
                    nxt[f] = h
        layers.append(nxt)
        print(n, len(nxt), file=sys.stderr)
    with open(path, "w", encoding="ascii") as fh:
        for layer in layers:
            for f, g in sorted(layer.items(), key=lambda kv: (kv[1].m, kv[0])):
                fh.write(f.decode("ascii") + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/graphs8.g6")
