"""Write the named fixtures under fixtures/ and refresh MANIFEST.sha256.

Run from the repository root: ``python3 tools/gen_fixtures.py``.
"""
import hashlib
import random
from pathlib import Path

from surfk6.embedding import write_emb
from surfk6.fixtures import NAMED
from surfk6.graphs import Graph, apex_graph, petersen, to_graph6, triangulated_grid

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    ROOT.mkdir(exist_ok=True)
    for name, make in NAMED.items():
        write_emb(make(), ROOT / f"{name}.emb")
    graphs = {
        "k7": Graph.complete(7),
        "petersen": petersen(),
        "apex-tgrid4": apex_graph(triangulated_grid(4, 4, random.Random(7))),
    }
    for name, g in graphs.items():
        (ROOT / f"{name}.g6").write_text(to_graph6(g) + "\n", encoding="ascii")
    lines = []
    for path in sorted(ROOT.iterdir()):
        if path.name == "MANIFEST.sha256":
            continue
        lines.append(f"{hashlib.sha256(path.read_bytes()).hexdigest()}  {path.name}\n")
    (ROOT / "MANIFEST.sha256").write_text("".join(lines))


if __name__ == "__main__":
    main()
