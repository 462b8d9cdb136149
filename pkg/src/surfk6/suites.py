"""Named property suites, shared by the CLI and the acceptance tests.

Each suite is deterministic given its seed and returns a :class:`SuiteReport`.
On a violation the offending input is written under ``out_dir`` for replay.
"""
from __future__ import annotations

import random
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .curves import nonseparating_face_width, three_path_check
from .dyclass import enumerate_class, require_seed, triangle_free_members, verify_projective_theorem
from .embedding import EmbeddedGraph, write_emb
from .fixtures import k6_projective, projective_grid, random_grid_sum, scramble, torus_grid
from .graphs import Graph, random_graph, to_graph6
from .linkage import (
    SweepFailure,
    homologous_cycle_linkage_check,
    max_disjoint_paths,
    randomized_theorem_4_1_sweep,
    separates,
)
from .surgery import cut_width_inequality_check


@dataclass
class SuiteReport:
    name: str
    seed: int
    checks: int = 0
    violations: int = 0
    results: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.checks > 0


def _out(out_dir) -> Path:
    p = Path(out_dir) if out_dir else Path(tempfile.mkdtemp(prefix="surfk6-"))
    p.mkdir(parents=True, exist_ok=True)
    return p


# -- projective class ---------------------------------------------------------------


def suite_pp(seed: int = 0, trials: int | None = None, out_dir=None) -> SuiteReport:
    rep = SuiteReport("pp", seed)
    g = require_seed(projective_grid())
    cls = enumerate_class(g)
    proof = verify_projective_theorem(cls)
    rep.results.update(members=len(cls), triangle_free=len(triangle_free_members(cls)),
                       certified=proof.certified)
    rep.checks = len(cls)
    rep.violations = len(cls) - proof.certified
    if proof.failures:
        stem = _out(out_dir) / "pp-class"
        rep.counterexamples += cls.write(stem)
        rep.results["failed_members"] = " ".join(str(i) for i, _ in proof.failures)
    return rep


# -- cylinder sweep -----------------------------------------------------------------


def suite_cylinder(seed: int = 0, trials: int | None = None, out_dir=None) -> SuiteReport:
    trials = 200 if trials is None else trials
    rep = SuiteReport("cylinder", seed)
    try:
        sweep = randomized_theorem_4_1_sweep(trials, (7, 8, 9), seed, replay_dir=out_dir)
    except SweepFailure as exc:
        rep.checks = rep.violations = 1
        rep.results["failure"] = str(exc)
        rep.counterexamples += exc.paths
        return rep
    rep.checks = sweep.trials
    rep.violations = sweep.trials - sweep.verified
    rep.results["verified"] = f"{sweep.verified}/{sweep.trials}"
    rep.results["cases"] = " ".join(f"{c}={n}" for c, n in sorted(sweep.coverage.items()))
    return rep


# -- width inequality after cutting -------------------------------------------------


def cutwidth_fixtures(count: int, seed: int):
    """Random grid sums whose minimal non-separating chain can be cut."""
    rng = random.Random(seed)
    while count:
        emb = random_grid_sum(rng)
        w = nonseparating_face_width(emb)
        if w.value is None or w.value < 2:
            continue
        yield emb, w.witness
        count -= 1


def suite_cutwidth(seed: int = 0, trials: int | None = None, out_dir=None) -> SuiteReport:
    trials = 50 if trials is None else trials
    rep = SuiteReport("cutwidth", seed)
    finite = 0
    for i, (emb, chain) in enumerate(cutwidth_fixtures(trials, seed)):
        r = cut_width_inequality_check(emb, chain)
        rep.checks += 1
        finite += r.fw_after is not None
        if not r.passed:
            rep.violations += 1
            stem = _out(out_dir) / f"cutwidth{i}"
            write_emb(emb, stem.with_suffix(".emb"))
            stem.with_suffix(".chain").write_text(chain.format() + "\n")
            rep.counterexamples.append(str(stem.with_suffix(".emb")))
    rep.results["fixtures"] = rep.checks
    rep.results["finite_after_cut"] = finite
    return rep


# -- three-path condition -----------------------------------------------------------


def _random_path(g: Graph, x: int, y: int, blocked: set, forbid_direct: bool, rng: random.Random):
    """A random simple x-y path avoiding ``blocked``, by randomized DFS or BFS."""
    dfs = rng.random() < 0.5
    par = {x: None}
    frontier = [x]
    while frontier:
        v = frontier.pop() if dfs else frontier.pop(0)
        nbrs = list(g.adj[v])
        rng.shuffle(nbrs)
        for w in nbrs:
            if w in par or w in blocked or (forbid_direct and v == x and w == y):
                continue
            par[w] = v
            if w == y:
                path = [y]
                while path[-1] != x:
                    path.append(par[path[-1]])
                return path[::-1]
            frontier.append(w)
    return None


def sample_theta(g: Graph, rng: random.Random, tries: int = 50):
    """Three internally disjoint paths with common ends, or None."""
    for _ in range(tries):
        x, y = rng.sample(range(g.n), 2)
        blocked: set = set()
        direct = False
        paths = []
        for _ in range(3):
            p = _random_path(g, x, y, blocked, direct, rng)
            if p is None:
                break
            direct |= len(p) == 2
            blocked |= set(p[1:-1])
            paths.append(p)
        if len(paths) == 3:
            return paths
    return None


def theta_fixtures():
    return [torus_grid(4), torus_grid(5), torus_grid(6), torus_grid(4, 6),
            projective_grid(), k6_projective()]


def suite_threepath(seed: int = 0, trials: int | None = None, out_dir=None,
                    fixtures: list[EmbeddedGraph] | None = None) -> SuiteReport:
    trials = 1000 if trials is None else trials
    rep = SuiteReport("threepath", seed)
    rng = random.Random(seed)
    fixtures = fixtures if fixtures is not None else theta_fixtures()
    fixtures = [scramble(e, rng) for e in fixtures]
    graphs = [e.to_graph() for e in fixtures]
    hist: Counter = Counter()
    while rep.checks < trials:
        i = rep.checks % len(fixtures)
        paths = sample_theta(graphs[i], rng)
        if paths is None:
            continue
        r = three_path_check(fixtures[i], *paths)
        rep.checks += 1
        hist[(r.contractible_count, r.separating_count)] += 1
        if not r.passed:
            rep.violations += 1
            stem = _out(out_dir) / f"theta{rep.checks}"
            write_emb(fixtures[i], stem.with_suffix(".emb"))
            stem.with_suffix(".paths").write_text("".join(" ".join(map(str, p)) + "\n" for p in paths))
            rep.counterexamples.append(str(stem.with_suffix(".emb")))
    rep.results["thetas"] = rep.checks
    rep.results["contractible_separating_histogram"] = " ".join(
        f"{c}/{s}:{n}" for (c, s), n in sorted(hist.items()))
    return rep


# -- Menger ---------------------------------------------------------------------------


def menger_instances(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(4, 18)
        g = random_graph(n, rng.uniform(0.1, 0.5), rng)
        S = set(rng.sample(range(n), rng.randint(1, max(1, n // 3))))
        T = set(rng.sample(range(n), rng.randint(1, max(1, n // 3))))
        yield g, S, T


def suite_menger(seed: int = 0, trials: int | None = None, out_dir=None) -> SuiteReport:
    trials = 100 if trials is None else trials
    rep = SuiteReport("menger", seed)
    for i, (g, S, T) in enumerate(menger_instances(trials, seed)):
        link, sep = max_disjoint_paths(g, S, T)
        rep.checks += 1
        try:
            link.check(g)
            ok = len(link) == len(sep) and separates(g, S, T, sep)
        except AssertionError:
            ok = False
        if not ok:
            rep.violations += 1
            path = _out(out_dir) / f"menger{i}.txt"
            path.write_text(f"{to_graph6(g)}\nS {' '.join(map(str, sorted(S)))}\n"
                            f"T {' '.join(map(str, sorted(T)))}\n")
            rep.counterexamples.append(str(path))
    sides = []
    for n in (5, 6, 7):
        r = homologous_cycle_linkage_check(torus_grid(n), list(range(n)), [(n // 2) * n + j for j in range(n)])
        rep.checks += 1
        rep.violations += not r.passed
        sides.append(f"{n}:{r.sides[0]},{r.sides[1]}>={r.nsfw}")
    rep.results["instances"] = trials
    rep.results["torus_linkages"] = " ".join(sides)
    return rep


SUITES = {
    "pp": suite_pp,
    "cylinder": suite_cylinder,
    "cutwidth": suite_cutwidth,
    "threepath": suite_threepath,
    "menger": suite_menger,
}
