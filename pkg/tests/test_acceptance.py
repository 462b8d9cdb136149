"""The ten acceptance criteria, one test each.

Every criterion records a PASS/FAIL line that is printed in the terminal
summary (see conftest.py); ``python3 tests/test_acceptance.py`` prints the
same lines without pytest.
"""
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

from surfk6.curves import NON_CONTRACTIBLE, NON_SEPARATING, exhaustive_width, face_width, nonseparating_face_width
from surfk6.dyclass import enumerate_class, require_seed, triangle_free_members, verify_projective_theorem
from surfk6.fixtures import projective_grid, torus_grid
from surfk6.graphs import Graph, random_graph, read_graph6_file
from surfk6.linkage import CASES
from surfk6.minors import brute_force_minor_oracle, has_minor, verify_minor_model
from surfk6.suites import suite_cutwidth, suite_cylinder, suite_menger, suite_threepath

GRAPHS8 = Path(__file__).resolve().parent.parent / "fixtures" / "graphs8.g6"
K4, K5, K6 = (Graph.complete(t) for t in (4, 5, 6))

RESULTS: dict = {}
_CACHE: dict = {}


def _record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def _pp():
    if "cls" not in _CACHE:
        t = time.perf_counter()
        _CACHE["cls"] = enumerate_class(require_seed(projective_grid()))
        _CACHE["enum_s"] = time.perf_counter() - t
    return _CACHE["cls"]


def check_1():
    cls = _pp()
    return len(cls) == 270, f"{len(cls)} ΔY/YΔ classes (expected 270) in {_CACHE['enum_s']:.1f}s"


def check_2():
    n = len(triangle_free_members(_pp()))
    return n == 8, f"{n} triangle-free members (expected 8)"


def check_3():
    t = time.perf_counter()
    rep = verify_projective_theorem(_pp())
    dt = time.perf_counter() - t
    direct = sum(m == "direct" for m in rep.method.values())
    return rep.passed and rep.certified == 270 and dt <= 600, (
        f"{rep.certified}/{rep.total} verified K6 models ({direct} direct) in {dt:.1f}s")


def check_4():
    seed = projective_grid()
    rows = [("projective grid", face_width(seed).value, nonseparating_face_width(seed).value, 4)]
    oracle_ok = True
    for n in (4, 5, 6, 7):
        t = torus_grid(n)
        fw, nsfw = face_width(t).value, nonseparating_face_width(t).value
        rows.append((f"torus {n}", fw, nsfw, n))
        if n <= 5:
            oracle_ok &= exhaustive_width(t, NON_CONTRACTIBLE, n).value == fw
            oracle_ok &= exhaustive_width(t, NON_SEPARATING, n).value == nsfw
            oracle_ok &= exhaustive_width(t, NON_CONTRACTIBLE, n - 1).value == -1
    ok = oracle_ok and all(fw == nsfw == want for _, fw, nsfw, want in rows)
    detail = ", ".join(f"{name} {fw}/{nsfw}" for name, fw, nsfw, _ in rows)
    return ok, f"fw/nsfw: {detail}; oracle {'agrees' if oracle_ok else 'DISAGREES'} for n<=5"


def check_5():
    rep = suite_cutwidth(seed=0, trials=50)
    return rep.passed and rep.checks == 50, (
        f"{rep.checks} cuts, {rep.violations} violations, {rep.results['finite_after_cut']} with finite widths after")


def check_6():
    rep = suite_threepath(seed=0, trials=1000)
    return rep.passed and rep.checks >= 1000, f"{rep.checks} thetas, {rep.violations} violations"


def check_7():
    rep = suite_menger(seed=0, trials=100)
    return rep.passed, (f"{rep.results['instances']} instances + toroidal linkages "
                        f"{rep.results['torus_linkages']}, {rep.violations} violations")


def check_8():
    t = time.perf_counter()
    rep = suite_cylinder(seed=0, trials=200)
    dt = time.perf_counter() - t
    covered = {c.split("=")[0] for c in rep.results.get("cases", "").split()}
    ok = rep.passed and rep.checks == 200 and covered == set(CASES) and dt <= 300
    return ok, f"{rep.results.get('verified', rep.results.get('failure'))} verified, {len(covered)}/{len(CASES)} cases, {dt:.1f}s"


def check_9():
    g = torus_grid(7).to_graph()
    t = time.perf_counter()
    model = has_minor(g, K6)
    dt = time.perf_counter() - t
    ok = model is not None and bool(verify_minor_model(g, K6, model)) and dt <= 120
    return ok, f"7x7 toroidal grid: {'verified K6 model' if model else 'no model'} in {dt:.1f}s"


def minor_corpus(count=500, seed=0):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng.randint(6, 10), rng.uniform(0.35, 0.95), rng)


def check_10():
    mismatches = 0
    census = read_graph6_file(GRAPHS8)
    for g in census:
        mismatches += (has_minor(g, K4) is None) != (brute_force_minor_oracle(g, K4) is None)
    found = Counter()
    corpus = list(minor_corpus())
    for g in corpus:
        for h in (K5, K6):
            mine = has_minor(g, h)
            mismatches += (mine is None) != (brute_force_minor_oracle(g, h) is None)
            found[h.n] += mine is not None
    return mismatches == 0, (f"{len(census)} graphs vs K4, {len(corpus)} graphs vs K5/K6 "
                             f"({found[5]}/{found[6]} positive), {mismatches} mismatches")


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 11)}


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(CHECKS), ids=lambda n: f"criterion{n}")
def test_criterion(n):
    ok, detail = CHECKS[n]()
    _record(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, check in CHECKS.items():
        ok, detail = check()
        _record(n, ok, detail)
        print(RESULTS[n], flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
