import random

from surfk6.curves import nonseparating_face_width
from surfk6.fixtures import random_grid_sum, torus_grid
from surfk6.suites import SUITES, cutwidth_fixtures, sample_theta, suite_threepath


def test_suites_pass_small(tmp_path):
    sizes = {"cylinder": 14, "cutwidth": 5, "threepath": 60, "menger": 10}
    for name, trials in sizes.items():
        rep = SUITES[name](seed=3, trials=trials, out_dir=tmp_path)
        assert rep.passed, (name, rep.results)
        assert rep.counterexamples == []


def test_cutwidth_fixtures_are_cuttable():
    for emb, chain in cutwidth_fixtures(3, seed=1):
        assert nonseparating_face_width(emb).value == len(chain) >= 2


def test_theta_sampling():
    g = torus_grid(5).to_graph()
    paths = sample_theta(g, random.Random(0))
    x, y = paths[0][0], paths[0][-1]
    assert all(p[0] == x and p[-1] == y for p in paths)
    inner = [set(p[1:-1]) for p in paths]
    assert not (inner[0] & inner[1] or inner[0] & inner[2] or inner[1] & inner[2])


def test_threepath_histogram_is_reported():
    rep = suite_threepath(seed=0, trials=30)
    assert rep.passed and rep.results["thetas"] == 30
    assert "/" in rep.results["contractible_separating_histogram"]


def test_threepath_on_two_handle_sum():
    # separating essential cycles appear here, unlike on torus/projective fixtures
    emb = random_grid_sum(random.Random(18), 2, 4, 5)
    rep = suite_threepath(seed=1, trials=300, fixtures=[emb])
    assert rep.passed
    hist = dict(item.split(":") for item in rep.results["contractible_separating_histogram"].split())
    assert any(c != s for c, s in (key.split("/") for key in hist))
