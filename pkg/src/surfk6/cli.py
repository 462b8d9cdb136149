"""Command-line driver.

Exit codes: 0 success, 1 property failure, 2 input or gate error, 3 search
budget exhausted.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .curves import CLASSES, NON_CONTRACTIBLE, NON_SEPARATING, CurveError, exhaustive_width, shortest_cycle_in_class
from .dyclass import (
    ClassBudgetExceeded,
    SeedGateError,
    enumerate_class,
    require_seed,
    triangle_free_members,
    verify_projective_theorem,
)
from .embedding import EmbeddingError, euler_genus, read_emb, trace_facial_walks
from .graphs import Graph, GraphError, from_graph6, petersen
from .minors import BUDGET_ENV, SearchBudgetExceeded, has_minor, verify_minor_model
from .suites import SUITES

OK, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


class Report:
    """Ordered key-value results plus optional certificate text."""

    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.results: dict = {}
        self.certificates: dict = {}

    @property
    def config_hash(self) -> str:
        blob = json.dumps([self.command, self.config], sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({"command": self.command, "config": self.config,
                               "config_hash": self.config_hash, "results": self.results,
                               "certificates": self.certificates}, indent=2, sort_keys=True) + "\n"
        lines = [f"command {self.command}", f"config_hash {self.config_hash}"]
        lines += [f"{k} {v}" for k, v in self.config.items()]
        lines += [f"{k} {v}" for k, v in self.results.items()]
        for name, text in self.certificates.items():
            lines.append(f"certificate {name}")
            lines += ["  " + ln for ln in str(text).rstrip("\n").splitlines()]
        return "\n".join(lines) + "\n"


def _load_emb(path):
    try:
        return read_emb(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except EmbeddingError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_graph(path) -> Graph:
    """graph6 (first non-comment line) or .emb."""
    p = Path(path)
    if p.suffix == ".emb":
        return _load_emb(p).to_graph()
    try:
        lines = [ln.strip() for ln in p.read_text(encoding="ascii").splitlines()]
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError(f"{path}: no graph found")
    try:
        return from_graph6(lines[0])
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


TARGETS = {"k4": lambda: Graph.complete(4), "k5": lambda: Graph.complete(5),
           "k6": lambda: Graph.complete(6), "petersen": petersen}


def _target(spec: str) -> Graph:
    if spec.lower() in TARGETS:
        return TARGETS[spec.lower()]()
    try:
        return from_graph6(spec)
    except GraphError as exc:
        raise InputError(f"target: {exc}") from None


# -- commands ---------------------------------------------------------------------------


def cmd_faces(args, rep: Report) -> int:
    emb = _load_emb(args.path)
    walks = trace_facial_walks(emb)
    rep.results["faces"] = len(walks)
    for i, w in enumerate(walks):
        rep.results[f"face {i}"] = " ".join(map(str, w.vertices))
    return OK


def cmd_genus(args, rep: Report) -> int:
    emb = _load_emb(args.path)
    try:
        s = euler_genus(emb)
    except EmbeddingError as exc:
        raise InputError(str(exc)) from None
    rep.results.update(vertices=emb.n, edges=emb.num_edges, faces=len(emb.faces),
                       euler_genus=s.euler_genus, orientable=str(s.orientable).lower(), surface=s.name)
    return OK


def cmd_width(args, rep: Report) -> int:
    emb = _load_emb(args.path)
    classes = {"fw": [NON_CONTRACTIBLE], "nsfw": [NON_SEPARATING], "both": list(CLASSES)}[args.klass]
    status = OK
    try:
        for klass in classes:
            key = "fw" if klass == NON_CONTRACTIBLE else "nsfw"
            cert = shortest_cycle_in_class(emb, klass)
            rep.results[key] = "unbounded" if cert.unbounded else cert.value
            if cert.witness is not None:
                rep.certificates[key] = cert.witness.format()
            if args.oracle:
                cap = cert.value if cert.value is not None else 1
                ref = exhaustive_width(emb, klass, cap, max_nodes=args.oracle_cap)
                agree = ref.value == cert.value
                rep.results[f"{key}_oracle"] = "agree" if agree else f"disagree ({ref.value})"
                status = status if agree else FAIL
    except CurveError as exc:
        raise InputError(str(exc)) from None
    return status


def cmd_dyw(args, rep: Report) -> int:
    emb = _load_emb(args.seed_path)
    try:
        seed = require_seed(emb)
    except SeedGateError as exc:
        raise InputError(str(exc)) from None
    try:
        cls = enumerate_class(seed, args.member_budget)
    except ClassBudgetExceeded as exc:
        rep.results["error"] = str(exc)
        return BUDGET
    status = OK
    rep.results["members"] = len(cls)
    if args.expect_count is not None and len(cls) != args.expect_count:
        rep.results["expected_members"] = args.expect_count
        status = FAIL
    if args.triangle_free:
        rep.results["triangle_free"] = len(triangle_free_members(cls))
    if args.certify_k6:
        proof = verify_projective_theorem(cls)
        rep.results["certified"] = f"{proof.certified}/{proof.total}"
        for i, why in proof.failures:
            rep.results[f"uncertified {i}"] = why
        if not proof.passed:
            status = FAIL
    if args.export:
        rep.results["exported"] = " ".join(cls.write(args.export))
    return status


def cmd_minor(args, rep: Report) -> int:
    g = _load_graph(args.path)
    h = _target(args.target)
    try:
        model = has_minor(g, h, args.budget)
    except SearchBudgetExceeded as exc:
        rep.results["result"] = "unknown(budget)"
        rep.results["nodes"] = exc.nodes
        return BUDGET
    if model is None:
        rep.results["result"] = "none"
        return OK
    verdict = verify_minor_model(g, h, model)
    rep.results["result"] = "found"
    rep.results["verified"] = str(bool(verdict)).lower()
    rep.certificates["model"] = model.format()
    return OK if verdict else FAIL


def cmd_verify(args, rep: Report) -> int:
    r = SUITES[args.suite](seed=args.seed, trials=args.trials, out_dir=args.out)
    rep.results["checks"] = r.checks
    rep.results["violations"] = r.violations
    rep.results.update(r.results)
    if r.counterexamples:
        rep.results["counterexamples"] = " ".join(r.counterexamples)
    rep.results["status"] = "pass" if r.passed else "fail"
    return OK if r.passed else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfk6", description="Embedded graphs, widths, ΔY classes and K6 minors.")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("faces", help="list facial walks of an .emb file")
    s.add_argument("path")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("genus", help="surface of an .emb file")
    s.add_argument("path")
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("width", help="face-width / non-separating face-width")
    s.add_argument("path")
    s.add_argument("--class", dest="klass", choices=("fw", "nsfw", "both"), default="both")
    s.add_argument("--oracle", action="store_true", help="cross-check by exhaustive enumeration")
    s.add_argument("--oracle-cap", type=int, default=400, help="radial node cap for the oracle")
    s.set_defaults(func=cmd_width)

    s = sub.add_parser("dyw", help="ΔY/YΔ class of a gate-passing seed")
    s.add_argument("seed_path")
    s.add_argument("--expect-count", type=int)
    s.add_argument("--triangle-free", action="store_true")
    s.add_argument("--certify-k6", action="store_true")
    s.add_argument("--export", metavar="STEM", help="write STEM.g6 and STEM.prov")
    s.add_argument("--member-budget", type=int, default=10_000)
    s.set_defaults(func=cmd_dyw)

    s = sub.add_parser("minor", help="search a minor model")
    s.add_argument("path", help="graph6 file or .emb")
    s.add_argument("--target", default="k6", help="k4, k5, k6, petersen or a graph6 string")
    s.add_argument("--budget", type=int, help=f"node budget (default from {BUDGET_ENV})")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("verify", help="run a named property suite")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int)
    s.add_argument("--out", help="directory for counterexamples")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json", "command")}
    rep = Report(args.command, config)
    try:
        code = args.func(args, rep)
    except InputError as exc:
        print(f"surfk6: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    sys.stdout.write(rep.render(args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
