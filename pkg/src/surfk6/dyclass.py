"""ΔY/YΔ classes of graphs and K6 certificates for the projective grid class.

Members are stored as canonically relabelled representatives keyed by their
canonical form.  Every move applied during the closure is recorded as a
:class:`Transition`, so the provenance graph holds all move edges between
members (not just the BFS tree).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .canon import canonical_form, canonical_labeling, isomorphism
from .curves import face_width
from .embedding import EmbeddedGraph, euler_genus
from .graphs import Graph, from_graph6, to_graph6
from .minors import (
    MinorModel,
    PropagationError,
    SearchBudgetExceeded,
    has_minor,
    propagate_model_through_delta_wye,
    verify_minor_model,
)
from .surgery import Move, SurgeryError, contract_edge, delete_edge, delta_to_wye, wye_to_delta

CanonicalForm = bytes

DEFAULT_MEMBER_BUDGET = 10_000


class ClassBudgetExceeded(RuntimeError):
    def __init__(self, members: int):
        super().__init__(f"closure stopped after {members} members")
        self.members = members


class SeedGateError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    source: CanonicalForm
    move: Move  # in the labels of the source representative
    target: CanonicalForm


@dataclass
class DeltaWyeClass:
    seed: CanonicalForm
    members: dict = field(default_factory=dict)  # form -> representative, BFS order
    provenance: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, form) -> bool:
        return form in self.members

    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.members)}

    def write(self, stem) -> list[str]:
        """Write ``stem.g6`` (one member per line, BFS order) and
        ``stem.prov`` (``i move j`` per transition)."""
        stem = Path(stem)
        g6 = stem.with_suffix(".g6")
        prov = stem.with_suffix(".prov")
        g6.write_text("".join(to_graph6(g) + "\n" for g in self.members.values()))
        idx = self.index()
        prov.write_text("".join(
            f"{idx[t.source]} {t.move.format()} {idx[t.target]}\n" for t in self.provenance
        ))
        return [str(g6), str(prov)]

    @classmethod
    def read(cls, stem) -> "DeltaWyeClass":
        stem = Path(stem)
        reps = [from_graph6(line) for line in stem.with_suffix(".g6").read_text().split()]
        forms = [canonical_form(g) for g in reps]
        out = cls(forms[0], dict(zip(forms, reps)))
        for line in stem.with_suffix(".prov").read_text().splitlines():
            tok = line.split()
            if not tok:
                continue
            out.provenance.append(Transition(forms[int(tok[0])], Move.parse(" ".join(tok[1:-1])),
                                             forms[int(tok[-1])]))
        return out


def _canonical(g: Graph) -> tuple[CanonicalForm, Graph]:
    form, perm = canonical_labeling(g)
    return form, g.relabel(perm)


def legal_moves(g: Graph) -> list[tuple[Move, Graph]]:
    """All ΔY moves (every triangle) and YΔ moves (every degree-3 vertex with
    pairwise non-adjacent neighbours), in a fixed order."""
    out = []
    for tri in g.triangles():
        out.append((Move("dy", tuple(sorted(tri))), delta_to_wye(g, tri)))
    for y in range(g.n):
        if g.degree(y) != 3:
            continue
        try:
            out.append((Move("yd", vertex=y), wye_to_delta(g, y)))
        except SurgeryError:
            pass
    return out


def enumerate_class(seed: Graph, budget: int | None = DEFAULT_MEMBER_BUDGET) -> DeltaWyeClass:
    """BFS closure of ``seed`` under ΔY and YΔ, deduplicated up to isomorphism.

    Raises :class:`ClassBudgetExceeded` once more than ``budget`` members are
    found.
    """
    form0, rep0 = _canonical(seed)
    cls = DeltaWyeClass(form0, {form0: rep0})
    queue = deque([form0])
    while queue:
        src = queue.popleft()
        for move, g2 in legal_moves(cls.members[src]):
            form, rep = _canonical(g2)
            if form not in cls.members:
                if budget is not None and len(cls.members) >= budget:
                    raise ClassBudgetExceeded(len(cls.members))
                cls.members[form] = rep
                queue.append(form)
            cls.provenance.append(Transition(src, move, form))
    return cls


def triangle_free_members(cls: DeltaWyeClass) -> list[CanonicalForm]:
    return [f for f, g in cls.members.items() if not g.triangles()]


def move_closure_violations(cls: DeltaWyeClass) -> list[tuple[CanonicalForm, Move]]:
    """Moves on members whose result lies outside the class (empty when closed)."""
    return [(f, mv) for f, g in cls.members.items()
            for mv, g2 in legal_moves(g) if canonical_form(g2) not in cls.members]


def provenance_connected(cls: DeltaWyeClass) -> bool:
    adj: dict = {f: set() for f in cls.members}
    for t in cls.provenance:
        adj[t.source].add(t.target)
        adj[t.target].add(t.source)
    seen = {cls.seed}
    stack = [cls.seed]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(cls.members)


# -- seed gate -----------------------------------------------------------------------


@dataclass(frozen=True)
class SeedReport:
    surface: str
    face_width: int | None
    deletions_ok: bool
    contractions_ok: bool

    @property
    def passed(self) -> bool:
        return (self.surface == "non-orientable genus 1" and self.face_width == 4
                and self.deletions_ok and self.contractions_ok)


def _drops_below(emb: EmbeddedGraph, before, k: int) -> bool:
    # a change of surface leaves a non-cellular face, hence width 0
    if euler_genus(emb) != before:
        return True
    w = face_width(emb).value
    return w is not None and w < k


def seed_gate(emb: EmbeddedGraph, width: int = 4) -> SeedReport:
    """Check that ``emb`` lives in the projective plane with face-width
    ``width`` and that every single edge deletion or contraction drops the
    face-width below ``width``."""
    surf = euler_genus(emb)
    fw = face_width(emb).value
    dels = all(_drops_below(delete_edge(emb, e), surf, width) for e in range(emb.num_edges))
    cons = all(_drops_below(contract_edge(emb, e), surf, width) for e in range(emb.num_edges))
    return SeedReport(surf.name, fw, dels, cons)


def require_seed(emb: EmbeddedGraph, width: int = 4) -> Graph:
    report = seed_gate(emb, width)
    if not report.passed:
        raise SeedGateError(f"seed fails the gate: {report}")
    return emb.to_graph()


# -- certificates --------------------------------------------------------------------


@dataclass
class ProjectiveReport:
    total: int
    certificates: dict = field(default_factory=dict)  # form -> MinorModel on the representative
    method: dict = field(default_factory=dict)  # form -> "direct" | "propagated"
    failures: list = field(default_factory=list)  # (member index, reason)

    @property
    def certified(self) -> int:
        return len(self.certificates)

    @property
    def passed(self) -> bool:
        return not self.failures and self.certified == self.total

    def format(self) -> str:
        direct = sum(1 for m in self.method.values() if m == "direct")
        lines = [f"certified {self.certified}/{self.total} ({direct} direct, "
                 f"{self.certified - direct} propagated)"]
        lines += [f"FAIL member {i}: {why}" for i, why in self.failures]
        return "\n".join(lines) + "\n"


def propagate_along(cls: DeltaWyeClass, t: Transition, model: MinorModel, h: Graph) -> MinorModel:
    """Pull a model on the representative of ``t.target`` back to ``t.source``."""
    if t.move.kind != "dy":
        raise PropagationError("only ΔY transitions carry certificates back")
    g = cls.members[t.source]
    try:
        g2 = delta_to_wye(g, t.move.triangle)
    except SurgeryError as exc:
        raise PropagationError(f"invalid transformation record: {exc}") from None
    phi = isomorphism(cls.members[t.target], g2)
    if phi is None:
        raise PropagationError("invalid transformation record: target is not the move's result")
    return propagate_model_through_delta_wye(g, g2, model.relabel(phi), t.move, h)


def verify_projective_theorem(cls: DeltaWyeClass, h: Graph | None = None, budget: int | None = None,
                              backend=None) -> ProjectiveReport:
    """Search a K6 model in every triangle-free member, then certify the
    rest by pulling models back along recorded ΔY transitions, largest
    members first (a ΔY move adds a vertex, so targets are done earlier)."""
    h = h if h is not None else Graph.complete(6)
    report = ProjectiveReport(len(cls))
    idx = cls.index()
    for f in triangle_free_members(cls):
        g = cls.members[f]
        try:
            model = has_minor(g, h, budget, backend=backend)
        except SearchBudgetExceeded as exc:
            report.failures.append((idx[f], str(exc)))
            continue
        if model is None:
            report.failures.append((idx[f], "no model in a triangle-free member"))
        elif not verify_minor_model(g, h, model):
            report.failures.append((idx[f], "direct model failed verification"))
        else:
            report.certificates[f] = model
            report.method[f] = "direct"
    out_edges: dict = {}
    for t in cls.provenance:
        if t.move.kind == "dy":
            out_edges.setdefault(t.source, []).append(t)
    rest = sorted((f for f in cls.members if f not in report.method),
                  key=lambda f: (-cls.members[f].n, idx[f]))
    for f in rest:
        if not cls.members[f].triangles():
            continue  # already reported above
        reasons = []
        for t in out_edges.get(f, []):
            model2 = report.certificates.get(t.target)
            if model2 is None:
                reasons.append(f"target {idx[t.target]} uncertified")
                continue
            try:
                model = propagate_along(cls, t, model2, h)
            except PropagationError as exc:
                reasons.append(str(exc))
                continue
            report.certificates[f] = model
            report.method[f] = "propagated"
            break
        else:
            why = "; ".join(dict.fromkeys(reasons)) or "no ΔY transition recorded"
            report.failures.append((idx[f], why))
    report.failures.sort()
    return report
