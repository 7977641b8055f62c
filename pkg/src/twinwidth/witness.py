"""Explicit 7-contraction sequences for G_k.

The sequence has three phases:

1. inside every skeleton face, the five other non-skeleton vertices are
   contracted into the face's lowest-id triangle vertex;
2. skeleton vertices are processed in ascending id; the face vertices whose
   lowest corner is the current vertex are folded together and then absorbed
   into it, leaving the bare skeleton;
3. the skeleton triangulation is reduced by edge contractions that keep the
   maximum degree at most seven.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .construction import GkGraph, build_gk
from .planar import PlaneMultigraph, find_light_edge
from .trigraph import ContractionSequence, ContractionStep, Trigraph, WidthTrace, replay, verify_certificate

WITNESS_BOUND = 7


class WitnessError(RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


@dataclass
class Phase3Record:
    step: ContractionStep
    light: bool
    min_degree_before: int
    degree_sum: int
    max_degree_after: int
    euler_after: list[int]
    two_faces_after: int


@dataclass
class WitnessPlan:
    k: int
    phase1_steps: ContractionSequence
    phase2_steps: ContractionSequence
    phase3_steps: ContractionSequence
    trace: WidthTrace | None = None
    phase3_records: list[Phase3Record] = field(default_factory=list, repr=False)

    @property
    def sequence(self) -> ContractionSequence:
        return self.phase1_steps + self.phase2_steps + self.phase3_steps


def phase1_collapse_faces(g: GkGraph) -> ContractionSequence:
    steps = []
    for face in g.skeleton_faces:
        rep = min(face.triangle)
        steps += [ContractionStep(rep, v) for v in sorted(face.non_skeleton) if v != rep]
    return ContractionSequence(steps)


def phase1_representatives(g: GkGraph) -> list[int]:
    return [min(face.triangle) for face in g.skeleton_faces]


def phase2_absorb(g: GkGraph, order: list[int] | None = None) -> ContractionSequence:
    """Absorb the per-face representatives left by phase 1 into the skeleton."""
    if order is None:
        order = g.skeleton_vertices
    rank = {v: i for i, v in enumerate(order)}
    groups: dict[int, list[int]] = {v: [] for v in order}
    for face, rep in zip(g.skeleton_faces, phase1_representatives(g)):
        first = min(face.corners, key=rank.__getitem__)
        groups[first].append(rep)
    steps = []
    for v in order:
        reps = sorted(groups[v])
        if not reps:
            continue
        steps += [ContractionStep(reps[0], r) for r in reps[1:]]
        steps.append(ContractionStep(v, reps[0]))
    return ContractionSequence(steps)


def _low_degree_edge(emb: PlaneMultigraph):
    v = min(emb.vertices, key=lambda x: (emb.degree(x), x))
    if emb.degree(v) > 2:
        return None
    d = min(emb.rotation[v], key=lambda x: (emb.head(x), x))
    return v, d


def reduce_triangulation(emb: PlaneMultigraph, check: bool = False) -> tuple[ContractionSequence, list[Phase3Record]]:
    """Edge contractions reducing ``emb`` to one vertex with max degree <= 7.

    Vertices of degree at most two are contracted first (into their smallest
    neighbour); otherwise a light edge is contracted. With ``check`` set,
    every intermediate embedding is validated and recorded.
    """
    emb = emb.copy()
    steps: list[ContractionStep] = []
    records: list[Phase3Record] = []
    while emb.num_vertices() > 1:
        min_deg = emb.min_degree()
        low = _low_degree_edge(emb)
        if low is not None:
            _, d = low
            u, w = emb.origin[d], emb.head(d)
            light = False
        else:
            e = find_light_edge(emb)
            d, u, w = e
            light = True
        deg_sum = emb.degree(u) + emb.degree(w)
        keep, gone = min(u, w), max(u, w)
        emb.contract_edge(d, keep=keep)
        step = ContractionStep(keep, gone)
        steps.append(step)
        if check:
            records.append(
                Phase3Record(
                    step=step,
                    light=light,
                    min_degree_before=min_deg,
                    degree_sum=deg_sum,
                    max_degree_after=emb.max_degree(),
                    euler_after=emb.euler_characteristics(),
                    two_faces_after=len(emb.two_faces()),
                )
            )
            if emb.max_degree() > WITNESS_BOUND:
                raise WitnessError(f"multigraph degree {emb.max_degree()} after contracting {step}", step)
    return ContractionSequence(steps), records


def phase3_reduce_triangulation(skeleton: PlaneMultigraph, check: bool = False) -> ContractionSequence:
    return reduce_triangulation(skeleton, check)[0]


def build_witness(g: GkGraph, check: bool = False) -> WitnessPlan:
    p1 = phase1_collapse_faces(g)
    p2 = phase2_absorb(g)
    p3, records = reduce_triangulation(g.skeleton_embedding, check)
    return WitnessPlan(g.k, p1, p2, p3, phase3_records=records)


def synthesize_witness(k: int, check: bool = False) -> tuple[ContractionSequence, WidthTrace]:
    plan = synthesize_plan(k, check)
    return plan.sequence, plan.trace


def synthesize_plan(k: int, check: bool = False, g: GkGraph | None = None) -> WitnessPlan:
    if g is None:
        g = build_gk(k)
    plan = build_witness(g, check)
    seq = plan.sequence
    if len(seq) != g.n - 1:
        raise WitnessError(f"sequence has {len(seq)} steps for {g.n} vertices")
    verdict = verify_certificate(g.graph, seq, WITNESS_BOUND)
    if not verdict:
        raise WitnessError(f"witness rejected: {verdict.reason}", verdict.step)
    plan.trace = verdict.trace
    return plan


def witness_for(g: GkGraph) -> ContractionSequence:
    return synthesize_plan(g.k, g=g).sequence


def phase_states(g: GkGraph, plan: WitnessPlan):
    """Trigraph snapshots after phases 1 and 2 (copies)."""
    state: Trigraph = g.graph.copy()
    for s in plan.phase1_steps:
        state._contract(s.keep, s.remove)
    h1 = state.copy()
    for s in plan.phase2_steps:
        state._contract(s.keep, s.remove)
    return h1, state.copy()


def trace_rows(seq: ContractionSequence, trace: WidthTrace) -> list[tuple[int, int, int, int]]:
    return [(i, s.keep, s.remove, r) for i, (s, r) in enumerate(zip(seq, trace.per_step_max_red_degree))]


__all__ = [
    "WITNESS_BOUND",
    "WitnessError",
    "WitnessPlan",
    "Phase3Record",
    "phase1_collapse_faces",
    "phase2_absorb",
    "phase3_reduce_triangulation",
    "reduce_triangulation",
    "synthesize_witness",
    "synthesize_plan",
    "phase_states",
    "replay",
]
