"""Structural predicates on the skeleton of G_k and of graphs contracted from it.

These are the hypotheses under which no 6-contraction of skeleton vertices
exists; the module only evaluates them, it does not prove anything.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Sequence

import networkx as nx

from .construction import GkGraph
from .planar import PlaneMultigraph, is_separating_cycle, short_cycles
from .trigraph import ContractionStep, Trigraph, TrigraphError

# Threshold on k above which the lower-bound argument applies.
LOWER_BOUND_K = 7

# Closed-form red-degree lower bounds for a hypothetical merge.
BOUND_FORMULAS = {
    "non-adjacent-5-6": 5 + 6 - 4,
    "non-adjacent-5-5": 5 + 5 - 2,
    "merged-5-6-then-6": 5 + 6 + 6 - 9,
}


class SkeletonMap:
    """Tracks which original vertices of G_k were merged into each current vertex."""

    def __init__(self, original_adj: dict[int, set[int]], skeleton_flag: Sequence[bool], members: dict[int, list[int]]):
        self.original_adj = original_adj
        self.skeleton_flag = list(skeleton_flag)
        self.members = members
        self.owner = {x: v for v, ms in members.items() for x in ms}

    @classmethod
    def fresh(cls, g: GkGraph) -> "SkeletonMap":
        skel = set(g.skeleton_vertices)
        adj: dict[int, set[int]] = {v: set() for v in skel}
        for u, v in g.edges:
            if u in skel and v in skel:
                adj[u].add(v)
                adj[v].add(u)
        return cls(adj, g.skeleton_flag, {v: [v] for v in range(g.n)})

    def copy(self) -> "SkeletonMap":
        return SkeletonMap(self.original_adj, self.skeleton_flag, {v: list(ms) for v, ms in self.members.items()})

    def is_skeleton(self, v: int) -> bool:
        return any(self.skeleton_flag[x] for x in self.members[v])

    def skeleton_members(self, v: int) -> list[int]:
        return [x for x in self.members[v] if self.skeleton_flag[x]]

    def apply(self, step: ContractionStep) -> None:
        keep, remove = step
        if keep not in self.members or remove not in self.members or keep == remove:
            raise TrigraphError(f"step {tuple(step)} does not match the map")
        moved = self.members.pop(remove)
        self.members[keep].extend(moved)
        for x in moved:
            self.owner[x] = keep

    def after(self, step: ContractionStep) -> "SkeletonMap":
        m = self.copy()
        m.apply(step)
        return m


def skeleton_of(h: Trigraph, smap: SkeletonMap) -> Trigraph:
    """Skeleton of a contracted graph, on the ids of ``h`` (non-skeleton ids dead)."""
    if set(h.vertices()) != set(smap.members):
        raise TrigraphError("skeleton map does not match the trigraph's vertices")
    edges = set()
    for x in smap.members:
        for xs in smap.skeleton_members(x):
            for ys in smap.original_adj[xs]:
                y = smap.owner[ys]
                if y != x:
                    edges.add((min(x, y), max(x, y)))
    s = Trigraph.from_black_edges(h.capacity, sorted(edges))
    keep = [v for v in smap.members if smap.is_skeleton(v)]
    return s.induced(keep)


def adjacency(g: Trigraph) -> dict[int, set[int]]:
    return {v: g.neighbors(v) for v in g.vertices()}


def embed_triangulation(adj: dict[int, set[int]]) -> PlaneMultigraph | None:
    """Rotation system of a planar graph via networkx; None if not planar."""
    G = nx.Graph()
    G.add_nodes_from(adj)
    G.add_edges_from((u, v) for u in adj for v in adj[u])
    planar, emb = nx.check_planarity(G)
    if not planar:
        return None
    dart = {}
    rotation = {}
    for u in sorted(adj):
        order = list(emb.neighbors_cw_order(u))[::-1]
        ds = []
        for v in order:
            if (u, v) not in dart:
                e = len(dart) // 2
                dart[(u, v)] = 2 * e
                dart[(v, u)] = 2 * e + 1
            ds.append(dart[(u, v)])
        rotation[u] = ds
    return PlaneMultigraph.from_rotation(rotation)


def _separating(adj, emb, cycle) -> bool:
    if emb is not None:
        return is_separating_cycle(emb, cycle)
    rest = set(adj) - set(cycle)
    if not rest:
        return False
    start = next(iter(rest))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in rest and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) < len(rest)


def distance_at_most(adj: dict[int, set[int]], source: int, radius: int = 2) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@dataclass
class AnalyzerReport:
    skeleton_min_degree: int
    five_vertices: list[int]
    adjacent_5_pairs: list[tuple[int, int]]
    five_vertex_common_neighbor_violations: list[tuple[tuple[int, int], int]]
    separating_3_cycles: list[tuple[int, ...]]
    separating_4_cycles: list[tuple[int, ...]]
    semiplanar_ok_edges: list[tuple[int, int]] = field(repr=False)

    @property
    def no_separating_short_cycles(self) -> bool:
        return not self.separating_3_cycles and not self.separating_4_cycles

    def hypotheses(self) -> dict[str, bool]:
        min5 = self.skeleton_min_degree >= 5
        return {
            "min_degree_5": min5,
            "no_adjacent_5_vertices": not self.adjacent_5_pairs,
            "five_pairs_share_at_most_one_neighbor": not self.five_vertex_common_neighbor_violations,
            "no_separating_3_cycles": not self.separating_3_cycles,
            "no_separating_4_cycles": not self.separating_4_cycles,
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hypotheses"] = self.hypotheses()
        return d


def check_lemma_hypotheses(skeleton: Trigraph, embedding: PlaneMultigraph | None = None) -> AnalyzerReport:
    adj = adjacency(skeleton)
    if embedding is None:
        embedding = embed_triangulation(adj)
    degs = {v: len(ns) for v, ns in adj.items()}
    fives = sorted(v for v, d in degs.items() if d == 5)
    adjacent = [(u, v) for u, v in combinations(fives, 2) if v in adj[u]]
    violations = []
    for u, v in combinations(fives, 2):
        c = len(adj[u] & adj[v])
        if c > 1:
            violations.append(((u, v), c))
    cycles = short_cycles(adj, 4)
    sep = [c for c in cycles if _separating(adj, embedding, c)]
    sep3 = [c for c in sep if len(c) == 3]
    sep4 = [c for c in sep if len(c) == 4]
    bad_edges = {(min(a, b), max(a, b)) for c in sep3 for a, b in zip(c, c[1:] + c[:1])}
    ok_edges = sorted({(min(u, v), max(u, v)) for u in adj for v in adj[u]} - bad_edges)
    return AnalyzerReport(
        skeleton_min_degree=min(degs.values(), default=0),
        five_vertices=fives,
        adjacent_5_pairs=adjacent,
        five_vertex_common_neighbor_violations=violations,
        separating_3_cycles=sep3,
        separating_4_cycles=sep4,
        semiplanar_ok_edges=ok_edges,
    )


def is_semiplanar(h: Trigraph, smap: SkeletonMap, step: ContractionStep | Sequence[int]) -> bool:
    x, y = step
    h._check(x)
    h._check(y)
    if not (smap.is_skeleton(x) and smap.is_skeleton(y)):
        return True
    skel = skeleton_of(h, smap)
    adj = adjacency(skel)
    if y not in adj[x]:
        return False
    emb = embed_triangulation(adj)
    return not any(_separating(adj, emb, (x, y, w)) for w in adj[x] & adj[y])


def trial_merge_red_degree(h: Trigraph, vertices: Sequence[int]) -> int:
    """Red degree of the vertex obtained by contracting ``vertices`` into the first one."""
    g = h.copy()
    keep = vertices[0]
    for v in vertices[1:]:
        g._contract(keep, v)
    return g.red_degree(keep)


def _qualifying(skeleton: Trigraph, label: str):
    adj = adjacency(skeleton)
    deg = {v: len(ns) for v, ns in adj.items()}
    verts = sorted(adj)
    if label == "non-adjacent-5-6":
        for u, v in combinations(verts, 2):
            if v not in adj[u] and {deg[u], deg[v]} <= {5, 6} and 6 in (deg[u], deg[v]):
                if len(adj[u] & adj[v]) <= 2:
                    yield (u, v)
    elif label == "non-adjacent-5-5":
        for u, v in combinations(verts, 2):
            if v not in adj[u] and deg[u] == deg[v] == 5 and len(adj[u] & adj[v]) <= 1:
                yield (u, v)
    elif label == "merged-5-6-then-6":
        for a in verts:
            if deg[a] != 5:
                continue
            for b in sorted(adj[a]):
                if deg[b] != 6:
                    continue
                for c in sorted((adj[a] | adj[b]) - {a, b}):
                    if deg[c] == 6:
                        yield (a, b, c)
    else:
        raise ValueError(f"unknown bound label {label!r}; expected one of {sorted(BOUND_FORMULAS)}")


def red_degree_bound_check(h: Trigraph, label: str) -> int | None:
    """Smallest trial-merge red degree over all configurations matching ``label``.

    Compare the result with ``BOUND_FORMULAS[label]``. Returns None when no
    configuration qualifies.
    """
    values = [trial_merge_red_degree(h, group) for group in _qualifying(h, label)]
    return min(values) if values else None
