"""Combinatorial embeddings of plane multigraphs.

An embedding is a rotation system: every edge is a pair of darts ``2e`` and
``2e + 1`` (so ``twin(d) == d ^ 1``), and each vertex stores its outgoing
darts in counter-clockwise order. Faces are the orbits of
``d -> rotation_successor(twin(d))``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

MAX_LIGHT_DEGREE = 7
LIGHT_SUM = 11


class EmbeddingError(ValueError):
    pass


class PreconditionError(EmbeddingError):
    pass


class InvariantViolation(RuntimeError):
    pass


def twin(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class FaceRecord:
    darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)


class EmbeddedEdge(NamedTuple):
    dart: int
    u: int
    v: int


class PlaneMultigraph:
    def __init__(self):
        self.origin: dict[int, int] = {}
        self.rotation: dict[int, list[int]] = {}
        self._next_edge = 0
        self._pos: dict[int, int] | None = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_oriented_faces(cls, faces: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "PlaneMultigraph":
        """Embedding of a simple plane graph given by consistently oriented facial cycles.

        Each undirected edge must occur once in each direction over all faces.
        """
        faces = [tuple(f) for f in faces]
        g = cls()
        dart_of: dict[tuple[int, int], int] = {}
        for f in faces:
            for i, u in enumerate(f):
                v = f[(i + 1) % len(f)]
                if (u, v) in dart_of:
                    raise EmbeddingError(f"directed edge {u}->{v} appears on two faces")
                if (v, u) in dart_of:
                    dart_of[(u, v)] = twin(dart_of[(v, u)])
                else:
                    d = 2 * g._next_edge
                    g._next_edge += 1
                    dart_of[(u, v)] = d
                g.origin[dart_of[(u, v)]] = u
        for (u, v), d in dart_of.items():
            if (v, u) not in dart_of:
                raise EmbeddingError(f"edge {u}-{v} lies on only one face")
        succ: dict[int, int] = {}
        for f in faces:
            m = len(f)
            for i in range(m):
                prev, cur, nxt = f[i - 1], f[i], f[(i + 1) % m]
                succ[dart_of[(cur, prev)]] = dart_of[(cur, nxt)]
        for v in vertices:
            g.rotation.setdefault(v, [])
        by_vertex = defaultdict(list)
        for d, v in g.origin.items():
            by_vertex[v].append(d)
        for v, ds in by_vertex.items():
            start = min(ds)
            order = [start]
            d = succ[start]
            while d != start:
                order.append(d)
                d = succ[d]
            if len(order) != len(ds):
                raise EmbeddingError(f"faces around vertex {v} do not form a single disk")
            g.rotation[v] = order
        return g

    @classmethod
    def from_rotation(cls, rotation: dict[int, Sequence[int]]) -> "PlaneMultigraph":
        g = cls()
        for v, ds in rotation.items():
            g.rotation[v] = list(ds)
            for d in ds:
                if d in g.origin:
                    raise EmbeddingError(f"dart {d} listed twice")
                g.origin[d] = v
        for d in g.origin:
            if twin(d) not in g.origin:
                raise EmbeddingError(f"dart {d} has no twin")
        g._next_edge = (max(g.origin) // 2 + 1) if g.origin else 0
        return g

    def copy(self) -> "PlaneMultigraph":
        g = PlaneMultigraph()
        g.origin = dict(self.origin)
        g.rotation = {v: list(ds) for v, ds in self.rotation.items()}
        g._next_edge = self._next_edge
        return g

    # basic queries --------------------------------------------------------

    def _positions(self) -> dict[int, int]:
        if self._pos is None:
            self._pos = {d: i for ds in self.rotation.values() for i, d in enumerate(ds)}
        return self._pos

    def _touch(self):
        self._pos = None

    def head(self, d: int) -> int:
        return self.origin[twin(d)]

    def rot_next(self, d: int) -> int:
        ds = self.rotation[self.origin[d]]
        return ds[(self._positions()[d] + 1) % len(ds)]

    def face_next(self, d: int) -> int:
        return self.rot_next(twin(d))

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    def num_vertices(self) -> int:
        return len(self.rotation)

    def num_edges(self) -> int:
        return len(self.origin) // 2

    def edges(self) -> list[EmbeddedEdge]:
        return [EmbeddedEdge(d, self.origin[d], self.head(d)) for d in sorted(self.origin) if d % 2 == 0]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def max_degree(self) -> int:
        return max((len(ds) for ds in self.rotation.values()), default=0)

    def min_degree(self) -> int:
        return min((len(ds) for ds in self.rotation.values()), default=0)

    def neighbors(self, v: int) -> set[int]:
        return {self.head(d) for d in self.rotation[v]}

    def simple_edges(self) -> set[tuple[int, int]]:
        return {(min(e.u, e.v), max(e.u, e.v)) for e in self.edges() if e.u != e.v}

    def check_rotation(self) -> None:
        seen = set()
        for v, ds in self.rotation.items():
            for d in ds:
                if self.origin.get(d) != v:
                    raise EmbeddingError(f"dart {d} in rotation of {v} but has origin {self.origin.get(d)}")
                if d in seen:
                    raise EmbeddingError(f"dart {d} appears twice in rotations")
                seen.add(d)
        if seen != set(self.origin):
            raise EmbeddingError("rotation lists do not partition the darts")
        for d in seen:
            if twin(d) not in seen:
                raise EmbeddingError(f"dart {d} has no twin")

    # faces ----------------------------------------------------------------

    def faces(self) -> list[FaceRecord]:
        out = []
        seen = set()
        for d in sorted(self.origin):
            if d in seen:
                continue
            walk = []
            x = d
            while x not in seen:
                seen.add(x)
                walk.append(x)
                x = self.face_next(x)
            if x != d:
                raise EmbeddingError("face permutation is not a permutation; rotation inconsistent")
            out.append(FaceRecord(tuple(walk)))
        return out

    def face_vertices(self, face: FaceRecord) -> list[int]:
        return [self.origin[d] for d in face.darts]

    def min_face_length(self) -> int:
        return min((f.length for f in self.faces()), default=0)

    def components(self) -> list[set[int]]:
        parent = {v: v for v in self.rotation}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d, v in self.origin.items():
            a, b = find(v), find(self.head(d))
            if a != b:
                parent[a] = b
        groups = defaultdict(set)
        for v in self.rotation:
            groups[find(v)].add(v)
        return list(groups.values())

    def euler_characteristics(self) -> list[int]:
        """``V - E + F`` per connected component (an isolated vertex has one face)."""
        faces = self.faces()
        out = []
        for comp in self.components():
            darts = [d for d in self.origin if self.origin[d] in comp]
            nf = sum(1 for f in faces if self.origin[f.darts[0]] in comp)
            if not darts:
                nf = 1
            out.append(len(comp) - len(darts) // 2 + nf)
        return out

    def check_euler(self) -> None:
        chars = self.euler_characteristics()
        if any(c != 2 for c in chars):
            raise InvariantViolation(f"Euler characteristic check failed: {chars}")

    def two_faces(self) -> list[FaceRecord]:
        """2-faces bounded by two distinct (parallel) edges."""
        return [f for f in self.faces() if f.length == 2 and f.darts[0] >> 1 != f.darts[1] >> 1]

    # mutation -------------------------------------------------------------

    def remove_edge(self, d: int) -> None:
        for x in (d, twin(d)):
            v = self.origin.pop(x)
            self.rotation[v].remove(x)
        self._touch()

    def contract_edge(self, d: int, keep: int | None = None) -> int:
        """Contract the edge of dart ``d`` in place and return the surviving vertex.

        Other edges between the two endpoints would become loops and are
        dropped; afterwards 2-faces are cleaned by deleting one of their two
        parallel edges until none remain.
        """
        if d not in self.origin:
            raise EmbeddingError(f"unknown dart {d}")
        u, v = self.origin[d], self.head(d)
        if u == v:
            raise EmbeddingError(f"dart {d} is a loop")
        if keep is None:
            keep = min(u, v)
        if keep not in (u, v):
            raise EmbeddingError(f"keep={keep} is not an endpoint of dart {d}")
        t = twin(d)
        ru, rv = self.rotation[u], self.rotation[v]
        iu, iv = ru.index(d), rv.index(t)
        merged = ru[iu + 1:] + ru[:iu] + rv[iv + 1:] + rv[:iv]
        gone = v if keep == u else u
        del self.rotation[gone]
        del self.origin[d], self.origin[t]
        self.rotation[keep] = merged
        for x in merged:
            self.origin[x] = keep
        self._touch()
        for x in list(merged):
            if x in self.origin and self.head(x) == keep and x % 2 == 0:
                self.remove_edge(x)
        self.clean_two_faces()
        return keep

    def clean_two_faces(self) -> list[int]:
        """Delete one parallel edge per 2-face, repeatedly; returns removed dart ids."""
        removed = []
        while True:
            tf = self.two_faces()
            if not tf:
                return removed
            a, b = tf[0].darts
            victim = max(a, b, key=lambda x: x >> 1)
            removed.append(victim & ~1)
            self.remove_edge(victim)


def contract_embedded_edge(g: PlaneMultigraph, e: int | EmbeddedEdge, keep: int | None = None) -> PlaneMultigraph:
    if g.two_faces():
        raise PreconditionError("embedding already has 2-faces")
    h = g.copy()
    h.contract_edge(e.dart if isinstance(e, EmbeddedEdge) else e, keep)
    return h


def faces(g: PlaneMultigraph) -> list[FaceRecord]:
    faces_ = g.faces()
    g.check_euler()
    return faces_


def min_face_length(g: PlaneMultigraph) -> int:
    return g.min_face_length()


def max_degree(g: PlaneMultigraph) -> int:
    return g.max_degree()


def find_light_edge(g: PlaneMultigraph) -> EmbeddedEdge:
    """Edge with endpoint degree sum at most 11; minimum sum, then smallest endpoints."""
    if g.max_degree() > MAX_LIGHT_DEGREE:
        raise PreconditionError(f"max degree {g.max_degree()} exceeds {MAX_LIGHT_DEGREE}")
    if g.min_degree() < 3:
        raise PreconditionError(f"min degree {g.min_degree()} below 3")
    if g.min_face_length() < 3:
        raise PreconditionError(f"min face length {g.min_face_length()} below 3")
    best = None
    for e in g.edges():
        if e.u == e.v:
            continue
        lo, hi = min(e.u, e.v), max(e.u, e.v)
        key = (g.degree(lo) + g.degree(hi), lo, hi, e.dart)
        if best is None or key < best:
            best = key
    if best is None or best[0] > LIGHT_SUM:
        raise InvariantViolation(f"no edge with degree sum <= {LIGHT_SUM}")
    s, lo, hi, d = best
    if g.origin[d] != lo:
        d = twin(d)
    return EmbeddedEdge(d, lo, hi)


# short cycles -------------------------------------------------------------


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    m = len(cyc)
    i = min(range(m), key=lambda j: cyc[j])
    fwd = tuple(cyc[(i + j) % m] for j in range(m))
    bwd = tuple(cyc[(i - j) % m] for j in range(m))
    return min(fwd, bwd)


def short_cycles(adj: dict[int, set[int]], max_len: int) -> list[tuple[int, ...]]:
    """All simple cycles of length 3..max_len (max_len <= 4) in canonical form."""
    out = []
    for a in sorted(adj):
        na = sorted(x for x in adj[a] if x > a)
        for b, c in combinations(na, 2):
            if c in adj[b]:
                out.append((a, b, c))
        if max_len >= 4:
            for b, d in combinations(na, 2):
                for c in adj[b] & adj[d]:
                    if c > a and c != b and c != d:
                        out.append(_canonical_cycle((a, b, c, d)))
    return sorted(set(out), key=lambda c: (len(c), c))


def _dart_between(g: PlaneMultigraph, u: int, v: int) -> int:
    for d in g.rotation[u]:
        if g.head(d) == v:
            return d
    raise EmbeddingError(f"{u} and {v} are not adjacent")


def cycle_sides(g: PlaneMultigraph, cycle: Sequence[int]) -> tuple[bool, bool]:
    """Whether each side of ``cycle`` contains a vertex, via the rotation wedges."""
    cset = set(cycle)
    m = len(cycle)
    left = right = False
    for i, c in enumerate(cycle):
        out_d = _dart_between(g, c, cycle[(i + 1) % m])
        back_d = _dart_between(g, c, cycle[i - 1])
        rot = g.rotation[c]
        k = len(rot)
        j = rot.index(out_d)
        side_left = True
        for step in range(1, k):
            d = rot[(j + step) % k]
            if d == back_d:
                side_left = False
                continue
            if g.head(d) not in cset:
                if side_left:
                    left = True
                else:
                    right = True
    return left, right


def is_separating_cycle(g: PlaneMultigraph, cycle: Sequence[int]) -> bool:
    left, right = cycle_sides(g, cycle)
    return left and right


def is_facial_cycle(g: PlaneMultigraph, cycle: Sequence[int]) -> bool:
    target = _canonical_cycle(list(cycle))
    return any(
        len(f.darts) == len(cycle) and _canonical_cycle(g.face_vertices(f)) == target for f in g.faces()
    )


def separating_cycles_up_to(g: PlaneMultigraph, max_len: int) -> list[tuple[int, ...]]:
    if max_len > 4:
        raise ValueError("separating cycle enumeration supports lengths up to 4")
    adj = {v: g.neighbors(v) - {v} for v in g.rotation}
    return [c for c in short_cycles(adj, max_len) if is_separating_cycle(g, c)]
