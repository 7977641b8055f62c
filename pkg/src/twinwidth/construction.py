"""The icosahedral family G_k and its skeleton.

Vertex numbering of ``build_gk(k)``: skeleton vertices come first (12
icosahedron corners, then edge subdivision vertices, then lattice interior
vertices), followed by six vertices per skeleton face in the order
``x, y, z, q_xy, q_yz, q_zx``. Here ``x, y, z`` are the inserted triangle with
``x`` joined to the first corner of the face, ``y`` to the second and ``z`` to
the third, and ``q_*`` are the centres of the three quadrilaterals between the
triangle and the face boundary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .planar import PlaneMultigraph
from .trigraph import Trigraph

# 0 is the top, 1..5 the upper ring, 6..10 the lower ring (6 + i sits between
# upper 1 + i and 1 + (i + 1) % 5), 11 the bottom. Faces are counter-clockwise
# seen from outside.
ICOSAHEDRON_FACES: tuple[tuple[int, int, int], ...] = tuple(
    [(0, 1 + i, 1 + (i + 1) % 5) for i in range(5)]
    + [(1 + i, 6 + i, 1 + (i + 1) % 5) for i in range(5)]
    + [(1 + (i + 1) % 5, 6 + i, 6 + (i + 1) % 5) for i in range(5)]
    + [(11, 6 + (i + 1) % 5, 6 + i) for i in range(5)]
)


class VertexRole(str, Enum):
    CORNER = "corner"
    SUBDIVISION = "subdivision"
    LATTICE_INTERIOR = "lattice_interior"
    FACE_TRIANGLE = "face_triangle"
    QUAD_CENTER = "quad_center"


SKELETON_ROLES = frozenset({VertexRole.CORNER, VertexRole.SUBDIVISION, VertexRole.LATTICE_INTERIOR})


@dataclass(frozen=True)
class SkeletonFace:
    corners: tuple[int, int, int]
    triangle: tuple[int, int, int]
    quad_centers: tuple[int, int, int]

    @property
    def non_skeleton(self) -> tuple[int, ...]:
        return self.triangle + self.quad_centers


@dataclass
class GkGraph:
    k: int
    graph: Trigraph
    embedding: PlaneMultigraph
    skeleton_flag: list[bool]
    role: list[VertexRole]
    skeleton_faces: list[SkeletonFace]
    skeleton_embedding: PlaneMultigraph
    edges: list[tuple[int, int]] = field(repr=False, default_factory=list)

    @property
    def n(self) -> int:
        return len(self.role)

    @property
    def skeleton_vertices(self) -> list[int]:
        return [v for v, s in enumerate(self.skeleton_flag) if s]


def icosahedron() -> tuple[Trigraph, PlaneMultigraph]:
    emb = PlaneMultigraph.from_oriented_faces(ICOSAHEDRON_FACES)
    edges = sorted(emb.simple_edges())
    return Trigraph.from_black_edges(12, edges), emb


def skeleton_vertex_count(k: int) -> int:
    return 10 * k * k + 20 * k + 12


def _skeleton(k: int):
    """Subdivided, latticed icosahedron: (vertex roles, oriented triangles)."""
    s = k + 1
    roles = [VertexRole.CORNER] * 12
    edge_ids: dict[tuple[int, int, int], int] = {}
    # subdivision vertices, numbered edge by edge
    ico_edges = sorted({(min(a, b), max(a, b)) for f in ICOSAHEDRON_FACES for a, b in zip(f, f[1:] + f[:1])})
    for a, b in ico_edges:
        for t in range(1, s):
            edge_ids[(a, b, t)] = len(roles)
            roles.append(VertexRole.SUBDIVISION)

    def on_edge(p, q, wp, wq):
        # point on edge pq with barycentric weights wp, wq (wp + wq = s)
        if wq == 0:
            return p
        if wp == 0:
            return q
        lo, hi = (p, q) if p < q else (q, p)
        return edge_ids[(lo, hi, wq if hi == q else wp)]

    triangles = []
    for A, B, C in ICOSAHEDRON_FACES:
        interior: dict[tuple[int, int], int] = {}

        def point(i, j, l):
            # weights for A, B, C
            if i == 0:
                return on_edge(B, C, j, l)
            if j == 0:
                return on_edge(A, C, i, l)
            if l == 0:
                return on_edge(A, B, i, j)
            if (i, j) not in interior:
                interior[(i, j)] = len(roles)
                roles.append(VertexRole.LATTICE_INTERIOR)
            return interior[(i, j)]

        def at(j, l):
            # planar lattice position j * (B - A) + l * (C - A)
            return point(s - j - l, j, l)

        for j in range(s):
            for l in range(s - j):
                triangles.append((at(j, l), at(j + 1, l), at(j, l + 1)))
                if j + l + 2 <= s:
                    triangles.append((at(j + 1, l), at(j + 1, l + 1), at(j, l + 1)))
    return roles, triangles


def skeleton_only(k: int) -> tuple[Trigraph, PlaneMultigraph]:
    roles, tris = _skeleton(k)
    emb = PlaneMultigraph.from_oriented_faces(tris)
    return Trigraph.from_black_edges(len(roles), sorted(emb.simple_edges())), emb


def build_gk(k: int) -> GkGraph:
    if k < 0:
        raise ValueError("k must be non-negative")
    roles, tris = _skeleton(k)
    skel_emb = PlaneMultigraph.from_oriented_faces(tris)
    n_skel = len(roles)
    faces = []
    registry = []
    for a, b, c in tris:
        x, y, z, qxy, qyz, qzx = range(len(roles), len(roles) + 6)
        roles += [VertexRole.FACE_TRIANGLE] * 3 + [VertexRole.QUAD_CENTER] * 3
        registry.append(SkeletonFace((a, b, c), (x, y, z), (qxy, qyz, qzx)))
        faces.append((x, y, z))
        for p, q, qp, pp, ctr in ((a, b, y, x, qxy), (b, c, z, y, qyz), (c, a, x, z, qzx)):
            # quadrilateral p -> q -> qp -> pp around ctr
            faces += [(p, q, ctr), (q, qp, ctr), (qp, pp, ctr), (pp, p, ctr)]
    emb = PlaneMultigraph.from_oriented_faces(faces)
    edges = sorted(emb.simple_edges())
    return GkGraph(
        k=k,
        graph=Trigraph.from_black_edges(len(roles), edges),
        embedding=emb,
        skeleton_flag=[i < n_skel for i in range(len(roles))],
        role=roles,
        skeleton_faces=registry,
        skeleton_embedding=skel_emb,
        edges=edges,
    )


def degree_histogram(g: Trigraph | PlaneMultigraph | GkGraph) -> dict[int, int]:
    if isinstance(g, GkGraph):
        g = g.graph
    if isinstance(g, PlaneMultigraph):
        return dict(sorted(Counter(g.degree(v) for v in g.vertices).items()))
    return dict(sorted(Counter(g.degree(v) for v in g.vertices()).items()))


def expected_histogram(k: int) -> dict[int, int]:
    h = {4: 60 * (k + 1) ** 2, 5: 60 * (k + 1) ** 2, 20: 12}
    if k > 0:
        h[24] = 10 * k * (k + 2)
    return h


def skeleton_subgraph(g: GkGraph) -> tuple[Trigraph, PlaneMultigraph]:
    emb = g.skeleton_embedding.copy()
    n_skel = len(g.skeleton_vertices)
    return Trigraph.from_black_edges(n_skel, sorted(emb.simple_edges())), emb
