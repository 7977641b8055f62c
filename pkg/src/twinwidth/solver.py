"""Exact twin-width for small graphs.

Two independent routes:

* :func:`naive_twinwidth` enumerates every contraction sequence on a plain
  dict-of-sets trigraph. It is the oracle and shares no code with the rest of
  the package.
* :func:`twinwidth_at_most` / :func:`twinwidth_exact` run a depth-first
  branch and bound over the bitset kernels, with twin reduction and a memo of
  refuted states keyed by a canonical encoding.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from . import kernels
from .trigraph import ContractionSequence, ContractionStep, Trigraph

NAIVE_MAX_VERTICES = 8
DEFAULT_BUDGET = 10**7
EXACT_MAX_VERTICES = 64
CANON_PERM_LIMIT = 120


class SizeGuardError(ValueError):
    pass


# ---------------------------------------------------------------------------
# naive oracle


def _sets_from(g: Trigraph):
    verts = g.vertices()
    black = {v: set() for v in verts}
    red = {v: set() for v in verts}
    for u, v in g.black_edges():
        black[u].add(v)
        black[v].add(u)
    for u, v in g.red_edges():
        red[u].add(v)
        red[v].add(u)
    return black, red


def _naive_contract(black, red, keep, remove):
    pair = {keep, remove}
    nbrs = (black[keep] | red[keep] | black[remove] | red[remove]) - pair
    both_black = (black[keep] & black[remove]) - pair
    nb = {v: s - pair for v, s in black.items() if v not in pair}
    nr = {v: s - pair for v, s in red.items() if v not in pair}
    nb[keep] = both_black
    nr[keep] = nbrs - both_black
    for u in both_black:
        nb[u].add(keep)
    for u in nbrs - both_black:
        nr[u].add(keep)
    return nb, nr


def naive_twinwidth(g: Trigraph) -> tuple[int, ContractionSequence]:
    """Minimum width over all contraction sequences, by exhaustive recursion.

    The only pruning is against the best complete sequence found so far.
    """
    if g.n > NAIVE_MAX_VERTICES:
        raise SizeGuardError(f"naive enumeration refuses {g.n} > {NAIVE_MAX_VERTICES} vertices")
    black, red = _sets_from(g)
    start = max((len(s) for s in red.values()), default=0)

    def rec(black, red, width, limit):
        verts = sorted(black)
        if len(verts) <= 1:
            return width, []
        best = None
        for i, j in combinations(verts, 2):
            b2, r2 = _naive_contract(black, red, i, j)
            w = max(width, max(len(s) for s in r2.values()))
            if limit is not None and w >= limit:
                continue
            res = rec(b2, r2, w, limit)
            if res is not None:
                limit = res[0]
                best = (res[0], [(i, j)] + res[1])
        return best

    width, steps = rec(black, red, start, None)
    return width, ContractionSequence.of(steps)


# ---------------------------------------------------------------------------
# branch and bound


class _Exhausted(Exception):
    pass


@dataclass
class SearchOutcome:
    sequence: ContractionSequence | None
    status: str  # "found", "infeasible" or "exhausted"
    evaluations: int

    @property
    def proven_none(self) -> bool:
        return self.status == "infeasible"

    def __bool__(self):
        return self.sequence is not None


@dataclass
class SolveResult:
    width: int
    sequence: ContractionSequence
    status: str  # "exact", "upper-bound" or "unknown"
    evaluations: int = 0

    def result_line(self) -> str:
        return f"width={self.width} status={self.status}"


def _adjacency_codes(g: Trigraph, verts: np.ndarray) -> np.ndarray:
    cap = g.capacity
    b = np.unpackbits(g.black[verts].view(np.uint8), axis=1, bitorder="little")[:, :cap][:, verts]
    r = np.unpackbits(g.red[verts].view(np.uint8), axis=1, bitorder="little")[:, :cap][:, verts]
    return (b + 2 * r).astype(np.int8)


def canonical_key(g: Trigraph) -> bytes:
    """Encoding of ``g`` that is equal for many isomorphic trigraphs and only for isomorphic ones.

    Vertices are ordered by colour refinement on (black degree, red degree);
    ties inside a colour class are broken by trying every order when that is
    cheap, otherwise by vertex id.
    """
    verts = np.flatnonzero(g.alive)
    m = verts.size
    A = _adjacency_codes(g, verts)
    colors = list(zip((A == 1).sum(1).tolist(), (A == 2).sum(1).tolist()))
    for _ in range(m):
        sig = [
            (colors[v], tuple(sorted((int(A[v, u]), colors[u]) for u in np.flatnonzero(A[v]))))
            for v in range(m)
        ]
        relabel = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [relabel[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    cells: dict[int, list[int]] = {}
    for v in sorted(range(m), key=lambda v: (colors[v], v)):
        cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    iu = np.triu_indices(m, 1)
    if math.prod(math.factorial(len(c)) for c in cell_list) <= CANON_PERM_LIMIT:
        best = None
        for parts in product(*(permutations(c) for c in cell_list)):
            p = [v for part in parts for v in part]
            code = A[np.ix_(p, p)][iu].tobytes()
            if best is None or code < best:
                best = code
    else:
        p = [v for c in cell_list for v in c]
        best = A[np.ix_(p, p)][iu].tobytes()
    return m.to_bytes(2, "little") + best


def _find_twins(g: Trigraph, verts: np.ndarray):
    """A pair with identical black and red neighbourhoods (each ignoring the other)."""
    vs = verts.tolist()
    for j in vs:
        for i in vs:
            if i >= j:
                break
            if _rows_equal_masked(g.black, g.red, i, j):
                return i, j
    return None


def _rows_equal_masked(B, R, i, j):
    bi, bj = B[i].copy(), B[j].copy()
    ri, rj = R[i].copy(), R[j].copy()
    mi = np.uint64(1) << np.uint64(i & 63)
    mj = np.uint64(1) << np.uint64(j & 63)
    bi[j >> 6] &= ~mj
    ri[j >> 6] &= ~mj
    bj[i >> 6] &= ~mi
    rj[i >> 6] &= ~mi
    return np.array_equal(bi, bj) and np.array_equal(ri, rj)


class _Search:
    def __init__(self, d: int, budget: int):
        self.d = d
        self.budget = budget
        self.evaluations = 0
        self.refuted: set[bytes] = set()

    def run(self, g: Trigraph):
        if g.max_red_degree() > self.d:
            return None
        return self.dfs(g.copy())

    def dfs(self, g: Trigraph):
        verts = np.flatnonzero(g.alive)
        m = verts.size
        if m <= 1:
            return []
        if m - 2 <= self.d:
            # any contraction leaves at most m - 1 vertices, so red degree <= m - 2
            v0 = int(verts[0])
            return [ContractionStep(v0, int(v)) for v in verts[1:]]
        twins = _find_twins(g, verts)
        if twins is not None:
            child = g.copy()
            child._contract(*twins)
            rest = self.dfs(child)
            return None if rest is None else [ContractionStep(*twins)] + rest
        key = canonical_key(g)
        if key in self.refuted:
            return None
        scores = kernels.pair_scores(g.black, g.red, g.red_deg, verts.astype(np.int64))
        self.evaluations += scores.size
        if self.evaluations > self.budget:
            raise _Exhausted
        a, b = np.triu_indices(m, 1)
        ok = np.flatnonzero(scores <= self.d)
        for p in ok[np.argsort(scores[ok], kind="stable")]:
            step = ContractionStep(int(verts[a[p]]), int(verts[b[p]]))
            child = g.copy()
            child._contract(step.keep, step.remove)
            rest = self.dfs(child)
            if rest is not None:
                return [step] + rest
        self.refuted.add(key)
        return None


def twinwidth_at_most(g: Trigraph, d: int, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Search for a sequence of ``d``-contractions reducing ``g`` to one vertex.

    ``status`` is ``"infeasible"`` only when the search space was exhausted
    within ``budget`` pair evaluations.
    """
    s = _Search(d, budget)
    try:
        steps = s.run(g)
    except _Exhausted:
        return SearchOutcome(None, "exhausted", s.evaluations)
    if steps is None:
        return SearchOutcome(None, "infeasible", s.evaluations)
    return SearchOutcome(ContractionSequence(steps), "found", s.evaluations)


def greedy_sequence(g: Trigraph) -> tuple[int, ContractionSequence]:
    """Repeatedly contract the pair minimising the resulting max red degree."""
    state = g.copy()
    width = state.max_red_degree()
    steps = []
    while state.n > 1:
        verts = np.flatnonzero(state.alive)
        scores = kernels.pair_scores(state.black, state.red, state.red_deg, verts.astype(np.int64))
        p = int(np.argmin(scores))
        a, b = np.triu_indices(verts.size, 1)
        step = ContractionStep(int(verts[a[p]]), int(verts[b[p]]))
        state._contract(step.keep, step.remove)
        width = max(width, int(scores[p]))
        steps.append(step)
    return width, ContractionSequence(steps)


def first_step_lower_bound(g: Trigraph) -> int:
    """Every full sequence starts with some contraction, so its width is at least the cheapest one."""
    lb = g.max_red_degree()
    verts = np.flatnonzero(g.alive)
    if verts.size >= 2:
        lb = max(lb, int(kernels.pair_scores(g.black, g.red, g.red_deg, verts.astype(np.int64)).min()))
    return lb


def _at_most_job(args):
    g, d, budget = args
    return d, twinwidth_at_most(g, d, budget)


def twinwidth_exact(
    g: Trigraph,
    budget: int = DEFAULT_BUDGET,
    upper_bound: tuple[int, ContractionSequence] | None = None,
    max_vertices: int = EXACT_MAX_VERTICES,
    threads: int = 1,
) -> SolveResult:
    """Smallest ``d`` admitting a ``d``-contraction sequence.

    Scans ``d`` upward from a cheap lower bound; each decision problem gets
    its own ``budget``. If some smaller ``d`` could not be decided the result
    is reported as ``"upper-bound"``. Graphs above ``max_vertices`` are not
    searched at all (``"unknown"``, with the imported or greedy upper bound).
    """
    if g.n <= 1:
        return SolveResult(0, ContractionSequence(), "exact")
    if g.n > max_vertices:
        if upper_bound is None:
            upper_bound = greedy_sequence(g)
        return SolveResult(upper_bound[0], upper_bound[1], "unknown")
    ub, ub_seq = greedy_sequence(g)
    if upper_bound is not None and upper_bound[0] < ub:
        ub, ub_seq = upper_bound
    lb = first_step_lower_bound(g)
    jobs = [(g, d, budget) for d in range(lb, ub)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = dict(pool.map(_at_most_job, jobs))
    else:
        outcomes = {}
        for job in jobs:
            d, out = _at_most_job(job)
            outcomes[d] = out
            if out.status == "found":
                break
    evaluations = 0
    undecided = False
    for d in range(lb, ub):
        out = outcomes[d]
        evaluations += out.evaluations
        if out.status == "found":
            return SolveResult(d, out.sequence, "upper-bound" if undecided else "exact", evaluations)
        if out.status == "exhausted":
            undecided = True
    return SolveResult(ub, ub_seq, "upper-bound" if undecided else "exact", evaluations)
