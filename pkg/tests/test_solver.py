import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import from_nx
from twinwidth.construction import icosahedron
from twinwidth.solver import (
    SizeGuardError,
    canonical_key,
    first_step_lower_bound,
    greedy_sequence,
    naive_twinwidth,
    twinwidth_at_most,
    twinwidth_exact,
)
from twinwidth.trigraph import Trigraph, from_black_edges, verify_certificate
from twinwidth.witness import synthesize_plan


def path(n):
    return from_black_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return from_nx(nx.cycle_graph(n))


def random_cograph(rng, n):
    """Cographs are built from single vertices by disjoint union and join."""
    parts = [nx.empty_graph(1) for _ in range(n)]
    while len(parts) > 1:
        a = parts.pop(rng.randrange(len(parts)))
        b = parts.pop(rng.randrange(len(parts)))
        g = nx.disjoint_union(a, b)
        if rng.random() < 0.5:
            g.add_edges_from((u, v) for u in range(len(a)) for v in range(len(a), len(g)))
        parts.append(g)
    return from_nx(parts[0])


class TestNaive:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_complete_graphs(self, n):
        assert naive_twinwidth(from_nx(nx.complete_graph(n)))[0] == 0

    def test_p4(self):
        width, seq = naive_twinwidth(path(4))
        assert width == 1
        assert verify_certificate(path(4), seq, 1)

    def test_c5_is_consistent(self):
        width, seq = naive_twinwidth(cycle(5))
        # no single contraction of C5 stays within red degree 1
        assert width > 1
        assert verify_certificate(cycle(5), seq, width).width == width

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            naive_twinwidth(path(9))

    def test_empty_and_single(self):
        assert naive_twinwidth(Trigraph.empty(0))[0] == 0
        assert naive_twinwidth(path(1))[0] == 0


class TestAtMost:
    def test_k4_zero(self):
        out = twinwidth_at_most(from_nx(nx.complete_graph(4)), 0)
        assert out.status == "found" and len(out.sequence) == 3

    def test_p4_zero_is_infeasible(self):
        out = twinwidth_at_most(path(4), 0)
        assert out.sequence is None and out.proven_none

    def test_icosahedron_two_is_infeasible(self):
        g, _ = icosahedron()
        out = twinwidth_at_most(g, 2)
        assert out.proven_none

    def test_budget_exhaustion(self):
        g, _ = icosahedron()
        out = twinwidth_at_most(g, 2, budget=10)
        assert out.status == "exhausted"
        assert not out.proven_none

    @pytest.mark.parametrize("seed", range(5))
    def test_monotone_and_sound(self, seed):
        G = nx.gnp_random_graph(8, 0.45, seed=seed)
        g = from_nx(G)
        found = False
        for d in range(0, 7):
            out = twinwidth_at_most(g, d)
            if found:
                assert out.status == "found"
            if out.status == "found":
                found = True
                assert verify_certificate(g, out.sequence, d)
        assert found


class TestExact:
    def test_icosahedron(self):
        g, _ = icosahedron()
        res = twinwidth_exact(g)
        assert res.status == "exact"
        assert verify_certificate(g, res.sequence, res.width).width == res.width
        assert not twinwidth_at_most(g, res.width - 1).sequence

    def test_result_line(self):
        assert twinwidth_exact(path(4)).result_line() == "width=1 status=exact"

    @pytest.mark.parametrize("seed", range(8))
    def test_cographs_are_zero(self, seed):
        rng = random.Random(seed)
        g = random_cograph(rng, rng.randint(2, 10))
        if g.n <= 8:
            assert naive_twinwidth(g)[0] == 0
        assert twinwidth_exact(g).width == 0

    def test_g0_is_guarded(self, g0):
        plan = synthesize_plan(0, g=g0)
        res = twinwidth_exact(g0.graph, upper_bound=(plan.trace.overall_width, plan.sequence))
        assert res.status == "unknown"
        assert res.width <= 7
        assert verify_certificate(g0.graph, res.sequence, res.width)

    def test_budget_gives_upper_bound(self):
        g = from_nx(nx.gnp_random_graph(10, 0.5, seed=0))
        assert first_step_lower_bound(g) < greedy_sequence(g)[0]
        res = twinwidth_exact(g, budget=1)
        assert res.status == "upper-bound"
        assert verify_certificate(g, res.sequence, res.width)

    @pytest.mark.parametrize("seed", range(3))
    def test_threads_do_not_change_the_answer(self, seed):
        g = from_nx(nx.gnp_random_graph(9, 0.5, seed=seed))
        a = twinwidth_exact(g, threads=1)
        b = twinwidth_exact(g, threads=2)
        assert (a.width, a.status) == (b.width, b.status)
        assert a.sequence.pairs() == b.sequence.pairs()

    def test_bounds_bracket(self):
        for seed in range(10):
            g = from_nx(nx.gnp_random_graph(7, 0.5, seed=seed))
            w = twinwidth_exact(g).width
            assert first_step_lower_bound(g) <= w <= greedy_sequence(g)[0]


@st.composite
def trigraphs(draw):
    n = draw(st.integers(1, 6))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    colours = draw(st.lists(st.sampled_from([0, 1, 2]), min_size=len(pairs), max_size=len(pairs)))
    black = [p for p, c in zip(pairs, colours) if c == 1]
    red = [p for p, c in zip(pairs, colours) if c == 2]
    return Trigraph.from_colored_edges(n, black, red)


@settings(max_examples=150, deadline=None)
@given(trigraphs())
def test_exact_matches_naive_on_trigraphs(g):
    res = twinwidth_exact(g)
    assert res.status == "exact"
    assert res.width == naive_twinwidth(g)[0]
    assert verify_certificate(g, res.sequence, res.width)


def test_canonical_key_is_label_invariant():
    G = nx.gnp_random_graph(9, 0.4, seed=3)
    perm = list(range(9))
    random.Random(1).shuffle(perm)
    H = nx.relabel_nodes(G, dict(enumerate(perm)))
    # two different labellings of the same graph; keys may differ only when refinement leaves big cells
    a, b = canonical_key(from_nx(G)), canonical_key(from_nx(H))
    assert a[:2] == b[:2]
    assert canonical_key(from_nx(G)) == a


def test_canonical_key_separates_non_isomorphic():
    assert canonical_key(path(4)) != canonical_key(from_nx(nx.star_graph(3)))
