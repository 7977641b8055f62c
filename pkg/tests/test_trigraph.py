import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import from_nx, literal_contract, to_sets
from twinwidth.trigraph import (
    ContractionSequence,
    ContractionStep,
    ReplayError,
    Trigraph,
    TrigraphError,
    contract,
    from_black_edges,
    max_red_degree,
    red_degree,
    replay,
    verify_certificate,
)


def P(n):
    return from_black_edges(n, [(i, i + 1) for i in range(n - 1)])


def K(n):
    return from_nx(nx.complete_graph(n))


class TestFromBlackEdges:
    def test_single_vertex(self):
        g = from_black_edges(1, [])
        assert g.vertices() == [0]
        assert g.edges() == []

    def test_triangle_all_black(self):
        g = from_black_edges(3, [(0, 1), (0, 2), (1, 2)])
        assert g.black_edges() == [(0, 1), (0, 2), (1, 2)]
        assert g.red_edges() == []

    def test_path(self):
        g = P(4)
        assert g.edges() == [(0, 1), (1, 2), (2, 3)]
        assert max_red_degree(g) == 0

    def test_duplicate_edge_is_idempotent(self):
        assert from_black_edges(2, [(0, 1), (1, 0), (0, 1)]).edges() == [(0, 1)]

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)]])
    def test_bad_edges(self, edges):
        with pytest.raises(TrigraphError):
            from_black_edges(3, edges)

    def test_wide_graph_spans_several_words(self):
        n = 200
        g = from_black_edges(n, [(i, (i + 1) % n) for i in range(n)])
        assert g.black.shape[1] == 4
        assert g.neighbors(199) == {0, 198}


class TestContract:
    def test_true_twins_stay_black(self):
        h = contract(K(3), (0, 1))
        assert h.black_edges() == [(0, 2)]
        assert h.red_edges() == []

    def test_false_twins_stay_black(self):
        h = contract(P(3), (0, 2))
        assert h.black_edges() == [(0, 1)]
        assert h.red_edges() == []

    def test_one_sided_neighbor_turns_red(self):
        h = contract(P(3), (0, 1))
        assert h.red_edges() == [(0, 2)]
        assert h.black_edges() == []

    def test_input_not_mutated(self):
        g = P(3)
        contract(g, (0, 1))
        assert g.edges() == [(0, 1), (1, 2)] and g.n == 3

    def test_merged_vertex_keeps_id(self):
        h = contract(P(4), ContractionStep(2, 0))
        assert h.vertices() == [1, 2, 3]

    def test_errors(self):
        g = P(3)
        with pytest.raises(TrigraphError):
            contract(g, (0, 0))
        with pytest.raises(TrigraphError):
            contract(g, (0, 7))
        with pytest.raises(TrigraphError):
            contract(contract(g, (0, 1)), (1, 2))

    def test_red_edge_dominates(self):
        g = Trigraph.from_colored_edges(3, black=[(0, 2)], red=[(1, 2)])
        assert contract(g, (0, 1)).red_edges() == [(0, 2)]


class TestRedDegree:
    def test_all_black(self):
        g = from_nx(nx.petersen_graph())
        assert all(red_degree(g, v) == 0 for v in g.vertices())

    def test_path_merge(self):
        assert red_degree(contract(P(3), (0, 1)), 0) == 1

    def test_star_center_with_leaf(self):
        star = from_nx(nx.star_graph(4))
        black, red = literal_contract(*to_sets(star), 0, 1)
        assert len(red[0]) == 3
        assert red_degree(contract(star, (0, 1)), 0) == 3

    def test_unknown_vertex(self):
        with pytest.raises(TrigraphError):
            red_degree(P(2), 5)

    def test_max_red_degree_examples(self):
        assert max_red_degree(K(5)) == 0
        assert max_red_degree(contract(P(3), (0, 1))) == 1
        c5 = from_nx(nx.cycle_graph(5))
        _, red = literal_contract(*to_sets(c5), 0, 1)
        assert max(len(s) for s in red.values()) == 2
        assert max_red_degree(contract(c5, (0, 1))) == 2
        assert max_red_degree(Trigraph.empty(0)) == 0


class TestReplay:
    def test_k1_empty_sequence(self):
        assert replay(from_black_edges(1, []), ContractionSequence()).overall_width == 0

    def test_k4_true_twins(self):
        t = replay(K(4), [(0, 1), (0, 2), (0, 3)])
        assert t.per_step_max_red_degree == [0, 0, 0]
        assert t.overall_width == 0

    def test_p4(self):
        # hand replay: 0-2 red, then 0-2 red again, then one vertex
        t = replay(P(4), [(0, 1), (2, 3), (0, 2)])
        assert t.per_step_max_red_degree == [1, 1, 0]
        assert t.overall_width == 1

    def test_dead_vertex_reports_step(self):
        with pytest.raises(ReplayError) as info:
            replay(P(4), [(0, 1), (1, 2)])
        assert info.value.index == 1

    def test_does_not_mutate(self):
        g = P(4)
        replay(g, [(0, 1), (2, 3), (0, 2)])
        assert g.n == 4 and g.red_edges() == []

    def test_deterministic(self):
        g = from_nx(nx.petersen_graph())
        seq = [(0, v) for v in range(1, 10)]
        assert replay(g, seq) == replay(g, seq)


class TestVerify:
    def test_k2(self):
        assert verify_certificate(from_black_edges(2, [(0, 1)]), [(0, 1)], 0)

    def test_bound_exceeded_reports_first_step(self):
        v = verify_certificate(P(4), [(0, 1), (2, 3), (0, 2)], 0)
        assert not v and v.step == 0 and v.red_degree == 1

    def test_incomplete(self):
        v = verify_certificate(P(4), [(0, 1)], 5)
        assert not v and "remain" in v.reason

    def test_structural(self):
        v = verify_certificate(P(4), [(0, 1), (0, 1)], 5)
        assert not v and v.step == 1 and v.reason.startswith("structural")


@st.composite
def trigraphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    colors = draw(st.lists(st.sampled_from([0, 1, 2]), min_size=len(pairs), max_size=len(pairs)))
    black = [p for p, c in zip(pairs, colors) if c == 1]
    red = [p for p, c in zip(pairs, colors) if c == 2]
    return Trigraph.from_colored_edges(n, black, red)


@settings(max_examples=200, deadline=None)
@given(trigraphs(), st.data())
def test_contract_matches_literal_rule(g, data):
    if g.n < 2:
        return
    keep, remove = data.draw(st.lists(st.sampled_from(g.vertices()), min_size=2, max_size=2, unique=True))
    h = contract(g, (keep, remove))
    black, red = literal_contract(*to_sets(g), keep, remove)
    assert to_sets(h) == (black, red)
    # colour partition, symmetry, irreflexivity
    for v in h.vertices():
        assert not (h.black_neighbors(v) & h.red_neighbors(v))
        assert v not in h.neighbors(v)
        for u in h.neighbors(v):
            assert v in h.neighbors(u)
            assert h.is_red(u, v) == h.is_red(v, u)
    assert h.n == g.n - 1
    pair = {keep, remove}
    assert h.black_neighbors(keep) == (g.black_neighbors(keep) & g.black_neighbors(remove)) - pair
    assert h.neighbors(keep) == (g.neighbors(keep) | g.neighbors(remove)) - pair
    assert list(h.red_deg[h.alive]) == [len(h.red_neighbors(v)) for v in h.vertices()]


@settings(max_examples=100, deadline=None)
@given(trigraphs())
def test_twin_absorption(g):
    vs = g.vertices()
    for i in vs:
        for j in vs:
            if i < j and not g.red_neighbors(i) and not g.red_neighbors(j):
                if g.black_neighbors(i) - {j} == g.black_neighbors(j) - {i}:
                    assert contract(g, (i, j)).red_edges() == g.red_edges()
