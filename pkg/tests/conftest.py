import functools

import networkx as nx
import pytest

from twinwidth.construction import build_gk
from twinwidth.trigraph import Trigraph


def from_nx(G) -> Trigraph:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    return Trigraph.from_black_edges(G.number_of_nodes(), G.edges())


def literal_contract(black, red, v, v2):
    """The contraction rule read word for word, on dicts of neighbour sets.

    The new vertex w is adjacent to every u adjacent to v or v2; wu is black
    only if both vu and v2u exist and neither is red. w reuses the id v.
    """
    others = [u for u in black if u not in (v, v2)]
    nb = {u: {x for x in black[u] if x not in (v, v2)} for u in others}
    nr = {u: {x for x in red[u] if x not in (v, v2)} for u in others}
    nb[v], nr[v] = set(), set()
    for u in others:
        adj_v = u in black[v] or u in red[v]
        adj_v2 = u in black[v2] or u in red[v2]
        if not (adj_v or adj_v2):
            continue
        if u in black[v] and u in black[v2]:
            nb[v].add(u)
            nb[u].add(v)
        else:
            nr[v].add(u)
            nr[u].add(v)
    return nb, nr


def to_sets(g: Trigraph):
    black = {v: g.black_neighbors(v) for v in g.vertices()}
    red = {v: g.red_neighbors(v) for v in g.vertices()}
    return black, red


@functools.lru_cache(maxsize=None)
def gk(k):
    return build_gk(k)


@pytest.fixture(scope="session")
def g0():
    return gk(0)


@pytest.fixture(scope="session")
def g1():
    return gk(1)


@pytest.fixture(scope="session")
def g2():
    return gk(2)
