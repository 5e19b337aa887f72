import networkx as nx
import pytest

from nhc.generators import Event, HolmeKimParams, apply_event, holme_kim, random_script
from nhc.hubs import estimate_gamma


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(g)
    h.add_edges_from((u, v) for u, v, _ in g.edges())
    return h


def test_small_tree():
    g = holme_kim(HolmeKimParams(5, 1, 0.0, seed=0))
    assert g.edge_count == 4 and nx.is_tree(_nx(g))


@pytest.mark.parametrize("n,m,p", [(1000, 10, 0.7), (30, 3, 0.5), (12, 2, 1.0)])
def test_edge_count_identity(n, m, p):
    g = holme_kim(HolmeKimParams(n, m, p, seed=1))
    assert len(g) == n and g.edge_count == (n - m) * m


def test_hand_count_small():
    # n=6, m=2: node 2 links both core nodes, nodes 3..5 add two edges each
    g = holme_kim(HolmeKimParams(6, 2, 0.5, seed=9))
    assert g.has_edge(2, 0) and g.has_edge(2, 1)
    for u in range(2, 6):
        assert sum(1 for v in g.adj(u) if v < u) == 2


def test_non_core_degrees_at_least_m():
    g = holme_kim(HolmeKimParams(1000, 10, 0.7, seed=2))
    assert all(g.degree(u) >= 10 for u in range(10, 1000))


def test_triangles_raise_clustering():
    wins = 0
    for seed in range(20):
        hi = nx.average_clustering(_nx(holme_kim(HolmeKimParams(300, 3, 0.7, seed))))
        lo = nx.average_clustering(_nx(holme_kim(HolmeKimParams(300, 3, 0.0, seed))))
        wins += hi > lo
    assert wins == 20


def test_seed_determinism():
    a = holme_kim(HolmeKimParams(200, 4, 0.7, seed=5))
    b = holme_kim(HolmeKimParams(200, 4, 0.7, seed=5))
    assert sorted(a.edges()) == sorted(b.edges())
    assert random_script(a, 10, 10, 3).events == random_script(b, 10, 10, 3).events


def test_tail_exponent_of_plain_preferential_attachment():
    g = holme_kim(HolmeKimParams(10_000, 10, 0.0, seed=0))
    assert 2.5 <= estimate_gamma(list(g.degrees().values()), 10).gamma <= 3.5


@pytest.mark.parametrize("bad", [(5, 5, 0.1), (5, 0, 0.1), (5, 2, 1.5)])
def test_invalid_params(bad):
    with pytest.raises(ValueError):
        HolmeKimParams(*bad)


def test_empty_script():
    g = holme_kim(HolmeKimParams(20, 2, 0.5, seed=0))
    assert len(random_script(g, 0, 0, seed=1)) == 0


def test_script_adds_are_distinct_non_edges():
    g = holme_kim(HolmeKimParams(1000, 10, 0.7, seed=0))
    script = random_script(g, 100, 0, seed=4)
    pairs = [(e.u, e.v) for e in script.events]
    assert len(pairs) == 100 == len(set(pairs))
    assert all(e.kind == "add" and not g.has_edge(e.u, e.v) for e in script.events)


def test_script_is_valid_in_sequence_and_replayable():
    g = holme_kim(HolmeKimParams(60, 3, 0.5, seed=0))
    script = random_script(g, 80, 80, seed=2)
    ends = []
    for _ in range(2):
        h = g.copy()
        for ev in script.events:
            apply_event(h, ev)  # raises if an event is invalid
        ends.append(h)
    assert ends[0] == ends[1]
    assert ends[0].edge_count == g.edge_count


def test_infeasible_script():
    g = holme_kim(HolmeKimParams(4, 1, 0.0, seed=0))
    with pytest.raises(ValueError):
        random_script(g, 0, 10, seed=0)
    with pytest.raises(ValueError):
        random_script(g, 10, 0, seed=0)


def test_apply_unknown_event():
    with pytest.raises(ValueError):
        apply_event(holme_kim(HolmeKimParams(4, 1, 0.0, 0)), Event("teleport", 1))
