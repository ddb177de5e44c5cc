import networkx as nx
import pytest

from bookbind.instances import gen_bubble
from bookbind.ordering import VertexOrder, strip_placeholders
from bookbind.pipeline import embed

from conftest import run, small_corpus
from helpers import planar_witness
from sector_oracle import sector_violations


def test_single_triangle_order_starts_at_v0():
    w = planar_witness(nx.cycle_graph(3), {0, 1, 2})
    order = embed(w).order.real()
    assert sorted(order) == [0, 1, 2]


def test_strip_placeholders():
    o = VertexOrder([3, 5, VertexOrder.hat(3)])
    assert strip_placeholders(o).seq == [3, 5]
    assert strip_placeholders(VertexOrder([2, 0, 1])).seq == [2, 0, 1]


def test_nested_placeholders_strip_to_real_order():
    for s in range(6):
        res = run("bubble", 3, s)
        seq = res.order.seq
        real = strip_placeholders(res.order).seq
        assert real == [x for x in seq if x >= 0]
        assert sorted(real) == list(range(res.skeleton.n))


def test_placeholders_follow_their_vertex(small_result):
    P = small_result.order.positions()
    for v in small_result.order.placeholders:
        assert P[v] < P[VertexOrder.hat(v)]


def test_outer_cycles_keep_their_order(small_result):
    P = small_result.order.positions()
    for h in small_result.decomposition.graphs:
        ps = [P[v] for v in h.cycle]
        assert ps == sorted(ps)


def test_order_is_deterministic():
    w = gen_bubble(2, 3)
    assert embed(w).order.seq == embed(w).order.seq


SECTOR_CASES = [key for key in small_corpus() if run(*key).skeleton.n <= 14]


@pytest.mark.parametrize("key", SECTOR_CASES, ids=lambda k: "-".join(map(str, k)))
def test_sector_partition_matches_brute_force(key):
    bad, tally = sector_violations(run(*key))
    assert not bad, bad
