import json
import random

import networkx as nx
import pytest

from bookbind.errors import SizeLimitExceeded
from bookbind.oracle import SmallGraph, canonical_orders, exact_book_thickness, min_pages_for_order
from bookbind.witness import half_square

from conftest import GOLDEN, instance, run


def test_fixed_order_examples():
    assert min_pages_for_order(SmallGraph.complete(4), [0, 1, 2, 3]) == 2
    assert min_pages_for_order(SmallGraph.cycle(5), range(5)) == 1
    assert min_pages_for_order(SmallGraph.complete(6), [3, 1, 0, 5, 2, 4]) == 3


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_graphs(n):
    # a triangle is outerplanar, so the ceil(n/2) formula starts at n=4
    want = 1 if n == 3 else (n + 1) // 2
    assert exact_book_thickness(SmallGraph.complete(n)) == want


def test_outerplanar_graphs_need_one_page():
    assert exact_book_thickness(SmallGraph.cycle(7)) == 1
    fan = [(i, (i + 1) % 7) for i in range(7)] + [(0, i) for i in range(2, 6)]
    assert exact_book_thickness(SmallGraph.from_edges(7, fan)) == 1


def _random_planar_hamiltonian(n, rng):
    # a Hamiltonian cycle plus chords that keep the graph planar
    G = nx.cycle_graph(n)
    pairs = [(u, v) for u in range(n) for v in range(u + 2, n) if (u, v) != (0, n - 1)]
    rng.shuffle(pairs)
    for u, v in pairs:
        G.add_edge(u, v)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(u, v)
    return G


@pytest.mark.parametrize("seed", range(4))
def test_planar_hamiltonian_graphs_fit_two_pages(seed):
    G = _random_planar_hamiltonian(8, random.Random(seed))
    g = SmallGraph.from_edges(8, G.edges)
    assert exact_book_thickness(g) <= 2
    assert min_pages_for_order(g, range(8)) <= 2


def test_hamantasch_k4_has_thickness_three():
    mg = half_square(instance("hamantasch", 4))
    assert exact_book_thickness(SmallGraph.from_edges(mg.n, mg.edges)) == 3


def test_frozen_small_instances():
    frozen = json.loads((GOLDEN / "oracle-small.json").read_text())
    for key, want in frozen.items():
        _, k, n, s = key.split("-")
        w = instance("kframed", int(k), int(n), int(s))
        mg = half_square(w)
        g = SmallGraph.from_edges(mg.n, mg.edges)
        assert exact_book_thickness(g) == want
        # no embedding can use fewer pages than the exact thickness
        assert want <= run("kframed", int(k), int(n), int(s)).pages


def test_canonical_orders_cover_each_cyclic_class_once():
    n = 6
    seen = set()
    for o in canonical_orders(n):
        rots = [o[i:] + o[:i] for i in range(n)]
        cls = min(min(r, tuple(reversed(r))) for r in rots)
        assert cls not in seen
        seen.add(cls)
    assert len(seen) == 60  # (n-1)!/2


def test_size_limits():
    with pytest.raises(SizeLimitExceeded):
        exact_book_thickness(SmallGraph.cycle(11))
    with pytest.raises(SizeLimitExceeded):
        min_pages_for_order(SmallGraph.cycle(13), range(13))
