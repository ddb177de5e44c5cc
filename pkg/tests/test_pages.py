import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookbind.errors import OuterplanarityViolation
from bookbind.pages import (
    PageIndex,
    check_outerplanar,
    dsatur,
    repair_pages,
    squeeze_pages,
    three_color,
    twisting_pairs,
    zigzag_pages,
)
from bookbind.validate import _page_twist, pairwise_twist

from conftest import run, small_corpus


def _adj(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


@pytest.mark.parametrize("m", range(2, 13))
def test_zigzag_covers_all_pairs_in_half_the_pages(m):
    pages = zigzag_pages(m)
    assert len(pages) == m * (m - 1) // 2
    assert len(set(pages.values())) == (m + 1) // 2
    pos = {v: v for v in range(m)}
    for p in set(pages.values()):
        assert pairwise_twist(pos, [e for e, q in pages.items() if q == p]) is None


def test_outerplanar_check_accepts_fan_and_rejects_k4():
    fan = [(0, i) for i in range(1, 6)] + [(i, i + 1) for i in range(1, 5)]
    check_outerplanar(list(range(6)), _adj(6, fan))
    k4 = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    with pytest.raises(OuterplanarityViolation):
        check_outerplanar(list(range(4)), _adj(4, k4))
    k23 = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
    with pytest.raises(OuterplanarityViolation):
        check_outerplanar(list(range(5)), _adj(5, k23))


def _apex_planar(nodes, adj):
    G = nx.Graph()
    G.add_nodes_from(nodes)
    G.add_edges_from((u, v) for u in adj for v in adj[u])
    G.add_edges_from(("apex", v) for v in nodes)
    return nx.check_planarity(G)[0]


@st.composite
def outerplanar_graphs(draw):
    # a polygon plus non-crossing chords, then a random subset of edges
    n = draw(st.integers(3, 12))
    edges = {(i, (i + 1) % n) for i in range(n)}
    stack = [(0, n - 1)]
    while stack:
        a, b = stack.pop()
        if b - a < 2:
            continue
        c = draw(st.integers(a + 1, b - 1))
        edges |= {(a, c), (c, b)}
        stack += [(a, c), (c, b)]
    keep = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    return n, [e for e, k in zip(sorted(edges), keep) if k]


@settings(max_examples=150, deadline=None)
@given(outerplanar_graphs())
def test_three_colouring_of_outerplanar_graphs(graph):
    n, edges = graph
    adj = _adj(n, edges)
    check_outerplanar(list(range(n)), adj)
    col = three_color(list(range(n)), adj)
    assert set(col.values()) <= {0, 1, 2}
    assert all(col[u] != col[v] for u, v in edges)


@settings(max_examples=150, deadline=None)
@given(st.integers(4, 9), st.data())
def test_outerplanar_check_agrees_with_apex_planarity(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * n))
    adj = _adj(n, edges)
    try:
        check_outerplanar(list(range(n)), adj)
        ours = True
    except OuterplanarityViolation:
        ours = False
    assert ours == _apex_planar(list(range(n)), adj)


def test_face_conflict_graphs_are_outerplanar(small_result):
    for fcg in small_result.plan.conflicts.values():
        assert _apex_planar(fcg.nodes, fcg.undirected())


def test_crossed_edges_of_a_face_use_half_its_degree(small_result):
    sk, plan = small_result.skeleton, small_result.plan
    for f, es in plan.by_face.items():
        d = len(sk.clique[f])
        assert len(set(es.values())) <= d // 2


def _uncrossed_isolation(key):
    res = run(*key)
    pos = {v: i for i, v in enumerate(res.order.real())}
    twisted = 0
    for gid, mine in res.plan.by_graph.items():
        assert len(set(mine.values())) <= 3
        by = {}
        for e, p in mine.items():
            by.setdefault(p, []).append(e)
        twisted += any(_page_twist(pos, es) for es in by.values())
    return twisted


PLANAR_LIKE = [k for k in small_corpus() if k[0] != "kframed" or k[1] == 3]
DENSE = [k for k in small_corpus() if k[0] == "kframed" and k[1] >= 4]


@pytest.mark.parametrize("key", PLANAR_LIKE, ids=lambda k: "-".join(map(str, k)))
def test_two_level_uncrossed_pages_validate_in_isolation(key):
    assert _uncrossed_isolation(key) == 0


@pytest.mark.xfail(strict=True, reason="level rules twist some uncrossed edges for k >= 4; see ledger")
def test_two_level_uncrossed_pages_validate_in_isolation_dense():
    assert sum(_uncrossed_isolation(k) for k in DENSE) == 0


def test_uncrossed_pages_never_exceed_three():
    for key in DENSE:
        _uncrossed_isolation(key)  # asserts the page count inside


@st.composite
def arcs(draw, max_n=30, max_m=60):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(0, max_m))
    out = set()
    for _ in range(m):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a != b:
            out.add((min(a, b), max(a, b)))
    return n, sorted(out)


@settings(max_examples=300, deadline=None)
@given(arcs())
def test_page_index_agrees_with_pairwise(data):
    n, es = data
    pos = {v: v for v in range(n)}
    idx = PageIndex(n)
    kept = []
    for a, b in es:
        fits = pairwise_twist(pos, kept + [(a, b)]) is None
        assert idx.fits(a, b) == fits
        if fits:
            idx.add(a, b)
            kept.append((a, b))


@settings(max_examples=300, deadline=None)
@given(arcs(max_n=16, max_m=40))
def test_twisting_pairs_enumerates_every_twist(data):
    n, es = data
    pos = {v: v for v in range(n)}
    got = {frozenset(p) for p in twisting_pairs(pos, es)}
    want = {frozenset((e, f)) for i, e in enumerate(es) for f in es[i + 1:]
            if pairwise_twist(pos, [e, f])}
    assert got == want


@settings(max_examples=200, deadline=None)
@given(arcs(), st.integers(1, 4))
def test_repair_and_squeeze_give_twist_free_pages(data, start):
    n, es = data
    pos = {v: v for v in range(n)}
    page = {e: i % start for i, e in enumerate(es)}
    pools = {p: list(range(start)) for p in range(start)}
    fixed, _ = repair_pages(pos, page, pools)
    assert set(fixed) == set(es)
    squeezed, removed = squeeze_pages(pos, fixed)
    for out in (fixed, squeezed):
        for p in set(out.values()):
            assert pairwise_twist(pos, [e for e, q in out.items() if q == p]) is None
    assert len(set(squeezed.values())) == len(set(fixed.values())) - removed


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.data())
def test_dsatur_colours_properly(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    adj = _adj(n, edges)
    prefer = {v: data.draw(st.integers(0, 3)) for v in range(n)}
    col = dsatur(adj, [0, 1, 2], prefer, fresh=100)
    assert all(col[u] != col[v] for u, v in edges)
    assert all(c in (0, 1, 2) or c >= 100 for c in col.values())


@settings(max_examples=200, deadline=None)
@given(arcs(), arcs())
def test_page_index_rollback_restores_state(first, second):
    n = max(first[0], second[0])
    idx = PageIndex(n)
    for a, b in first[1]:
        idx.add(a, b)
    before = (list(idx.right), list(idx.left))
    idx.begin()
    for a, b in second[1]:
        idx.add(a, b)
    idx.rollback()
    assert (idx.right, idx.left) == before
