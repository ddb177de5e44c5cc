import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookbind.errors import CoverageError, ParseError, UnknownVertex
from bookbind.validate import (
    BookEmbedding,
    _page_twist,
    budget,
    check_embedding,
    format_embedding,
    pairwise_twist,
    parse_embedding,
)

from conftest import run, small_corpus


def test_budget_values():
    assert [budget(k) for k in range(2, 9)] == [11, 11, 17, 17, 23, 23, 29]
    assert budget(4, "4map") == 11 and budget(5, "5map") == 17


def test_twist_is_reported_with_its_pair():
    be = BookEmbedding([0, 1, 2, 3], [[(0, 2), (1, 3)]])
    cert = check_embedding(be)
    assert not cert.ok
    assert {cert.violation.first, cert.violation.second} == {(0, 2), (1, 3)}


def test_nested_and_disjoint_arcs_pass():
    be = BookEmbedding([0, 1, 2, 3, 4], [[(0, 4), (1, 3), (1, 2), (3, 4)]])
    assert check_embedding(be).ok


def test_missing_edge_is_a_coverage_error():
    be = BookEmbedding([0, 1, 2], [[(0, 1)]])
    with pytest.raises(CoverageError):
        check_embedding(be, [(0, 1), (1, 2)])


def test_unknown_vertex_and_duplicate_edge():
    with pytest.raises(UnknownVertex):
        check_embedding(BookEmbedding([0, 1], [[(0, 5)]]))
    with pytest.raises(CoverageError):
        check_embedding(BookEmbedding([0, 1], [[(0, 1)], [(1, 0)]]))


def test_format_and_parse_roundtrip():
    res = run("hamantasch", 4)
    text = format_embedding(res.embedding)
    back = parse_embedding(text)
    assert format_embedding(back) == text
    assert check_embedding(back, res.embedding.edges()).ok


def test_tampered_embedding_fails():
    res = run("kframed", 4, 30, 1)
    be = parse_embedding(format_embedding(res.embedding))
    pos = be.position()
    # move an edge onto a page where it twists
    for i, p in enumerate(be.pages):
        for j, q in enumerate(be.pages):
            if i == j:
                continue
            for e in q:
                if pairwise_twist(pos, p + [e]):
                    q.remove(e)
                    p.append(e)
                    assert not check_embedding(be).ok
                    return
    pytest.fail("no tampering found")


@pytest.mark.parametrize("text,line", [
    ("PAGE 0: 0-1\n", 0),
    ("ORDER 0 1\nPAGE 1: 0-1\n", 2),
    ("ORDER 0 1\nPAGE 0: 0+1\n", 2),
    ("ORDER 0 1\nORDER 1 0\n", 2),
    ("ORDER 0 x\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_embedding(text)
    assert exc.value.line == line


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 40), st.integers(0, 80), st.integers(0, 2**32 - 1))
def test_stack_simulation_matches_pairwise(n, m, seed):
    rng = random.Random(seed)
    es = set()
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        es.add((min(u, v), max(u, v)))
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    es = sorted(es)
    assert (_page_twist(pos, es) is None) == (pairwise_twist(pos, es) is None)


@pytest.mark.parametrize("key", small_corpus()[::3], ids=lambda k: "-".join(map(str, k)))
def test_stack_and_pairwise_agree_on_pipeline_pages(key):
    res = run(*key)
    be = res.embedding
    assert len(be.edges()) <= 2000
    pos = be.position()
    for p in be.pages:
        assert _page_twist(pos, p) is None
        assert pairwise_twist(pos, p) is None
    # merged neighbouring pages usually twist; both checkers must agree
    for a, b in zip(be.pages, be.pages[1:]):
        assert (_page_twist(pos, a + b) is None) == (pairwise_twist(pos, a + b) is None)
