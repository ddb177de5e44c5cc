"""Exact book thickness of small graphs by exhaustive search.

Used as ground truth in tests and by ``bookbind thickness``. Nothing here
is fast; the size limits keep it honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import SizeLimitExceeded

Edge = tuple[int, int]

MAX_ORDER_N = 12
MAX_SEARCH_N = 10


@dataclass(frozen=True)
class SmallGraph:
    n: int
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "SmallGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            es.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(es)))

    @classmethod
    def complete(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def twist_graph(g: SmallGraph, order: Sequence[int]) -> list[set[int]]:
    """Adjacency over edge indices: two edges are adjacent iff they twist."""
    pos = {v: i for i, v in enumerate(order)}
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges]
    adj: list[set[int]] = [set() for _ in spans]
    for i, (a, b) in enumerate(spans):
        for j in range(i + 1, len(spans)):
            c, d = spans[j]
            if a < c < b < d or c < a < d < b:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _colorable(adj: list[set[int]], p: int) -> bool:
    """Backtracking p-colouring; new colours are opened in order to skip relabellings."""
    nodes = [i for i in range(len(adj)) if adj[i]]
    if not nodes:
        return p >= 1 or not adj
    if p < 1:
        return False
    nodes.sort(key=lambda i: -len(adj[i]))
    color: dict[int, int] = {}

    def go(idx: int, used: int) -> bool:
        if idx == len(nodes):
            return True
        v = nodes[idx]
        taken = {color[u] for u in adj[v] if u in color}
        for c in range(min(used + 1, p)):
            if c not in taken:
                color[v] = c
                if go(idx + 1, max(used, c + 1)):
                    return True
                del color[v]
        return False

    return go(0, 0)


def min_pages_for_order(g: SmallGraph, order: Sequence[int]) -> int:
    """Fewest pages for ``g`` with the spine order fixed to ``order``."""
    if g.n > MAX_ORDER_N:
        raise SizeLimitExceeded(f"n={g.n} exceeds {MAX_ORDER_N} for a fixed order")
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    if not g.edges:
        return 0
    adj = twist_graph(g, order)
    p = 1
    while not _colorable(adj, p):
        p += 1
    return p


def page_lower_bound(g: SmallGraph) -> int:
    """A page holds at most 2n-3 edges and the n spine-adjacent pairs fit anywhere."""
    m, n = len(g.edges), g.n
    if m == 0:
        return 0
    if n <= 3:
        return 1
    return max(1, -(-(m - n) // (n - 3)))


def canonical_orders(n: int):
    """Spine orders up to rotation and reflection: vertex 0 first, second < last."""
    for rest in permutations(range(1, n)):
        if len(rest) < 2 or rest[0] < rest[-1]:
            yield (0,) + rest


def exact_book_thickness(g: SmallGraph) -> int:
    """Iterative deepening on the page count over all canonical orders."""
    if g.n > MAX_SEARCH_N:
        raise SizeLimitExceeded(f"n={g.n} exceeds {MAX_SEARCH_N} for the order search")
    if not g.edges:
        return 0
    p = page_lower_bound(g)
    while True:
        if any(_colorable(twist_graph(g, o), p) for o in canonical_orders(g.n)):
            return p
        p += 1
