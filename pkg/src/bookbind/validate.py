"""Certifying validator for book embeddings and the embedding file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .counters import OpCounter
from .errors import CoverageError, ParseError, UnknownVertex

Edge = tuple[int, int]


@dataclass
class BookEmbedding:
    """A vertex order plus one edge list per page.

    Edges are stored as ``(u, v)`` with ``u`` before ``v`` in the order.
    """

    order: list[int]
    pages: list[list[Edge]]
    meta: dict = field(default_factory=dict)

    @property
    def num_pages(self) -> int:
        return sum(1 for p in self.pages if p)

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def edges(self) -> list[Edge]:
        return [e for p in self.pages for e in p]


@dataclass(frozen=True)
class Violation:
    page: int
    first: Edge
    second: Edge

    def __str__(self) -> str:
        (a, b), (c, d) = self.first, self.second
        return f"page {self.page}: {a}-{b} twists with {c}-{d}"


@dataclass(frozen=True)
class Certificate:
    ok: bool
    pages: int
    edges: int
    violation: Violation | None = None


def compact(be: BookEmbedding) -> BookEmbedding:
    """Drop empty pages, orient and sort edges by position."""
    pos = be.position()
    pages = []
    for p in be.pages:
        if not p:
            continue
        es = [(u, v) if pos[u] < pos[v] else (v, u) for u, v in p]
        pages.append(sorted(es, key=lambda e: (pos[e[0]], pos[e[1]])))
    return BookEmbedding(list(be.order), pages, dict(be.meta))


def _page_twist(pos: dict[int, int], edges: Sequence[Edge]) -> tuple[Edge, Edge] | None:
    # sweep left to right: close arcs ending here (innermost first), then open new ones
    events: dict[int, tuple[list[int], list[int]]] = {}
    spans = []
    for i, (u, v) in enumerate(edges):
        a, b = sorted((pos[u], pos[v]))
        spans.append((a, b))
        events.setdefault(a, ([], []))[1].append(i)
        events.setdefault(b, ([], []))[0].append(i)
    stack: list[int] = []
    for x in sorted(events):
        closing, opening = events[x]
        # arcs closing here must be the top |closing| entries, longest deepest
        for i in sorted(closing, key=lambda i: -spans[i][0]):
            if spans[i][0] == spans[i][1]:
                continue
            if not stack or stack[-1] != i:
                j = stack[-1]
                return (edges[j], edges[i]) if spans[j][0] < spans[i][0] else (edges[i], edges[j])
            stack.pop()
        for i in sorted(opening, key=lambda i: -spans[i][1]):
            stack.append(i)
    return None


def check_embedding(
    be: BookEmbedding, graph_edges: Iterable[Edge] | None = None, ops: OpCounter | None = None
) -> Certificate:
    """Stack simulation per page; coverage against ``graph_edges`` when given."""
    pos = be.position()
    if len(pos) != len(be.order):
        raise CoverageError("vertex order repeats a vertex")
    seen: set[Edge] = set()
    for p in be.pages:
        if ops is not None:
            ops.tick(2 * len(p))  # one push and one pop per arc
        for u, v in p:
            for x in (u, v):
                if x not in pos:
                    raise UnknownVertex(f"vertex {x} is not in the order")
            if u == v:
                raise CoverageError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise CoverageError(f"edge {key[0]}-{key[1]} appears twice")
            seen.add(key)
    if graph_edges is not None:
        want = {(min(u, v), max(u, v)) for u, v in graph_edges}
        missing = sorted(want - seen)
        extra = sorted(seen - want)
        if missing:
            raise CoverageError(f"edge {missing[0][0]}-{missing[0][1]} is on no page")
        if extra:
            raise CoverageError(f"edge {extra[0][0]}-{extra[0][1]} is not in the graph")
    for i, p in enumerate(be.pages):
        bad = _page_twist(pos, p)
        if bad is not None:
            return Certificate(False, be.num_pages, len(seen), Violation(i, *bad))
    return Certificate(True, be.num_pages, len(seen))


def pairwise_twist(pos: dict[int, int], edges: Sequence[Edge]) -> tuple[Edge, Edge] | None:
    """Quadratic reference check used to cross-examine the stack simulation."""
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in edges]
    for i in range(len(spans)):
        a, b = spans[i]
        for j in range(i + 1, len(spans)):
            c, d = spans[j]
            if a < c < b < d or c < a < d < b:
                return edges[i], edges[j]
    return None


def budget(k: int, mode: str = "general") -> int:
    if mode == "4map":
        return 11
    if mode == "5map":
        return 17
    return 6 * (k // 2) + 5


def check_budget(be: BookEmbedding, k: int, mode: str = "general") -> tuple[bool, int, int]:
    b = budget(k, mode)
    return be.num_pages <= b, be.num_pages, b


def format_embedding(be: BookEmbedding) -> str:
    be = compact(be)
    lines = ["ORDER " + " ".join(map(str, be.order))]
    for i, p in enumerate(be.pages):
        lines.append(f"PAGE {i}: " + " ".join(f"{u}-{v}" for u, v in p))
    return "\n".join(lines) + "\n"


def parse_embedding(text: str) -> BookEmbedding:
    order: list[int] | None = None
    pages: list[list[Edge]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "ORDER":
                if order is not None:
                    raise ParseError("second ORDER line", lineno)
                order = [int(t) for t in rest.split()]
            elif head == "PAGE":
                idx, colon, body = rest.partition(":")
                if not colon or int(idx) != len(pages):
                    raise ParseError(f"expected PAGE {len(pages)}:", lineno)
                es = []
                for tok in body.split():
                    u, dash, v = tok.partition("-")
                    if not dash:
                        raise ParseError(f"bad edge token {tok!r}", lineno)
                    es.append((int(u), int(v)))
                pages.append(es)
            else:
                raise ParseError(f"unknown record {head!r}", lineno)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if order is None:
        raise ParseError("missing ORDER line", 0)
    return BookEmbedding(order, pages)
