"""Page assignment: uncrossed pages per 2-level graph and crossed clique pages.

Uncrossed edges of a 2-level graph use three pages P1, P2, P3. With five
uncrossed pages in total, the page of a block becomes P3 of the graph
nested inside it and the two pages its parent does not use become the new
P1 and P2. Crossed edges of each face clique go to one of three page sets
per level parity, chosen by a 3-colouring of the face-conflict graph.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .counters import OpCounter
from .errors import MergeConflict, NotThreeColorable, OuterplanarityViolation, StructureError
from .leveling import Decomposition, TwoLevelGraph
from .ordering import VertexOrder
from .validate import _page_twist
from .witness import SkeletonComplex

Edge = tuple[int, int]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _pairs(vs) -> list[Edge]:
    s = sorted(vs)
    return [(u, v) for i, u in enumerate(s) for v in s[i + 1:]]


# ---------------------------------------------------------------------------
# complete graphs on a line


def zigzag_pages(m: int) -> dict[tuple[int, int], int]:
    """Page of each pair of ``0..m-1`` (points in convex position) in ``ceil(m/2)`` pages.

    Page ``j`` carries the zig-zag path ``j, j+1, j-1, j+2, j-2, ...`` taken
    modulo ``m``; each such path is non-crossing and together they cover
    every pair.
    """
    out: dict[tuple[int, int], int] = {}
    for j in range((m + 1) // 2):
        path = [j]
        for s in range(1, m):
            step = (s + 1) // 2 if s % 2 else -(s // 2)
            path.append((j + step) % m)
        for a, b in zip(path, path[1:]):
            out.setdefault(_key(a, b), j)
    return out


# ---------------------------------------------------------------------------
# face-conflict graph


@dataclass
class FaceConflictGraph:
    nodes: list[int]
    arcs: set[tuple[int, int]] = field(default_factory=set)

    def undirected(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {f: set() for f in self.nodes}
        for a, b in self.arcs:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def build_face_conflict_graph(sk: SkeletonComplex, h: TwoLevelGraph) -> FaceConflictGraph:
    big = [f for f in h.faces if len(set(h.face_vertices(sk, f))) >= 4]
    fcg = FaceConflictGraph(big)
    # faces holding a vertex assigned to each block
    holds: dict[int, list[int]] = {}
    for f in big:
        for v in set(h.face_vertices(sk, f)):
            b = h.assigned.get(v)
            if b is not None:
                holds.setdefault(b, []).append(f)
    for f in big:
        cls = h.classes[f]
        for bid in cls.bad_for:
            for f2 in holds.get(bid, ()):
                if f2 == f or h.face_key[f] >= h.face_key[f2]:
                    continue
                if h.classes[f2].attached_to == bid:
                    continue
                fcg.arcs.add((f, f2))
    return fcg


def check_outerplanar(nodes: list[int], adj: dict[int, set[int]]) -> None:
    """Raise OuterplanarityViolation unless the simple graph is outerplanar.

    Each biconnected piece is reduced by removing degree-2 vertices (adding
    the bridging edge), rebuilt as a cycle by reinsertion, and finally
    certified by checking that no two edges cross in that cyclic order.
    """
    from .graph_core import block_cut_decompose

    triples, eid = [], 0
    for u in nodes:
        for v in adj[u]:
            if u < v:
                triples.append((eid, u, v))
                eid += 1
    bc = block_cut_decompose(nodes, triples)
    ends = {e: (u, v) for e, u, v in triples}
    for blk in bc.blocks:
        if len(blk.vertices) < 4:
            continue
        vs = list(blk.vertices)
        es = [ends[e] for e in blk.edges]
        if len(es) > 2 * len(vs) - 3:
            raise OuterplanarityViolation(f"conflict graph block {vs} is not outerplanar")
        cyc = _outerplanar_cycle(vs, es)
        if cyc is None:
            raise OuterplanarityViolation(f"conflict graph block {vs} is not outerplanar")
        pos = {v: i for i, v in enumerate(cyc)}
        if _page_twist(pos, es) is not None:
            raise OuterplanarityViolation(f"conflict graph block {vs} is not outerplanar")


def _outerplanar_cycle(vs: list[int], es: list[Edge]) -> list[int] | None:
    adj: dict[int, set[int]] = {v: set() for v in vs}
    for u, v in es:
        adj[u].add(v)
        adj[v].add(u)
    queue = sorted(v for v in vs if len(adj[v]) == 2)
    removed: list[tuple[int, int, int]] = []
    alive = len(vs)
    while queue and alive > 3:
        v = queue.pop()
        if v not in adj or len(adj[v]) != 2:
            continue
        a, b = sorted(adj.pop(v))
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
        removed.append((v, a, b))
        alive -= 1
        for x in (a, b):
            if len(adj[x]) == 2:
                queue.append(x)
    if alive > 3:
        return None
    cyc = sorted(adj)
    for v, a, b in reversed(removed):
        i, j = cyc.index(a), cyc.index(b)
        L = len(cyc)
        if (i + 1) % L == j:
            cyc.insert(i + 1, v)
        elif (j + 1) % L == i:
            cyc.insert(j + 1, v)
        else:
            return None
    return cyc


def three_color(nodes: list[int], adj: dict[int, set[int]]) -> dict[int, int]:
    """Colours 0..2 by peeling vertices of degree at most two."""
    deg = {v: len(adj[v]) for v in nodes}
    gone: set[int] = set()
    order: list[int] = []
    low = sorted((v for v in nodes if deg[v] <= 2), reverse=True)
    while low:
        v = low.pop()
        if v in gone:
            continue
        gone.add(v)
        order.append(v)
        for w in adj[v]:
            if w not in gone:
                deg[w] -= 1
                if deg[w] == 2:
                    low.append(w)
    if len(order) != len(nodes):
        stuck = sorted(v for v in nodes if v not in gone)
        raise NotThreeColorable(f"no vertex of degree <= 2 among {stuck[:8]}")
    color: dict[int, int] = {}
    for v in reversed(order):
        used = {color[w] for w in adj[v] if w in color}
        color[v] = min(c for c in range(3) if c not in used)
    return color


# ---------------------------------------------------------------------------
# assignment


def crossed_width(k: int, mode: str) -> int:
    if mode == "4map":
        return 1
    if mode == "5map":
        return 2
    return max(1, k // 2)


@dataclass
class PagePlan:
    page: dict[Edge, int]  # map edge -> page id (not compacted)
    uncrossed: int  # number of uncrossed page ids (5 or 6)
    width: int
    bank: dict[int, tuple[int, int, int]]  # graph id -> (P1, P2, P3)
    by_graph: dict[int, dict[Edge, int]]  # uncrossed edges assigned while processing a graph
    by_face: dict[int, dict[Edge, int]]  # crossed edges of each face clique
    colors: dict[int, int]  # face -> colour used (0..2 unless the order forces more)
    conflicts: dict[int, FaceConflictGraph]
    outside: dict[Edge, int] = field(default_factory=dict)  # outer-face clique edges
    conflict_colors: dict[int, int] = field(default_factory=dict)  # colouring of the conflict graph

    def crossed_page(self, parity: int, color: int, j: int) -> int:
        return self.uncrossed + (parity * 3 + color) * self.width + j


def _banks(dec: Decomposition, uncrossed: int) -> dict[int, tuple[int, int, int]]:
    bank: dict[int, tuple[int, int, int]] = {}
    for h in dec.graphs:
        if h.parent is None:
            bank[h.gid] = (0, 1, 2) if uncrossed == 6 else (1, 2, 0)
            continue
        p1, p2, p3 = bank[h.parent]
        parent_block = dec.graphs[h.parent].blocks[h.parent_block]
        own = p1 if parent_block.depth % 2 == 0 else p2
        if uncrossed == 6:
            # block pages stay within the level parity's three; P3 is still
            # the parent block's page, since nested sibling graphs interleave
            base = 3 * (h.level % 2)
            rest = [p for p in range(base, base + 3) if p != p3]
        else:
            rest = sorted(set(range(5)) - {p1, p2, p3})
        bank[h.gid] = (rest[0], rest[1], own)
    return bank


def assign_uncrossed(
    sk: SkeletonComplex,
    h: TwoLevelGraph,
    pos: dict[int, int],
    bank: tuple[int, int, int],
    page: dict[Edge, int],
    ops: OpCounter,
    skeleton_only: bool = False,
) -> dict[Edge, int]:
    """Pages for the skeleton, connector and triangulation edges of one 2-level graph.

    Edges already in ``page`` keep their page; run once with
    ``skeleton_only`` over all graphs before the added edges so skeleton
    edges take precedence.
    """
    g = sk.graph
    p1, p2, p3 = bank
    mine: dict[Edge, int] = {}

    def put(u: int, v: int, p: int) -> None:
        ops.tick()
        e = _key(u, v)
        if e not in page:
            page[e] = p
        mine.setdefault(e, page[e])

    def block_page(bid: int) -> int:
        return p1 if h.blocks[bid].depth % 2 == 0 else p2

    def binding_page(v: int, u: int) -> int:
        # v outer, u inner; backward when the outer end comes first
        if pos[v] < pos[u]:
            return p3
        other = block_page(h.assigned[u])
        return p2 if other == p1 else p1

    for e in sorted(h.cycle_edges):
        put(*g.edges[e], p3)
    for e in sorted(h.chords):
        put(*g.edges[e], p3)
    for b in h.blocks:
        bp = block_page(b.id)
        for x in b.trav:
            put(g.tail(x), g.head[x], bp)
    for e in sorted(h.binding):
        a, b = g.edges[e]
        v, u = (a, b) if h.is_outer(a) else (b, a)
        put(v, u, binding_page(v, u))
    if skeleton_only:
        return mine
    conn_block = {frozenset(b.vertices): b.id for b in h.blocks if b.connector}
    for u, w, _ in h.connectors:
        put(u, w, block_page(conn_block[frozenset((u, w))]))
    for a, u, _ in h.triangulation_edges(sk):
        if h.is_outer(u):
            put(a, u, p3)
        else:
            put(a, u, binding_page(a, u))
    return mine


def clique_local_pages(
    sk: SkeletonComplex,
    h: TwoLevelGraph,
    f: int,
    pos: dict[int, int],
    taken,
    width: int,
    skel: set[Edge] | None = None,
) -> dict[Edge, int]:
    """Crossed edges of K(f) with their zig-zag page index ``0 .. width-1``.

    Edges in ``skel`` (the skeleton) or already in ``taken`` are skipped.
    """
    a = h.alpha[f]
    skel = sk.simple_edges() if skel is None else skel
    rest = sorted((v for v in sk.clique[f] if v != a), key=pos.__getitem__)
    wanted = {}
    for (i, j), p in zigzag_pages(len(rest)).items():
        e = _key(rest[i], rest[j])
        if e not in skel and e not in taken:
            wanted[e] = p
    # renumber densely; pages of one clique never interact with other cliques' page indices
    used = sorted(set(wanted.values()))
    if len(used) > width:
        raise StructureError(f"face {f} needs {len(used)} crossed pages but the mode allows {width}")
    dense = {p: i for i, p in enumerate(used)}
    return {e: dense[p] for e, p in wanted.items()}


def assign_clique_pages(
    sk: SkeletonComplex,
    h: TwoLevelGraph,
    f: int,
    pos: dict[int, int],
    base: int,
    width: int,
    page: dict[Edge, int],
) -> dict[Edge, int]:
    """Crossed edges of K(f) on pages ``base .. base+width-1`` by zig-zag paths."""
    mine = {e: base + j for e, j in clique_local_pages(sk, h, f, pos, page, width).items()}
    page.update(mine)
    return mine


class _Occupancy:
    """Counts per spine position with "next occupied position" lookups."""

    def __init__(self, size: int):
        n = 1
        while n < max(size, 1):
            n *= 2
        self.n = n
        self.count = [0] * (2 * n)

    def add(self, i: int, d: int = 1) -> None:
        i += self.n
        while i:
            self.count[i] += d
            i //= 2

    def next_at_least(self, i: int) -> int | None:
        if i >= self.n:
            return None
        node = i + self.n
        if self.count[node]:
            return i
        # climb until a right sibling holds something, then descend leftmost
        while node > 1:
            if node % 2 == 0 and self.count[node + 1]:
                node += 1
                break
            node //= 2
        else:
            return None
        while node < self.n:
            node = 2 * node if self.count[2 * node] else 2 * node + 1
        return node - self.n


def twisting_pairs(pos: dict[int, int], edges: list[Edge], ops: OpCounter | None = None):
    """Yield every pair ``(e, f)`` with ``a < c < b < d`` for spans (a, b), (c, d).

    Left-to-right sweep over start points; arcs already started are kept
    bucketed by their right end, so each query only visits reported arcs.
    Runs in O((m + pairs) log n).
    """
    ops = ops or OpCounter()
    spans = sorted((min(pos[u], pos[v]), max(pos[u], pos[v]), (u, v)) for u, v in edges)
    size = max(pos.values(), default=0) + 1
    occ = _Occupancy(size)
    bucket: dict[int, list[Edge]] = {}
    i = 0
    while i < len(spans):
        c = spans[i][0]
        j = i
        while j < len(spans) and spans[j][0] == c:
            j += 1
        for _, d, f in spans[i:j]:
            ops.tick()
            x = occ.next_at_least(c + 1)
            while x is not None and x < d:
                for e in bucket[x]:
                    ops.tick()
                    yield e, f
                x = occ.next_at_least(x + 1)
        for _, d, f in spans[i:j]:
            bucket.setdefault(d, []).append(f)
            occ.add(d)
        i = j


def group_conflicts(
    pos: dict[int, int], groups: dict, ops: OpCounter | None = None
) -> dict:
    """Pairs of edge groups that twist somewhere under ``pos``."""
    ops = ops or OpCounter()
    adj: dict = {g: set() for g in groups}
    owner = {e: g for g, es in groups.items() for e in es}
    for e, f in twisting_pairs(pos, list(owner), ops):
        x, y = owner[e], owner[f]
        if x != y:
            adj[x].add(y)
            adj[y].add(x)
    return adj


def dsatur(adj: dict, pool: list[int], prefer: dict, fresh: int | None = None) -> dict:
    """Greedy colouring, most-saturated node first, preferring ``prefer[node]``.

    Colours come from ``pool`` in order; when it runs out, colours from
    ``fresh`` upwards are opened. Ties break on degree, then node key.
    """
    color: dict = {}
    seen: dict = {v: set() for v in adj}
    heap = [(0, -len(adj[v]), v) for v in adj]
    heapq.heapify(heap)
    extra = max(pool, default=-1) + 1 if fresh is None else fresh
    allowed = set(pool)
    while heap:
        _, _, v = heapq.heappop(heap)
        if v in color:
            continue
        used = seen[v]
        c = prefer.get(v)
        if c is None or c in used or c not in allowed:
            c = next((q for q in pool if q not in used), None)
        if c is None:
            c = extra
            while c in used:
                c += 1
        color[v] = c
        for u in adj[v]:
            if u not in color and c not in seen[u]:
                seen[u].add(c)
                heapq.heappush(heap, (-len(seen[u]), -len(adj[u]), u))
    return color


def plan_pages(
    sk: SkeletonComplex,
    dec: Decomposition,
    order: VertexOrder,
    mode: str = "general",
    uncrossed: int = 5,
    ops: OpCounter | None = None,
    strict: bool = True,
) -> PagePlan:
    """Pages for every map edge; ``strict`` raises MergeConflict on a merged-page twist."""
    ops = ops or OpCounter()
    pos = {v: i for i, v in enumerate(order.real())}
    width = crossed_width(sk.k, mode)
    bank = _banks(dec, uncrossed)
    page: dict[Edge, int] = {}
    by_graph: dict[int, dict[Edge, int]] = {}
    for h in dec.graphs:
        by_graph[h.gid] = assign_uncrossed(sk, h, pos, bank[h.gid], page, ops, skeleton_only=True)
    for h in dec.graphs:
        by_graph[h.gid].update(assign_uncrossed(sk, h, pos, bank[h.gid], page, ops))
    plan = PagePlan(page, uncrossed, width, bank, by_graph, {}, {}, {})
    skel = sk.simple_edges()
    local: dict[int, dict[Edge, int]] = {}
    parity: dict[int, int] = {}
    taken: set[Edge] = set()
    for h in dec.graphs:
        fcg = build_face_conflict_graph(sk, h)
        adj = fcg.undirected()
        check_outerplanar(fcg.nodes, adj)
        color = three_color(fcg.nodes, adj)
        plan.conflicts[h.gid] = fcg
        for f in fcg.nodes:
            ops.tick(len(sk.clique[f]))
            plan.conflict_colors[f] = color[f]
            parity[f] = h.level % 2
            local[f] = clique_local_pages(sk, h, f, pos, page.keys() | taken, width, skel)
            taken.update(local[f])
    # The conflict definition misses faces on both sides of a chain of
    # trivial blocks, so the final pages come from colouring the zig-zag
    # paths of all faces of a parity by the twists the order shows, each
    # path preferring the page its face's colour gives it.
    for par in (0, 1):
        groups: dict[tuple[int, int], list[Edge]] = {}
        for f, es in local.items():
            if parity[f] == par:
                for e, j in es.items():
                    groups.setdefault((f, j), []).append(e)
        clash = group_conflicts(pos, groups, ops)
        pool = [plan.crossed_page(par, c, j) for c in range(3) for j in range(width)]
        prefer = {g: plan.crossed_page(par, plan.conflict_colors[g[0]], g[1]) for g in groups}
        got = dsatur(clash, pool, prefer, fresh=uncrossed + (6 + 3 * par) * width * 100)
        for (f, j), es in groups.items():
            plan.colors[f] = plan.conflict_colors[f]
            for e in es:
                plan.by_face.setdefault(f, {})[e] = got[(f, j)]
    for f in local:
        plan.by_face.setdefault(f, {})
        page.update(plan.by_face[f])
    missing = sk.map_edges() - page.keys()
    # a point in the outer face makes its clique cross the outside; those
    # edges start on P3 of the outermost graph and are left to the repair
    outside = {_key(u, v) for u, v in _pairs(sk.clique[sk.outer])}
    if missing - outside:
        raise StructureError(f"{len(missing)} map edges left without a page, e.g. {min(missing)}")
    for e in sorted(missing):
        page[e] = plan.outside[e] = bank[dec.graphs[0].gid][2] if dec.graphs else 0
    if uncrossed == 5 and strict:
        for p in range(5):
            es = [e for e, q in page.items() if q == p and e not in plan.outside]
            bad = _page_twist(pos, es)
            if bad is not None:
                raise MergeConflict(f"uncrossed page {p}: {bad[0]} twists with {bad[1]}")
    return plan


# ---------------------------------------------------------------------------
# repair


class PageIndex:
    """Edges of one page, answering "would this edge twist?" in O(log n).

    Two segment trees over spine positions: the furthest right end of arcs
    starting at each position and the furthest left start of arcs ending
    there. An arc (a, b) twists an existing (c, d) iff some arc starts
    strictly inside (a, b) and ends right of b, or ends strictly inside and
    starts left of a.
    """

    def __init__(self, size: int):
        n = 1
        while n < max(size, 1):
            n *= 2
        self.n = n
        self.right = [-1] * (2 * n)
        self.left = [n] * (2 * n)
        self.journal: list[tuple[list[int], int, int]] | None = None

    def _set(self, tree: list[int], i: int, val: int, better) -> None:
        i += self.n
        log = self.journal
        while i:
            new = better(tree[2 * i], tree[2 * i + 1]) if i < self.n else better(tree[i], val)
            if new == tree[i]:
                break
            if log is not None:
                log.append((tree, i, tree[i]))
            tree[i] = new
            i //= 2

    def begin(self) -> None:
        """Start recording changes so that ``rollback`` can undo them."""
        self.journal = []

    def rollback(self) -> None:
        for tree, i, old in reversed(self.journal or ()):
            tree[i] = old
        self.journal = None

    def commit(self) -> None:
        self.journal = None

    def _query(self, tree: list[int], lo: int, hi: int, better, empty: int) -> int:
        # over positions lo..hi-1
        res = empty
        lo += self.n
        hi += self.n
        while lo < hi:
            if lo & 1:
                res = better(res, tree[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                res = better(res, tree[hi])
            lo //= 2
            hi //= 2
        return res

    def fits(self, a: int, b: int) -> bool:
        if b - a < 2:
            return True
        if self._query(self.right, a + 1, b, max, -1) > b:
            return False
        return self._query(self.left, a + 1, b, min, self.n) >= a

    def add(self, a: int, b: int) -> None:
        self._set(self.right, a, b, max)
        self._set(self.left, b, a, min)


def repair_pages(
    pos: dict[int, int],
    page: dict[Edge, int],
    pools: dict[int, list[int]],
    priority: dict[Edge, int] | None = None,
    ops: OpCounter | None = None,
) -> tuple[dict[Edge, int], int]:
    """Re-page twisting edges; returns the new assignment and the number moved.

    Edges are inserted in priority order (then by span) into their current
    page when that stays twist-free, else into the first page of its pool
    that accepts them, else into a fresh page. ``pools`` maps each page id
    to the ordered list of pages its edges may fall back to.
    """
    ops = ops or OpCounter()
    priority = priority or {}
    size = max(pos.values(), default=0) + 1
    index: dict[int, PageIndex] = {}
    fresh = max(list(page.values()) + [p for ps in pools.values() for p in ps], default=-1) + 1
    out: dict[Edge, int] = {}
    opened: list[int] = []  # fresh pages, open to every edge
    moved = 0

    def span(e: Edge) -> tuple[int, int]:
        a, b = pos[e[0]], pos[e[1]]
        return (a, b) if a < b else (b, a)

    for e in sorted(page, key=lambda e: (priority.get(e, 0), span(e)[1] - span(e)[0], span(e), e)):
        ops.tick()
        a, b = span(e)
        home = page[e]
        for p in [home] + [q for q in pools.get(home, ()) if q != home] + opened:
            idx = index.get(p)
            if idx is None:
                idx = index[p] = PageIndex(size)
            if idx.fits(a, b):
                break
        else:
            p = fresh
            fresh += 1
            opened.append(p)
            idx = index[p] = PageIndex(size)
        idx.add(a, b)
        out[e] = p
        moved += p != home
    return out, moved


def squeeze_pages(
    pos: dict[int, int],
    page: dict[Edge, int],
    ops: OpCounter | None = None,
) -> tuple[dict[Edge, int], int]:
    """Try to empty pages by spreading their edges over the others.

    Smallest pages are tried first; a page is dropped only when every one
    of its edges fits somewhere else. Returns the assignment and the number
    of pages removed.
    """
    ops = ops or OpCounter()
    size = max(pos.values(), default=0) + 1
    page = dict(page)
    removed = 0

    def span(e: Edge) -> tuple[int, int]:
        a, b = pos[e[0]], pos[e[1]]
        return (a, b) if a < b else (b, a)

    members: dict[int, list[Edge]] = {}
    for e, p in page.items():
        members.setdefault(p, []).append(e)
    index: dict[int, PageIndex] = {}
    for p in sorted(members):
        idx = index[p] = PageIndex(size)
        for e in members[p]:
            ops.tick()
            idx.add(*span(e))

    progress = True
    while progress:
        progress = False
        for victim in sorted(members, key=lambda p: (len(members[p]), p)):
            dests = [p for p in sorted(index) if p != victim]
            for p in dests:
                index[p].begin()
            moves = {}
            for e in sorted(members[victim], key=lambda e: (span(e)[0] - span(e)[1], span(e))):
                ops.tick()
                a, b = span(e)
                dest = next((p for p in dests if index[p].fits(a, b)), None)
                if dest is None:
                    break
                index[dest].add(a, b)
                moves[e] = dest
            else:
                for p in dests:
                    index[p].commit()
                for e, p in moves.items():
                    page[e] = p
                    members[p].append(e)
                del members[victim], index[victim]
                removed += 1
                progress = True
                break
            for p in dests:
                index[p].rollback()
    return page, removed
