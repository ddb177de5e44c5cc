"""Deterministic witness generators.

All generators go through :func:`witness_from_embedding`: subdivide every
edge of an embedded planar skeleton by a 2-point and put a d-point into each
inner d-face. The hamantasch is built directly since it has no 2-points.
"""

from __future__ import annotations

import random

from .errors import OddK
from .graph_core import EmbeddedMultigraph, trace_faces
from .witness import Witness, validate_witness


def witness_from_embedding(g: EmbeddedMultigraph, k: int) -> Witness:
    faces = trace_faces(g)
    n = g.n
    two_pid = {e: n + e for e in range(g.m)}
    next_pid = n + g.m
    face_pid: dict[int, int] = {}
    points: dict[int, tuple[int, ...]] = {}
    for e, (u, v) in enumerate(g.edges):
        points[two_pid[e]] = (u, v)
    for f in faces:
        if f.id == faces.outer:
            continue
        if len(set(f.vertices)) != len(f.vertices):
            raise ValueError(f"face {f.id} is not a simple cycle")
        face_pid[f.id] = next_pid
        points[next_pid] = f.vertices
        next_pid += 1
    rot: dict[int, tuple[int, ...]] = {}
    for v in range(n):
        seq: list[int] = []
        for h in g.rotation[v]:
            seq.append(two_pid[h >> 1])
            f = faces.face_of[h]
            if f in face_pid:
                seq.append(face_pid[f])
        rot[v] = tuple(seq)
    outer_face = faces[faces.outer]
    walk: list[int] = []
    for h in outer_face.half_edges:
        walk += [g.tail(h), two_pid[h >> 1]]
    w = Witness(k, n, dict(sorted(points.items())), rot, tuple(walk))
    validate_witness(w)
    return w


def gen_hamantasch(k: int) -> Witness:
    """Three k-points pairwise sharing k/2 vertices: a K_{3k/2} witness.

    Vertices ``0..h-1`` sit between points 1 and 2, ``h..2h-1`` between 1
    and 3, ``2h..3h-1`` between 2 and 3, each run ordered from the central
    face outwards (h = k/2).
    """
    if k % 2 or k < 2:
        raise OddK(f"hamantasch needs an even k >= 2, got {k}")
    h = k // 2
    n = 3 * h
    l12 = list(range(0, h))
    l13 = list(range(h, 2 * h))
    l23 = list(range(2 * h, 3 * h))
    p1, p2, p3 = n, n + 1, n + 2
    inward = lambda run: list(run)  # noqa: E731
    outward = lambda run: list(reversed(run))  # noqa: E731
    # ccw at each point: the lens to the next point outer-to-inner, then the
    # lens to the previous point inner-to-outer (points ccw: p1, p2, p3)
    points = {
        p1: tuple(outward(l12) + inward(l13)),
        p2: tuple(outward(l23) + inward(l12)),
        p3: tuple(outward(l13) + inward(l23)),
    }
    rot: dict[int, tuple[int, ...]] = {}
    for v in l12:
        rot[v] = (p1, p2)
    for v in l13:
        rot[v] = (p3, p1)
    for v in l23:
        rot[v] = (p2, p3)
    outer = (l12[-1], p2, l23[-1], p3, l13[-1], p1)
    w = Witness(k, n, points, dict(sorted(rot.items())), None)
    g, faces, ids = w.faces()
    # pick the face through all three outermost vertices, away from the centre
    want = {l12[-1], l13[-1], l23[-1], p1, p2, p3}
    cands = [f for f in faces if {ids[x] for x in f.vertices} == want]
    central = {l12[0], l13[0], l23[0], p1, p2, p3}
    if h == 1:
        f = cands[-1]
    else:
        f = next(f for f in cands if {ids[x] for x in f.vertices} != central)
    walk = [ids[x] for x in f.vertices]
    s = next(i for i, x in enumerate(walk) if x < n)
    outer = tuple(walk[s:] + walk[:s])
    w = Witness(k, n, points, dict(sorted(rot.items())), outer)
    validate_witness(w)
    return w


# ---------------------------------------------------------------------------
# random k-framed instances


class _Triangulation:
    """Oriented triangles keyed by directed edge: tri[(u, v)] = w for ccw (u, v, w)."""

    def __init__(self) -> None:
        self.tri: dict[tuple[int, int], int] = {}

    def add(self, a: int, b: int, c: int) -> None:
        self.tri[(a, b)] = c
        self.tri[(b, c)] = a
        self.tri[(c, a)] = b

    def remove(self, a: int, b: int, c: int) -> None:
        del self.tri[(a, b)], self.tri[(b, c)], self.tri[(c, a)]


def random_triangulation(n: int, rng: random.Random, flips: int | None = None):
    """Stacked triangulation on ``n`` vertices followed by random flips.

    Returns ccw neighbour lists and the outer face (0, 2, 1).
    """
    t = _Triangulation()
    t.add(0, 1, 2)
    inner = [(0, 1, 2)]
    for x in range(3, n):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        t.remove(a, b, c)
        inner[i] = (a, b, x)
        inner += [(b, c, x), (c, a, x)]
        t.add(a, b, x)
        t.add(b, c, x)
        t.add(c, a, x)
    deg = [0] * n
    for (u, _v) in t.tri:
        deg[u] += 1
    # the outer face (0, 2, 1) has no triangle entry
    outer_edges = {(0, 2), (2, 1), (1, 0), (2, 0), (1, 2), (0, 1)}
    if flips is None:
        flips = n
    keys = sorted(t.tri)
    for _ in range(flips):
        u, v = keys[rng.randrange(len(keys))]
        if (u, v) in outer_edges or (u, v) not in t.tri or (v, u) not in t.tri:
            continue
        a = t.tri[(u, v)]
        b = t.tri[(v, u)]
        if a == b or (a, b) in t.tri or (b, a) in t.tri or deg[u] <= 3 or deg[v] <= 3:
            continue
        t.remove(u, v, a)
        t.remove(v, u, b)
        t.add(a, u, b)
        t.add(b, v, a)
        deg[u] -= 1
        deg[v] -= 1
        deg[a] += 1
        deg[b] += 1
        keys.append((a, b))
    # ccw rotation at each vertex from the triangle fan around it
    succ: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for (u, v), w in t.tri.items():
        succ[u][v] = w  # around u, v is followed ccw by w
    succ[0][2] = 1  # close the fans through the outer face (0, 2, 1)
    succ[1][0] = 2
    succ[2][1] = 0
    rot = []
    for v in range(n):
        start = min(succ[v])
        seq = [start]
        while succ[v][seq[-1]] != start:
            seq.append(succ[v][seq[-1]])
        rot.append(seq)
    return rot, (0, 2)


def gen_kframed_random(k: int, n: int, seed: int) -> Witness:
    """Random planar triangulation with faces merged up to degree k."""
    if k < 3 or n < 4:
        raise ValueError("need k >= 3 and n >= 4")
    rng = random.Random(f"kframed:{k}:{n}:{seed}")
    rot, (a, b) = random_triangulation(n, rng)
    g = EmbeddedMultigraph.from_neighbor_rotation(n, rot, outer=(a, b))
    if k > 3:
        g = _merge_faces(g, k, rng)
    return witness_from_embedding(g, k)


def _merge_faces(g: EmbeddedMultigraph, k: int, rng: random.Random) -> EmbeddedMultigraph:
    faces = trace_faces(g)
    outer = faces.outer
    # union-find over faces; a merged face is described by its vertex set
    parent = list(range(len(faces)))
    verts = [set(f.vertices) for f in faces]
    deleted: set[int] = set()

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = list(range(g.m))
    rng.shuffle(order)
    deg = [g.degree(v) for v in range(g.n)]
    for e in order:
        fa, fb = find(faces.face_of[2 * e]), find(faces.face_of[2 * e + 1])
        if fa == fb or outer in (fa, fb):
            continue
        u, v = g.edges[e]
        if deg[u] <= 2 or deg[v] <= 2:
            continue
        if verts[fa] & verts[fb] != {u, v}:
            continue
        if len(verts[fa]) + len(verts[fb]) - 2 > k:
            continue
        if rng.random() < 0.25:
            continue
        deleted.add(e)
        deg[u] -= 1
        deg[v] -= 1
        parent[fb] = fa
        verts[fa] |= verts[fb]
    keep = [e for e in range(g.m) if e not in deleted]
    new_id = {e: i for i, e in enumerate(keep)}
    edges = [g.edges[e] for e in keep]
    rotation = [[2 * new_id[h >> 1] + (h & 1) for h in g.rotation[v] if (h >> 1) in new_id] for v in range(g.n)]
    oh = g.outer_half
    return EmbeddedMultigraph(g.n, edges, rotation, outer_half=2 * new_id[oh >> 1] + (oh & 1))


# ---------------------------------------------------------------------------
# separation-pair bubbles


class _Builder:
    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = []

    def edge(self, u: int, v: int) -> int:
        self.edges.append((u, v))
        return len(self.edges) - 1

    @staticmethod
    def out(e: int, edges, v: int) -> int:
        return 2 * e if edges[e][0] == v else 2 * e + 1


def gen_bubble(r: int, seed: int, pair: str = "inner") -> Witness:
    """Separation pair {s, t} with ``r`` inner components between r+1 copies of st.

    ``pair="inner"`` puts t inside the outer triangle so that {s, t} pairs
    an outer with an inner vertex (the placeholder case); ``pair="outer"``
    uses two outer vertices.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    rng = random.Random(f"bubble:{r}:{seed}:{pair}")
    sizes = [rng.randint(1, 3) for _ in range(r)]
    merge = rng.random() < 0.5
    x, y, z, t = 0, 1, 2, 3
    n = 4 + sum(sizes)
    runs: list[list[int]] = []
    nxt = 4
    for m in sizes:
        runs.append(list(range(nxt, nxt + m)))
        nxt += m
    b = _Builder()
    E = b.edge
    if pair == "inner":
        g = _bubble_inner(b, E, runs, merge, n)
    elif pair == "outer":
        g = _bubble_outer(b, E, runs, merge, n)
    else:
        raise ValueError(f"unknown pair kind {pair!r}")
    return witness_from_embedding(g, 4)


def _bubble_inner(b: _Builder, E, runs, merge: bool, n: int) -> EmbeddedMultigraph:
    x, y, z, t = 0, 1, 2, 3
    exy, eyz, ezx = E(x, y), E(y, z), E(z, x)
    ety = None if merge else E(t, y)
    etz = E(t, z)
    copies = [E(x, t) for _ in range(len(runs) + 1)]
    xw: dict[int, int] = {}
    tw: dict[int, int] = {}
    link: dict[tuple[int, int], int] = {}
    for run in runs:
        for w in run:
            xw[w] = E(x, w)
            tw[w] = E(t, w)
        for a, c in zip(run, run[1:]):
            link[(a, c)] = E(a, c)
    es = b.edges
    o = lambda e, v: _Builder.out(e, es, v)  # noqa: E731
    rot = [[] for _ in range(n)]
    # x: y, e0, run1, e1, ..., er, z  (ccw)
    rx = [o(exy, x), o(copies[0], x)]
    for i, run in enumerate(runs):
        rx += [o(xw[w], x) for w in run]
        rx.append(o(copies[i + 1], x))
    rx.append(o(ezx, x))
    rot[x] = rx
    # t: z, er, run_r reversed, ..., e0, y
    rt = [o(etz, t)]
    for i in range(len(runs), 0, -1):
        rt.append(o(copies[i], t))
        rt += [o(tw[w], t) for w in reversed(runs[i - 1])]
    rt.append(o(copies[0], t))
    if ety is not None:
        rt.append(o(ety, t))
    rot[t] = rt
    rot[y] = [o(eyz, y)] + ([o(ety, y)] if ety is not None else []) + [o(exy, y)]
    rot[z] = [o(ezx, z), o(etz, z), o(eyz, z)]
    for run in runs:
        for j, w in enumerate(run):
            rw = []
            if j + 1 < len(run):
                rw.append(o(link[(w, run[j + 1])], w))
            rw.append(o(xw[w], w))
            if j > 0:
                rw.append(o(link[(run[j - 1], w)], w))
            rw.append(o(tw[w], w))
            rot[w] = rw
    return EmbeddedMultigraph(n, es, rot, outer_half=o(exy, y))


def _bubble_outer(b: _Builder, E, runs, merge: bool, n: int) -> EmbeddedMultigraph:
    x, y, z, t = 0, 1, 2, 3
    copies = [E(x, y) for _ in range(len(runs) + 1)]
    eyz, ezx = E(y, z), E(z, x)
    etx, etz = E(t, x), E(t, z)
    ety = None if merge else E(t, y)
    xw: dict[int, int] = {}
    yw: dict[int, int] = {}
    link: dict[tuple[int, int], int] = {}
    for run in runs:
        for w in run:
            xw[w] = E(x, w)
            yw[w] = E(y, w)
        for a, c in zip(run, run[1:]):
            link[(a, c)] = E(a, c)
    es = b.edges
    o = lambda e, v: _Builder.out(e, es, v)  # noqa: E731
    rot = [[] for _ in range(n)]
    # x: e0, run1, e1, ..., er, t, z
    rx = [o(copies[0], x)]
    for i, run in enumerate(runs):
        rx += [o(xw[w], x) for w in run]
        rx.append(o(copies[i + 1], x))
    rx += [o(etx, x), o(ezx, x)]
    rot[x] = rx
    # y: z, t, er, run_r reversed, ..., e1, run1 reversed, e0
    ry = [o(eyz, y)]
    if ety is not None:
        ry.append(o(ety, y))
    for i in range(len(runs), 0, -1):
        ry.append(o(copies[i], y))
        ry += [o(yw[w], y) for w in reversed(runs[i - 1])]
    ry.append(o(copies[0], y))
    rot[y] = ry
    rot[t] = [o(etx, t)] + ([o(ety, t)] if ety is not None else []) + [o(etz, t)]
    rot[z] = [o(ezx, z), o(etz, z), o(eyz, z)]
    for run in runs:
        for j, w in enumerate(run):
            rw = [o(xw[w], w)]
            if j > 0:
                rw.append(o(link[(run[j - 1], w)], w))
            rw.append(o(yw[w], w))
            if j + 1 < len(run):
                rw.append(o(link[(w, run[j + 1])], w))
            rot[w] = rw
    return EmbeddedMultigraph(n, es, rot, outer_half=o(copies[0], y))
