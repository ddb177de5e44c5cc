"""Witnesses W = (V, P, L): parsing, half-square, normal form, skeleton.

A witness is a plane bipartite graph between graph-vertices ``0..n-1`` and
points. Internally the bipartite graph is a node graph in which vertex
``v`` is node ``v`` and point ``p`` is node ``n + rank(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .counters import OpCounter
from .errors import (
    BipartitenessViolation,
    DegreeViolation,
    MalformedFace,
    ParseError,
)
from .graph_core import EmbeddedMultigraph, Faces, trace_faces


@dataclass(frozen=True)
class Witness:
    k: int
    n: int
    points: dict[int, tuple[int, ...]]  # point id -> ccw vertex rotation
    rot: dict[int, tuple[int, ...]]  # vertex id -> ccw point rotation
    outer: tuple[int, ...] | None = None  # alternating v p v p ... walk

    @property
    def num_links(self) -> int:
        return sum(len(vs) for vs in self.points.values())

    def node_graph(self) -> tuple[EmbeddedMultigraph, list[int]]:
        """The bipartite witness as an embedded graph over nodes.

        Returns the graph and the list mapping node index to id: vertices
        map to themselves, points to their point id.
        """
        pids = sorted(self.points)
        node_of = {p: self.n + i for i, p in enumerate(pids)}
        ids = list(range(self.n)) + pids
        edges: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for p in pids:
            for v in self.points[p]:
                index[(v, p)] = len(edges)
                edges.append((v, node_of[p]))
        rotation: list[list[int]] = [[] for _ in ids]
        for v in range(self.n):
            rotation[v] = [2 * index[(v, p)] for p in self.rot.get(v, ())]
        for p in pids:
            rotation[node_of[p]] = [2 * index[(v, p)] + 1 for v in self.points[p]]
        outer_half = None
        if self.outer:
            v, p = self.outer[0], self.outer[1]
            outer_half = 2 * index[(v, p)]
        return EmbeddedMultigraph(len(ids), edges, rotation, outer_half=outer_half), ids

    def faces(self) -> tuple[EmbeddedMultigraph, Faces, list[int]]:
        g, ids = self.node_graph()
        return g, trace_faces(g), ids


@dataclass(frozen=True)
class MapGraph:
    n: int
    edges: dict[tuple[int, int], tuple[int, ...]]  # (u, v), u < v -> points

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)


def _ints(tokens: list[str], lineno: int, line: str) -> list[int]:
    out = []
    for t in tokens:
        if not t.isdigit():
            raise ParseError(f"expected a non-negative integer, got {t!r}", lineno, line.find(t) + 1)
        out.append(int(t))
    return out


def parse_witness(text: str) -> Witness:
    lines = text.splitlines()
    header_seen = False
    k = n = 0
    points: dict[int, tuple[int, ...]] = {}
    rot: dict[int, tuple[int, ...]] = {}
    outer: tuple[int, ...] | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        kw = tokens[0]
        if not header_seen:
            if kw != "WITNESS":
                raise ParseError("first line must be 'WITNESS k=<int> n=<int>'", lineno, 1)
            fields = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
            try:
                k, n = int(fields["k"]), int(fields["n"])
            except (KeyError, ValueError):
                raise ParseError("header needs integer k= and n=", lineno, 1) from None
            header_seen = True
            continue
        if kw == "P":
            ids = _ints(tokens[1:], lineno, line)
            if len(ids) < 2:
                raise ParseError("P line needs a point id", lineno, 1)
            pid, vs = ids[0], tuple(ids[1:])
            if pid in points:
                raise ParseError(f"point {pid} declared twice", lineno, 1)
            for v in vs:
                if v >= n:
                    raise BipartitenessViolation(f"line {lineno}: point {pid} links non-vertex id {v}")
            if len(set(vs)) != len(vs):
                raise ParseError(f"point {pid} links a vertex twice", lineno, 1)
            points[pid] = vs
        elif kw == "ROT":
            ids = _ints(tokens[1:], lineno, line)
            if not ids:
                raise ParseError("ROT line needs a vertex id", lineno, 1)
            vid, ps = ids[0], tuple(ids[1:])
            if vid >= n:
                raise ParseError(f"vertex id {vid} out of range", lineno, 1)
            if vid in rot:
                raise ParseError(f"vertex {vid} rotated twice", lineno, 1)
            rot[vid] = ps
        elif kw == "OUTER":
            outer = tuple(_ints(tokens[1:], lineno, line))
            if len(outer) < 2 or len(outer) % 2:
                raise ParseError("OUTER walk must alternate vertex and point ids", lineno, 1)
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, 1)
    if not header_seen:
        raise ParseError("empty witness file", 1, 1)
    for vid, ps in rot.items():
        for p in ps:
            if p not in points:
                raise BipartitenessViolation(f"vertex {vid} links non-point id {p}")
            if vid not in points[p]:
                raise ParseError(f"link {vid}-{p} missing from P {p}", 0, 0)
        if len(set(ps)) != len(ps):
            raise ParseError(f"vertex {vid} links point twice", 0, 0)
    for p, vs in points.items():
        for v in vs:
            if p not in rot.get(v, ()):
                raise ParseError(f"link {v}-{p} missing from ROT {v}", 0, 0)
    w = Witness(k, n, points, rot, outer)
    validate_witness(w)
    return w


def validate_witness(w: Witness) -> Faces:
    for p in sorted(w.points):
        d = len(w.points[p])
        if d > w.k or d < 2:
            raise DegreeViolation(p, d, w.k)
    g, ids = w.node_graph()
    faces = trace_faces(g)  # raises EulerViolation
    if w.outer is not None:
        _check_outer(w, g, faces, ids)
    return faces


def _check_outer(w: Witness, g: EmbeddedMultigraph, faces: Faces, ids: list[int]) -> None:
    f = faces[faces.outer]
    walk = [ids[x] for x in f.vertices]
    target = list(w.outer)
    if len(walk) != len(target):
        raise ParseError("OUTER walk does not match a face of the witness", 0, 0)
    for s in range(len(walk)):
        if walk[s:] + walk[:s] == target:
            return
    raise ParseError("OUTER walk does not match a face of the witness", 0, 0)


def format_witness(w: Witness) -> str:
    out = [f"WITNESS k={w.k} n={w.n}"]
    for p in sorted(w.points):
        out.append("P " + " ".join(map(str, (p, *w.points[p]))))
    for v in sorted(w.rot):
        out.append("ROT " + " ".join(map(str, (v, *w.rot[v]))))
    if w.outer:
        out.append("OUTER " + " ".join(map(str, w.outer)))
    return "\n".join(out) + "\n"


def half_square(w: Witness) -> MapGraph:
    edges: dict[tuple[int, int], list[int]] = {}
    for p in sorted(w.points):
        vs = sorted(w.points[p])
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                edges.setdefault((u, v), []).append(p)
    return MapGraph(w.n, {e: tuple(ps) for e, ps in sorted(edges.items())})


# ---------------------------------------------------------------------------
# planar-maximal augmentation


class _MutableWitness:
    """Rotation lists keyed by node name: ``("v", id)`` or ``("p", id)``."""

    def __init__(self, w: Witness, ops: OpCounter):
        self.n = w.n
        self.k = w.k
        self.ops = ops
        self.rot: dict[tuple[str, int], list[tuple[str, int]]] = {}
        for v in range(w.n):
            self.rot[("v", v)] = [("p", p) for p in w.rot.get(v, ())]
        for p, vs in w.points.items():
            self.rot[("p", p)] = [("v", v) for v in vs]
        self.next_pid = max([w.n - 1, *w.points]) + 1
        self.outer: tuple | None = None
        if w.outer:
            self.outer = (("v", w.outer[0]), ("p", w.outer[1]))
        else:
            g, faces, ids = w.faces()
            if len(faces):
                h = faces[faces.outer].half_edges[0]
                a, b = g.tail(h), g.head[h]
                na = ("v", ids[a]) if a < w.n else ("p", ids[a])
                nb = ("v", ids[b]) if b < w.n else ("p", ids[b])
                self.outer = (na, nb)

    def pred(self, x, y):
        """Neighbour before ``y`` in the ccw rotation at ``x``."""
        r = self.rot[x]
        return r[r.index(y) - 1]

    def step(self, a, b):
        self.ops.tick()
        return b, self.pred(b, a)

    def walk(self, a, b, limit: int | None = None) -> list:
        """Node sequence of the face left of half-edge a->b."""
        seq = [a]
        x, y = a, b
        while True:
            x, y = self.step(x, y)
            if (x, y) == (a, b):
                return seq
            seq.append(x)
            if limit is not None and len(seq) > limit:
                return seq

    def new_point(self):
        p = ("p", self.next_pid)
        self.next_pid += 1
        return p

    def insert_after(self, x, anchor, new) -> None:
        r = self.rot[x]
        r.insert(r.index(anchor) + 1, new)
        self.ops.tick(len(r))

    def is_two_point(self, x) -> bool:
        return x[0] == "p" and len(self.rot[x]) == 2

    def freeze(self) -> Witness:
        points = {x[1]: tuple(v[1] for v in r) for x, r in self.rot.items() if x[0] == "p"}
        rot = {x[1]: tuple(p[1] for p in r) for x, r in self.rot.items() if x[0] == "v"}
        outer = None
        if self.outer is not None:
            a, b = self.outer
            if a[0] != "v":
                a, b = b, self.pred(b, a)  # step to a vertex-first half-edge
            walk = self.walk(a, b)
            outer = tuple(x[1] for x in walk)
        return Witness(self.k, self.n, dict(sorted(points.items())), dict(sorted(rot.items())), outer)


def augment_planar_maximal(w: Witness, ops: OpCounter | None = None) -> Witness:
    ops = ops or OpCounter()
    mw = _MutableWitness(w, ops)
    _split_large_faces(mw)
    _add_wedge_points(mw)
    _merge_duplicates(mw)
    return mw.freeze()


def _all_faces(mw: _MutableWitness) -> list[list]:
    seen: set = set()
    faces = []
    for x in sorted(mw.rot):
        for y in mw.rot[x]:
            if (x, y) in seen:
                continue
            walk = mw.walk(x, y)
            for i, a in enumerate(walk):
                seen.add((a, walk[(i + 1) % len(walk)]))
            faces.append(walk)
    return faces


def _split_large_faces(mw: _MutableWitness) -> None:
    for walk in _all_faces(mw):
        if len(walk) % 2:
            raise MalformedFace(f"odd face walk of length {len(walk)}: {walk[:8]}...")
        if len(walk) < 8:
            continue
        verts = [x for x in walk if x[0] == "v"]
        single = [x for x in verts if verts.count(x) == 1]
        if not single:
            raise MalformedFace(f"face of length {len(walk)} has no simple apex")
        apex = min(single)
        s = walk.index(apex)
        x = walk[s:] + walk[:s]
        L = len(x)
        # fan of 2-paths from the apex to every third-or-later vertex slot
        anchor = x[1]
        for j in range(4, L - 3, 2):
            target = x[j]
            p = mw.new_point()
            mw.rot[p] = [apex, target]
            mw.insert_after(apex, anchor, p)
            anchor = p
            mw.insert_after(target, x[j + 1], p)


def _add_wedge_points(mw: _MutableWitness) -> None:
    for x in sorted(mw.rot):
        if x[0] != "p" or len(mw.rot[x]) < 3:
            continue
        for a in list(mw.rot[x]):
            b = mw.pred(x, a)
            quad = mw.walk(x, b, limit=4)
            if len(quad) == 4 and quad[3] == a and mw.is_two_point(quad[2]):
                continue
            p = mw.new_point()
            mw.rot[p] = [b, a]
            mw.insert_after(b, quad[2], p)  # at b: [y, p, x]
            mw.insert_after(a, x, p)  # at a: [x, p, z] for the walk z -> a -> x
            if mw.outer in ((a, x), (x, b)):
                mw.outer = (a, p)


def _merge_duplicates(mw: _MutableWitness) -> None:
    changed = True
    while changed:
        changed = False
        for x in sorted(mw.rot):
            if not mw.is_two_point(x):
                continue
            for u in list(mw.rot[x]):
                quad = mw.walk(x, u, limit=4)
                if len(quad) != 4:
                    continue
                _, _, q, v = quad
                if q == x or not mw.is_two_point(q) or quad[1][0] != "v" or v[0] != "v":
                    continue
                # quad (x, u, q, v): drop the larger 2-point
                keep, drop = (x, q) if x < q else (q, x)
                if mw.outer is not None and drop in mw.outer:
                    a = mw.outer[0] if mw.outer[0][0] == "v" else mw.outer[1]
                    mw.outer = (a, keep)
                for y in mw.rot[drop]:
                    mw.rot[y].remove(drop)
                    mw.ops.tick()
                del mw.rot[drop]
                changed = True
                break
            if changed:
                break


def is_planar_maximal(w: Witness) -> bool:
    g, faces, ids = w.faces()
    for f in faces:
        if f.length not in (4, 6):
            return False
        pts = [x for x in f.vertices if x >= w.n]
        if f.length == 4 and all(len(w.points[ids[x]]) == 2 for x in pts):
            return False
    two = {}
    for p, vs in w.points.items():
        if len(vs) == 2:
            two.setdefault(tuple(sorted(vs)), []).append(p)
    for p, vs in w.points.items():
        if len(vs) >= 3:
            for i in range(len(vs)):
                if tuple(sorted((vs[i - 1], vs[i]))) not in two:
                    return False
    return True


# ---------------------------------------------------------------------------
# planar skeleton


@dataclass
class SkeletonComplex:
    """Planar skeleton plus the clique carried by each face.

    ``clique[f]`` is the vertex set of K(f): the neighbours of the point
    inside face ``f`` or the three corners of a pointless triangle. The
    outer face keeps its clique too; leveling decides how to treat it.
    """

    k: int
    graph: EmbeddedMultigraph
    faces: Faces
    face_point: list[int | None]
    clique: list[tuple[int, ...]]
    separation_pairs: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def outer(self) -> int:
        return self.faces.outer

    def simple_edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v in self.graph.edges}

    def map_edges(self) -> set[tuple[int, int]]:
        es = self.simple_edges()
        for vs in self.clique:
            s = sorted(vs)
            for i, u in enumerate(s):
                for v in s[i + 1:]:
                    es.add((u, v))
        return es

    def inner_components(self, pair: tuple[int, int]) -> list[list[int]]:
        """Components of the skeleton minus a separation pair, sorted."""
        s, t = pair
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self.graph.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {s, t}
        comps = []
        for r in range(self.n):
            if r in seen:
                continue
            comp, stack = [], [r]
            seen.add(r)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps


def planar_skeleton(w: Witness, ops: OpCounter | None = None) -> SkeletonComplex:
    ops = ops or OpCounter()
    wg, wfaces, ids = w.faces()
    n = w.n
    two = [p for p in sorted(w.points) if len(w.points[p]) == 2]
    edge_of = {p: i for i, p in enumerate(two)}
    edges = [(w.points[p][0], w.points[p][1]) for p in two]
    rotation = []
    for v in range(n):
        hs = []
        for p in w.rot.get(v, ()):
            if p in edge_of:
                e = edge_of[p]
                hs.append(2 * e if edges[e][0] == v else 2 * e + 1)
            ops.tick()
        rotation.append(hs)

    def skel_half(v: int, p: int) -> int:
        e = edge_of[p]
        return 2 * e if edges[e][0] == v else 2 * e + 1

    outer_half = None
    if w.outer:
        walk = list(w.outer)
        for i in range(0, len(walk), 2):
            v, p = walk[i], walk[i + 1]
            if p in edge_of:
                outer_half = skel_half(v, p)
                break
    g = EmbeddedMultigraph(n, edges, rotation, labels=two, outer_half=outer_half)
    faces = trace_faces(g)
    face_point: list[int | None] = [None] * len(faces)
    clique: list[tuple[int, ...]] = [tuple(sorted(set(f.vertices))) for f in faces]
    for p in sorted(w.points):
        vs = w.points[p]
        if len(vs) < 3:
            continue
        # wedge quad (p, b, p', a) with b the neighbour before a at p
        a, b = vs[0], vs[-1]
        rb = w.rot[b]
        p2 = rb[rb.index(p) - 1]
        if p2 not in edge_of:
            raise MalformedFace(f"point {p} lacks a wedge 2-point between {b} and {a}")
        f = faces.face_of[skel_half(b, p2)]
        if face_point[f] is not None:
            raise MalformedFace(f"face {f} holds points {face_point[f]} and {p}")
        if set(vs) != set(faces[f].vertices):
            raise MalformedFace(f"point {p} does not span the skeleton face around it")
        face_point[f] = p
        clique[f] = tuple(sorted(vs))
        ops.tick(len(vs))
    for f in faces:
        if face_point[f.id] is None and f.id != faces.outer and f.degree != 3:
            raise MalformedFace(f"pointless skeleton face {f.id} of degree {f.degree}")
    pairs: dict[tuple[int, int], list[int]] = {}
    for e, (u, v) in enumerate(edges):
        pairs.setdefault((min(u, v), max(u, v)), []).append(e)
    seps = {pq: es for pq, es in sorted(pairs.items()) if len(es) > 1}
    return SkeletonComplex(w.k, g, faces, face_point, clique, seps)


def map_graph_edges(sk: SkeletonComplex) -> set[tuple[int, int]]:
    return sk.map_edges()


def iter_clique_edges(vs: Iterable[int]):
    s = sorted(vs)
    for i, u in enumerate(s):
        for v in s[i + 1:]:
            yield u, v
