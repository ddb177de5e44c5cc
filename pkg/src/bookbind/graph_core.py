"""Embedded multigraphs with rotation systems, face tracing and blocks.

Half-edge ``2*e`` runs from the first endpoint of edge ``e`` to the second,
``2*e + 1`` runs back; the twin of ``h`` is therefore ``h ^ 1``. Rotations
list the outgoing half-edges of each vertex in counter-clockwise order.
Faces are traced with the face on the left of every half-edge, using
``next(h) = rotation-predecessor of twin(h)`` at the head of ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import EulerViolation


def twin(h: int) -> int:
    return h ^ 1


class EmbeddedMultigraph:
    """A combinatorial embedding of an undirected multigraph.

    ``edges[e] = (u, v)`` and ``labels[e]`` is free-form provenance (for a
    skeleton it is the 2-point that produced the edge). ``rotation[v]`` is
    the ccw cyclic order of outgoing half-edges at ``v``.
    """

    __slots__ = ("n", "edges", "labels", "rotation", "head", "_pos", "_outer_half")

    def __init__(
        self,
        n: int,
        edges: Sequence[tuple[int, int]],
        rotation: Sequence[Sequence[int]],
        labels: Sequence[Hashable] | None = None,
        outer_half: int | None = None,
    ):
        self.n = n
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        self.labels = tuple(labels) if labels is not None else tuple(range(len(edges)))
        self.rotation = tuple(tuple(r) for r in rotation)
        head = [0] * (2 * len(self.edges))
        for e, (u, v) in enumerate(self.edges):
            head[2 * e] = v
            head[2 * e + 1] = u
        self.head = tuple(head)
        pos = [-1] * len(head)
        for v, rot in enumerate(self.rotation):
            for i, h in enumerate(rot):
                if self.tail(h) != v or pos[h] != -1:
                    raise ValueError(f"half-edge {h} misplaced in rotation of {v}")
                pos[h] = i
        if -1 in pos:
            raise ValueError(f"half-edge {pos.index(-1)} missing from rotations")
        self._pos = tuple(pos)
        self._outer_half = outer_half

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def outer_half(self) -> int | None:
        """A half-edge on the designated outer face, if one was given."""
        return self._outer_half

    def tail(self, h: int) -> int:
        return self.head[h ^ 1]

    def succ(self, h: int) -> int:
        rot = self.rotation[self.tail(h)]
        return rot[(self._pos[h] + 1) % len(rot)]

    def pred(self, h: int) -> int:
        rot = self.rotation[self.tail(h)]
        return rot[self._pos[h] - 1]

    def face_next(self, h: int) -> int:
        return self.pred(h ^ 1)

    def position(self, h: int) -> int:
        return self._pos[h]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.head[h] for h in self.rotation[v]]

    def with_outer(self, outer_half: int) -> "EmbeddedMultigraph":
        return EmbeddedMultigraph(self.n, self.edges, self.rotation, self.labels, outer_half)

    @classmethod
    def from_neighbor_rotation(
        cls, n: int, rot: Sequence[Sequence[int]], outer: tuple[int, int] | None = None
    ) -> "EmbeddedMultigraph":
        """Build a simple embedded graph from ccw neighbour lists."""
        edges: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for u in range(n):
            for v in rot[u]:
                if u < v:
                    index[(u, v)] = len(edges)
                    edges.append((u, v))
        rotation = []
        for u in range(n):
            hs = []
            for v in rot[u]:
                e = index[(min(u, v), max(u, v))]
                hs.append(2 * e if u < v else 2 * e + 1)
            rotation.append(hs)
        outer_half = None
        if outer is not None:
            u, v = outer
            e = index[(min(u, v), max(u, v))]
            outer_half = 2 * e if u < v else 2 * e + 1
        return cls(n, edges, rotation, outer_half=outer_half)


@dataclass(frozen=True)
class FaceRecord:
    id: int
    half_edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(set(self.vertices))

    @property
    def length(self) -> int:
        return len(self.half_edges)


@dataclass(frozen=True)
class EulerReport:
    components: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return all(v - e + f == 2 for v, e, f in self.components)

    def first_failure(self) -> tuple[int, tuple[int, int, int]] | None:
        for i, c in enumerate(self.components):
            if c[0] - c[1] + c[2] != 2:
                return i, c
        return None


@dataclass
class Faces:
    """Result of face tracing: records plus the half-edge to face map."""

    records: list[FaceRecord]
    face_of: list[int]
    outer: int

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i: int) -> FaceRecord:
        return self.records[i]


def trace_faces(g: EmbeddedMultigraph, check: bool = True) -> Faces:
    face_of = [-1] * (2 * g.m)
    records: list[FaceRecord] = []
    for start in range(2 * g.m):
        if face_of[start] != -1:
            continue
        fid = len(records)
        walk = []
        h = start
        while face_of[h] == -1:
            face_of[h] = fid
            walk.append(h)
            h = g.face_next(h)
        if h != start:
            raise ValueError("face walk did not close; rotation is corrupt")
        records.append(FaceRecord(fid, tuple(walk), tuple(g.tail(x) for x in walk)))
    if g.outer_half is not None:
        outer = face_of[g.outer_half]
    elif records:
        # largest face wins, ties to the smallest id
        outer = max(records, key=lambda f: (f.degree, -f.id)).id
    else:
        outer = -1
    faces = Faces(records, face_of, outer)
    if check:
        report = euler_check(g, faces)
        bad = report.first_failure()
        if bad is not None:
            i, (v, e, f) = bad
            raise EulerViolation(v, e, f, i)
    return faces


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return [find(x) for x in range(n)]


def euler_check(g: EmbeddedMultigraph, faces: Faces | Sequence[FaceRecord]) -> EulerReport:
    records = faces.records if isinstance(faces, Faces) else list(faces)
    comp = _components(g.n, g.edges)
    roots = sorted(set(comp))
    idx = {r: i for i, r in enumerate(roots)}
    counts = [[0, 0, 0] for _ in roots]
    for v in range(g.n):
        counts[idx[comp[v]]][0] += 1
    for u, _ in g.edges:
        counts[idx[comp[u]]][1] += 1
    for f in records:
        counts[idx[comp[g.tail(f.half_edges[0])]]][2] += 1
    for c in counts:
        if c[1] == 0:
            c[2] = 1  # an isolated vertex sits in one face
    return EulerReport(tuple(tuple(c) for c in counts))


@dataclass
class Block:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return len(self.vertices) <= 2 and len(self.edges) <= 1


@dataclass
class BlockCutForest:
    blocks: list[Block]
    cut_vertices: set[int]
    # block index -> cut vertices it contains, and the reverse
    block_cuts: list[list[int]] = field(default_factory=list)
    cut_blocks: dict[int, list[int]] = field(default_factory=dict)
    blocks_of: dict[int, list[int]] = field(default_factory=dict)


def block_cut_decompose(
    vertices: Iterable[int], edges: Sequence[tuple[int, int, int]]
) -> BlockCutForest:
    """Blocks of the multigraph given by ``(edge_id, u, v)`` triples.

    Parallel edges form a 2-cycle block. Vertices without edges become
    trivial single-vertex blocks.
    """
    verts = sorted(set(vertices))
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for eid, u, v in edges:
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[Block] = []
    stack: list[tuple[int, int, int]] = []
    t = 0
    for root in verts:
        if root in disc:
            continue
        if not adj[root]:
            disc[root] = low[root] = t
            t += 1
            blocks.append(Block((root,), ()))
            continue
        disc[root] = low[root] = t
        t += 1
        work = [(root, -1, iter(adj[root]))]
        while work:
            v, pe, it = work[-1]
            advanced = False
            for w, eid in it:
                if eid == pe:
                    continue
                if w not in disc:
                    stack.append((eid, v, w))
                    disc[w] = low[w] = t
                    t += 1
                    work.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack.append((eid, v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    es: list[int] = []
                    vs: dict[int, None] = {}
                    while True:
                        eid, a, b = stack.pop()
                        es.append(eid)
                        vs[a] = None
                        vs[b] = None
                        if eid == pe:
                            break
                    blocks.append(Block(tuple(sorted(vs)), tuple(sorted(es))))
    blocks_of: dict[int, list[int]] = {v: [] for v in verts}
    for i, b in enumerate(blocks):
        for v in b.vertices:
            blocks_of[v].append(i)
    cuts = {v for v, bs in blocks_of.items() if len(bs) > 1}
    block_cuts = [[v for v in b.vertices if v in cuts] for b in blocks]
    cut_blocks = {v: list(blocks_of[v]) for v in sorted(cuts)}
    return BlockCutForest(blocks, cuts, block_cuts, cut_blocks, blocks_of)
