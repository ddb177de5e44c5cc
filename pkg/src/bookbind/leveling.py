"""Peeling the skeleton into levels and 2-level graphs.

Every 2-level graph is processed in a canonical orientation: at even
levels the embedding is used as given, at odd levels it is mirrored, so
the same rules (outer cycle traversed with the graph's faces on the right,
blocks traversed with the graph's faces on the right) serve every level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counters import OpCounter
from .errors import NonSimpleOuterCycle, StructureError
from .graph_core import block_cut_decompose
from .witness import SkeletonComplex




class View:
    """Canonical-orientation accessors for one level parity."""

    def __init__(self, sk: SkeletonComplex, mirror: bool):
        self.g = sk.graph
        self.faces = sk.faces
        self.mirror = mirror

    def face(self, h: int) -> int:
        """Face on the left of half-edge ``h``."""
        return self.faces.face_of[h ^ 1] if self.mirror else self.faces.face_of[h]

    def walk(self, f: int) -> tuple[int, ...]:
        hs = self.faces[f].half_edges
        if self.mirror:
            return tuple(h ^ 1 for h in reversed(hs))
        return hs

    def rot(self, v: int) -> tuple[int, ...]:
        r = self.g.rotation[v]
        return tuple(reversed(r)) if self.mirror else r

    def tail(self, h: int) -> int:
        return self.g.tail(h)

    def head(self, h: int) -> int:
        return self.g.head[h]


@dataclass
class Leveling:
    level: list[int]
    face_min: list[int]  # least vertex level on each face, -1 for the outer face

    @property
    def depth(self) -> int:
        return max(self.level, default=-1) + 1

    def levels(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.depth)]
        for v, lv in enumerate(self.level):
            out[lv].append(v)
        return out


def peel(sk: SkeletonComplex, ops: OpCounter | None = None) -> Leveling:
    """Levels by repeated removal of the outer face's vertices.

    Equivalent to a breadth-first search on the vertex-face incidence graph
    from the outer face: a vertex at distance 2l+1 is at level l.
    """
    ops = ops or OpCounter()
    g, faces = sk.graph, sk.faces
    n = g.n
    level = [-1] * n
    face_min = [-1] * len(faces)
    seen_face = [False] * len(faces)
    frontier_faces = [faces.outer]
    seen_face[faces.outer] = True
    lv = 0
    while frontier_faces:
        new_vertices = []
        for f in frontier_faces:
            for v in faces[f].vertices:
                ops.tick()
                if level[v] == -1:
                    level[v] = lv
                    new_vertices.append(v)
        frontier_faces = []
        for v in new_vertices:
            for h in g.rotation[v]:
                ops.tick()
                f = faces.face_of[h]
                if not seen_face[f]:
                    seen_face[f] = True
                    face_min[f] = lv
                    frontier_faces.append(f)
        lv += 1
    for v in range(n):
        if level[v] == -1:
            level[v] = 0  # isolated vertex: its own outer face
    return Leveling(level, face_min)


# ---------------------------------------------------------------------------
# 2-level graphs


@dataclass
class BlockInfo:
    """A block of the interior in traversal order ``b0..bq`` (``b0`` is the leader).

    ``trav`` holds the traversal half-edges ``b_i -> b_{i+1}`` including the
    closing one; it is empty for single-vertex blocks and connectors.
    """

    id: int
    vertices: tuple[int, ...]
    trav: tuple[int, ...] = ()
    root: bool = False
    parent: int | None = None
    depth: int = 0
    connector: bool = False
    last_face: int = -1
    first_face: int = -1
    last_pos: float = 0.0  # position of the last edge in the last face's walk
    dominator: int = -1
    omega: int = -1
    pocket: bool = False  # hangs between its leader and a single outer vertex

    @property
    def leader(self) -> int:
        return self.vertices[0]

    @property
    def trivial(self) -> bool:
        return len({h >> 1 for h in self.trav}) <= 1


@dataclass
class FaceClass:
    face: int
    kind: str  # good | bad | attached
    bad_for: tuple[int, ...] = ()
    attached_to: int | None = None


@dataclass
class TwoLevelGraph:
    gid: int
    level: int
    mirror: bool
    faces: list[int]  # in face order
    cycle: list[int]  # outer cycle c0..ct
    pos: dict[int, int]
    alpha: dict[int, int]  # face -> first outer vertex
    walk: dict[int, tuple[int, ...]]  # face -> canonical walk from alpha (half-edges)
    face_key: dict[int, tuple[int, int]]
    cycle_edges: set[int]
    chords: set[int]
    binding: set[int]
    interior: set[int]
    inner: list[int]
    connectors: list[tuple[int, int, int]]  # (u, w, face)
    blocks: list[BlockInfo]
    assigned: dict[int, int]  # inner vertex -> block it is a non-leader of
    dominated: dict[int, list[int]]  # outer vertex -> block ids in order
    pockets: dict[int, list[int]] = field(default_factory=dict)  # leader -> pocket blocks
    classes: dict[int, FaceClass] = field(default_factory=dict)
    parent: int | None = None  # parent 2-level graph id
    parent_block: int | None = None  # block id in the parent whose interior this is
    children: dict[int, int] = field(default_factory=dict)  # block id -> child gid

    def face_vertices(self, sk: SkeletonComplex, f: int) -> tuple[int, ...]:
        return tuple(sk.graph.tail(h) for h in self.walk[f])

    def is_outer(self, v: int) -> bool:
        return v in self.pos

    def triangulation_edges(self, sk: SkeletonComplex) -> list[tuple[int, int, int]]:
        """Missing edges from each face's first outer vertex: ``(alpha, u, face)``."""
        adj = sk.simple_edges()
        out = []
        for f in self.faces:
            a = self.alpha[f]
            for u in self.face_vertices(sk, f)[2:-1]:
                if (min(a, u), max(a, u)) not in adj:
                    out.append((a, u, f))
        return out


def group_faces(sk: SkeletonComplex, lv: Leveling) -> list[list[int]]:
    """Faces of equal least level glued along shared edges; one group per 2-level graph."""
    faces = sk.faces
    parent = list(range(len(faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(sk.graph.m):
        f1, f2 = faces.face_of[2 * e], faces.face_of[2 * e + 1]
        if faces.outer in (f1, f2) or f1 == f2:
            continue
        if lv.face_min[f1] == lv.face_min[f2]:
            a, b = find(f1), find(f2)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for f in range(len(faces)):
        if f != faces.outer:
            groups.setdefault(find(f), []).append(f)
    return [groups[r] for r in sorted(groups, key=lambda r: (lv.face_min[r], r))]


def _outer_cycle(view: View, lv: Leveling, ell: int, in_h: set[int], c0: int | None):
    """Outer cycle in canonical order plus the walk half-edge leaving each cycle vertex backwards."""
    nxt: dict[int, int] = {}
    edges: set[int] = set()
    for f in in_h:
        for h in view.walk(f):
            a, b = view.tail(h), view.head(h)
            if lv.level[a] == ell and lv.level[b] == ell and view.face(h ^ 1) not in in_h:
                if b in nxt:
                    raise NonSimpleOuterCycle(f"vertex {b} appears twice on the outer cycle at level {ell}")
                nxt[b] = a
                edges.add(h >> 1)
    if not nxt:
        raise NonSimpleOuterCycle(f"no outer cycle at level {ell}")
    start = c0 if c0 is not None and c0 in nxt else min(nxt)
    cycle = [start]
    while nxt[cycle[-1]] != start:
        cycle.append(nxt[cycle[-1]])
        if len(cycle) > len(nxt):
            raise NonSimpleOuterCycle(f"outer cycle at level {ell} does not close")
    if len(cycle) != len(nxt):
        raise NonSimpleOuterCycle(f"outer cycle at level {ell} is not a single cycle")
    # walk half-edge c_i -> c_{i-1}, the start of the ccw sweep at c_i
    out_back: dict[int, int] = {}
    for f in in_h:
        for h in view.walk(f):
            if (h >> 1) in edges:
                a, b = view.tail(h), view.head(h)
                if nxt.get(b) == a:
                    out_back[a] = h
    return cycle, out_back, edges


def _runs(levels: list[int], ell: int) -> list[tuple[int, int]]:
    """Maximal runs (start, end index inclusive) of inner positions in a cyclic walk starting outer."""
    runs = []
    i, L = 0, len(levels)
    while i < L:
        if levels[i] == ell + 1:
            j = i
            while j + 1 < L and levels[j + 1] == ell + 1:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def build_two_level(
    sk: SkeletonComplex,
    lv: Leveling,
    gid: int,
    group: list[int],
    c0: int | None = None,
    ops: OpCounter | None = None,
) -> TwoLevelGraph:
    ops = ops or OpCounter()
    ell = lv.face_min[group[0]]
    view = View(sk, mirror=ell % 2 == 1)
    g = sk.graph
    level = lv.level
    in_h = set(group)
    cycle, out_back, cedges = _outer_cycle(view, lv, ell, in_h, c0)
    pos = {v: i for i, v in enumerate(cycle)}

    alpha: dict[int, int] = {}
    walk: dict[int, tuple[int, ...]] = {}
    for f in group:
        hs = view.walk(f)
        ops.tick(len(hs))
        best = min((pos[view.tail(h)], i) for i, h in enumerate(hs) if view.tail(h) in pos)[1]
        walk[f] = hs[best:] + hs[:best]
        alpha[f] = view.tail(hs[best])

    # faces are swept by the position of their first outer vertex, then ccw there
    face_key: dict[int, tuple[int, int]] = {}
    for v in cycle:
        r = view.rot(v)
        p0 = r.index(out_back[v])
        for i in range(len(r)):
            ops.tick()
            f = view.face(r[(p0 + i) % len(r)])
            if f in in_h and alpha[f] == v and f not in face_key:
                face_key[f] = (pos[v], i)
    order = sorted(group, key=face_key.__getitem__)

    chords: set[int] = set()
    binding: set[int] = set()
    interior: set[int] = set()
    inner_set: set[int] = set()
    for f in order:
        for h in walk[f]:
            a, b = view.tail(h), view.head(h)
            la, lb = level[a], level[b]
            if la not in (ell, ell + 1):
                raise NonSimpleOuterCycle(f"vertex {a} at level {la} in a level-{ell} face")
            if la == ell + 1:
                inner_set.add(a)
            e = h >> 1
            if la == lb == ell:
                if e not in cedges:
                    chords.add(e)
            elif la == lb:
                interior.add(e)
            else:
                binding.add(e)
    inner = sorted(inner_set)

    connectors: list[tuple[int, int, int]] = []
    for f in order:
        vs = [view.tail(h) for h in walk[f]]
        runs = _runs([level[v] for v in vs], ell)
        for j in range(len(runs) - 1):
            connectors.append((vs[runs[j][1]], vs[runs[j + 1][0]], f))

    triples = [(e, *g.edges[e]) for e in sorted(interior)]
    triples += [(g.m + i, u, w) for i, (u, w, _) in enumerate(connectors)]
    bc = block_cut_decompose(inner, triples)
    block_of_edge: dict[int, int] = {}
    for bi, b in enumerate(bc.blocks):
        for e in b.edges:
            block_of_edge[e] = bi
        if len(b.edges) > 1 and any(e >= g.m for e in b.edges):
            raise StructureError(f"connectors close a cycle in block {b.vertices}")

    # connected components of the interior together with the connectors
    comp: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in inner}
    for _, u, w in triples:
        adj[u].append(w)
        adj[w].append(u)
    for v in inner:
        if v in comp:
            continue
        comp[v] = v
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = v
                    stack.append(y)

    roots: list[tuple[int, int, int]] = []  # (leader, face, walk index)
    rooted: set[int] = set()
    for f in order:
        for i, h in enumerate(walk[f]):
            v = view.tail(h)
            if level[v] == ell + 1 and comp[v] not in rooted:
                rooted.add(comp[v])
                roots.append((v, f, i))

    infos: list[BlockInfo | None] = [None] * len(bc.blocks)
    assigned: dict[int, int] = {}

    def orient(bi: int, leader: int) -> BlockInfo:
        es = bc.blocks[bi].edges
        if not es:
            return BlockInfo(bi, (leader,))
        if len(es) == 1 and es[0] >= g.m:
            u, w, _ = connectors[es[0] - g.m]
            return BlockInfo(bi, (leader, w if leader == u else u), connector=True)
        if len(es) == 1:
            e = es[0]
            t = 2 * e if g.edges[e][0] == leader else 2 * e + 1
            return BlockInfo(bi, (leader, g.head[t]), trav=(t, t ^ 1))
        nxt: dict[int, int] = {}
        for e in es:
            for x in (2 * e, 2 * e + 1):
                if view.face(x) not in in_h:
                    if g.tail(x) in nxt:
                        raise StructureError(f"block {bc.blocks[bi].vertices} is not a cycle")
                    nxt[g.tail(x)] = x
        trav = [nxt[leader]]
        while g.head[trav[-1]] != leader:
            trav.append(nxt[g.head[trav[-1]]])
            if len(trav) > len(es):
                raise StructureError(f"block {bc.blocks[bi].vertices} traversal does not close")
        if len(trav) != len(es):
            raise StructureError(f"block {bc.blocks[bi].vertices} is not a simple cycle")
        return BlockInfo(bi, tuple(g.tail(x) for x in trav), trav=tuple(trav))

    conn_of_block = {block_of_edge[g.m + ci]: c for ci, c in enumerate(connectors)}

    def locate(b: BlockInfo, f: int, i: int) -> None:
        if b.connector:
            u, _, cf = conn_of_block[b.id]
            b.last_face = b.first_face = cf
            b.last_pos = [view.tail(h) for h in walk[cf]].index(u) + 0.5
        elif b.trav:
            b.last_face = view.face(b.trav[-1] ^ 1)
            b.first_face = view.face(b.trav[0] ^ 1)
            if b.last_face not in in_h:
                raise StructureError(f"block {b.vertices} has its last edge outside the 2-level graph")
            b.last_pos = float(walk[b.last_face].index(b.trav[-1] ^ 1))
        else:
            b.last_face = b.first_face = f
            b.last_pos = float(i)

    def sweep_key(b: BlockInfo) -> tuple:
        return (face_key[b.last_face], b.last_pos, b.id)

    # Each tree hangs from its root vertex r, placed on its own right after
    # the first outer vertex of the face where the sweep meets r; every block
    # at r is then a child. A lone vertex is its own root block.
    queued: set[int] = set()
    for r, f, i in roots:
        lone = len(bc.blocks_of[r]) == 1 and not bc.blocks[bc.blocks_of[r][0]].edges
        if lone:
            queue = [(bc.blocks_of[r][0], r, None, 0)]
        else:
            pseudo = BlockInfo(len(infos), (r,), root=True, last_face=f, first_face=f,
                               last_pos=i - 0.25)
            infos.append(pseudo)
            assigned[r] = pseudo.id
            queue = [(bj, r, pseudo.id, 0) for bj in bc.blocks_of[r]]
        queued.update(q[0] for q in queue)
        qi = 0
        while qi < len(queue):
            bi, leader, par, depth = queue[qi]
            qi += 1
            ops.tick()
            info = orient(bi, leader)
            info.root = par is None
            info.parent = par
            info.depth = depth
            infos[bi] = info
            owned = info.vertices if info.root else info.vertices[1:]
            for v in owned:
                assigned[v] = bi
                for bj in bc.blocks_of[v]:
                    if bj not in queued:
                        queued.add(bj)
                        queue.append((bj, v, bi, depth + 1))
            locate(info, f, i)

    blocks: list[BlockInfo] = [b for b in infos if b is not None]
    if len(blocks) != len(infos):
        raise StructureError("interior blocks not reachable from any root")

    for b in blocks:
        b.dominator = alpha[b.last_face]
        if b.root and not b.connector and not b.trav:
            nbrs = [g.head[h] for h in g.rotation[b.leader] if g.head[h] in pos]
            b.omega = max(nbrs, key=pos.__getitem__) if nbrs else alpha[b.first_face]
        else:
            b.omega = alpha[b.first_face]

    # A pocket sits in faces whose only outer vertex is its dominator, so it
    # is enclosed between that vertex and its leader. It is emitted right
    # after the leader instead and keeps the parity of its parent block.
    seen: dict[int, set[int]] = {v: set() for v in inner}
    for f in order:
        outer_here = {view.tail(h) for h in walk[f] if view.tail(h) in pos}
        for h in walk[f]:
            if view.tail(h) in seen:
                seen[view.tail(h)] |= outer_here
    base = {b.id: b.depth for b in blocks}
    for b in sorted(blocks, key=lambda b: base[b.id]):
        if b.root or b.connector:
            continue
        par = infos[b.parent]
        b.pocket = all(seen[w] == {b.dominator} for w in b.vertices[1:])
        step = base[b.id] - base[par.id]
        b.depth = par.depth + (0 if b.pocket and not par.pocket else step)

    dominated: dict[int, list[int]] = {v: [] for v in cycle}
    pockets: dict[int, list[int]] = {}
    for b in sorted(blocks, key=sweep_key):
        if b.pocket:
            pockets.setdefault(b.leader, []).append(b.id)
        else:
            dominated[b.dominator].append(b.id)

    h2 = TwoLevelGraph(
        gid, ell, view.mirror, order, cycle, pos, alpha, walk, face_key, cedges, chords,
        binding, interior, inner, connectors, blocks=sorted(blocks, key=lambda b: b.id),
        assigned=assigned, dominated=dominated, pockets=pockets,
    )
    h2.classes = classify_faces(sk, h2)
    return h2


def classify_faces(sk: SkeletonComplex, h: TwoLevelGraph) -> dict[int, FaceClass]:
    """Good, bad and attached faces of the original (connector-free) 2-level graph."""
    fverts = {f: set(h.face_vertices(sk, f)) for f in h.faces}
    bad: dict[int, list[BlockInfo]] = {f: [] for f in h.faces}
    for b in h.blocks:
        if b.connector:
            continue
        lf = b.last_face
        if len(fverts[lf]) >= 4 and not set(b.vertices) <= fverts[lf]:
            bad[lf].append(b)
    out: dict[int, FaceClass] = {}
    for f in h.faces:
        if bad[f]:
            ids = tuple(b.id for b in sorted(bad[f], key=lambda b: b.last_pos))
            out[f] = FaceClass(f, "bad", bad_for=ids)
            continue
        vs = fverts[f] - {h.alpha[f]}
        if len(fverts[f]) >= 4 and not any(h.is_outer(v) for v in vs):
            owners = {h.assigned[v] for v in vs}
            if len(owners) == 1:
                b = h.blocks[owners.pop()]
                if b.leader not in vs:
                    out[f] = FaceClass(f, "attached", attached_to=b.id)
                    continue
        out[f] = FaceClass(f, "good")
    return out


@dataclass
class Decomposition:
    leveling: Leveling
    graphs: list[TwoLevelGraph]  # top-down; graphs[0] is the level-0 graph

    def by_gid(self, gid: int) -> TwoLevelGraph:
        return self.graphs[gid]


def decompose(
    sk: SkeletonComplex, start: int | None = None, ops: OpCounter | None = None
) -> Decomposition:
    """All 2-level graphs, each child's outer cycle starting at its parent block's leader."""
    ops = ops or OpCounter()
    lv = peel(sk, ops)
    groups = group_faces(sk, lv)
    graphs: list[TwoLevelGraph] = []
    # nontrivial block edges -> (graph id, block id)
    owner: dict[int, tuple[int, int]] = {}
    for group in groups:
        ell = lv.face_min[group[0]]
        parent = None
        if ell > 0:
            for f in group:
                for h in sk.faces[f].half_edges:
                    if (h >> 1) in owner:
                        parent = owner[h >> 1]
                        break
                if parent:
                    break
            if parent is None:
                raise StructureError(f"level-{ell} faces {group[:4]} have no enclosing block")
        c0 = start
        if parent is not None:
            c0 = graphs[parent[0]].blocks[parent[1]].leader
        h2 = build_two_level(sk, lv, len(graphs), group, c0, ops)
        if parent is not None:
            pb = graphs[parent[0]].blocks[parent[1]]
            if tuple(h2.cycle) != pb.vertices:
                raise StructureError(
                    f"outer cycle {h2.cycle} disagrees with the enclosing block {pb.vertices}"
                )
            h2.parent, h2.parent_block = parent
            graphs[parent[0]].children[parent[1]] = h2.gid
        for b in h2.blocks:
            if not b.trivial:
                for x in b.trav:
                    owner[x >> 1] = (h2.gid, b.id)
        graphs.append(h2)
        ops.tick(len(group))
    return Decomposition(lv, graphs)
