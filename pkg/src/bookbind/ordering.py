"""Global vertex order from the 2-level decomposition.

Outer cycle vertices of the top level come first in cycle order; each
block is placed right after its dominator, in traversal order, and the
interior of a block (the next 2-level graph) is inserted recursively
after the block vertex it hangs from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counters import OpCounter
from .errors import StructureError
from .leveling import Decomposition
from .witness import SkeletonComplex


@dataclass
class VertexOrder:
    """Vertex sequence; a placeholder for ``v`` is stored as ``-(v + 1)``."""

    seq: list[int]

    @staticmethod
    def hat(v: int) -> int:
        return -(v + 1)

    @property
    def placeholders(self) -> list[int]:
        return [-x - 1 for x in self.seq if x < 0]

    def positions(self) -> dict[int, int]:
        """Position of every entry; placeholders are keyed by their negative code."""
        return {x: i for i, x in enumerate(self.seq)}

    def real(self) -> list[int]:
        return [x for x in self.seq if x >= 0]


def strip_placeholders(order: VertexOrder) -> VertexOrder:
    return VertexOrder(order.real())


def order_vertices(
    sk: SkeletonComplex, dec: Decomposition, ops: OpCounter | None = None, contiguous: bool = True
) -> VertexOrder:
    ops = ops or OpCounter()
    seq: list[int] = []
    placed: set[int] = set()
    graphs = dec.graphs
    # every graph whose outer cycle passes through x places the blocks x
    # dominates there right after x
    hang: dict[int, list[int]] = {}
    for h in graphs:
        for v in h.cycle[1:] if contiguous and h.parent is not None else h.cycle:
            if h.dominated.get(v):
                hang.setdefault(v, []).append(h.gid)
    pockets: dict[int, list[tuple[int, int]]] = {}
    for h in graphs:
        for v, bids in h.pockets.items():
            pockets.setdefault(v, []).extend((h.gid, bid) for bid in bids)
    # explicit stack: recursion depth grows with the number of nested blocks
    stack: list[tuple[str, int, int]] = []
    if graphs:
        for v in reversed(graphs[0].cycle):
            stack.append(("vertex", v, 0))
    while stack:
        kind, a, b = stack.pop()
        ops.tick()
        if kind == "vertex":
            if a in placed:
                raise StructureError(f"vertex {a} placed twice")
            placed.add(a)
            seq.append(a)
            for gid in reversed(hang.get(a, ())):
                for bid in reversed(graphs[gid].dominated[a]):
                    stack.append(("block", gid, bid))
            for gid, bid in reversed(pockets.get(a, ())):
                stack.append(("block", gid, bid))
        else:
            blk = graphs[a].blocks[b]
            if not blk.root and blk.leader not in placed:
                raise StructureError(f"leader {blk.leader} of block {blk.vertices} not yet placed")
            for x in reversed(blk.vertices if blk.root else blk.vertices[1:]):
                stack.append(("vertex", x, 0))
            child = graphs[a].children.get(b)
            if contiguous and child is not None and not blk.root:
                # blocks the leader dominates inside B open B's interval
                for bid in reversed(graphs[child].dominated[blk.leader]):
                    stack.append(("block", child, bid))
    for v in range(sk.n):
        if v not in placed:
            if sk.graph.degree(v):
                raise StructureError(f"vertex {v} was never placed")
            seq.append(v)
    return VertexOrder(_insert_placeholders(sk, dec, seq))


def _insert_placeholders(sk: SkeletonComplex, dec: Decomposition, seq: list[int]) -> list[int]:
    """Put ``v^`` right after the inner components of each pair {outer v, inner u}."""
    level = dec.leveling.level
    pos = {v: i for i, v in enumerate(seq)}
    after: dict[int, list[int]] = {}
    for (s, t) in sorted(sk.separation_pairs):
        if abs(level[s] - level[t]) != 1:
            continue
        v = s if level[s] < level[t] else t
        comps = sk.inner_components((s, t))
        inner = [c for c in comps if not any(level[x] <= level[v] for x in c)]
        if not inner:
            continue
        last = max(pos[x] for c in inner for x in c)
        after.setdefault(last, []).append(VertexOrder.hat(v))
    out: list[int] = []
    for i, x in enumerate(seq):
        out.append(x)
        out.extend(after.get(i, ()))
    return out
