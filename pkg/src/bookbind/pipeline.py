"""Witness in, certified book embedding out.

Stages follow the algorithm: skeleton, 2-level decomposition, vertex
order, page assignment (uncrossed and crossed), composition. Every result
is re-checked by the stack validator before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .counters import OpCounter
from .errors import MergeConflict
from .leveling import Decomposition, decompose
from .ordering import VertexOrder, order_vertices
from .pages import PagePlan, _key, plan_pages, repair_pages, squeeze_pages
from .validate import BookEmbedding, Certificate, budget, check_embedding, compact
from .witness import SkeletonComplex, Witness, augment_planar_maximal, half_square, planar_skeleton

log = logging.getLogger("bookbind")

MODES = ("general", "4map", "5map")


@dataclass
class EmbedResult:
    skeleton: SkeletonComplex
    decomposition: Decomposition
    order: VertexOrder
    plan: PagePlan
    embedding: BookEmbedding
    certificate: Certificate
    budget: int
    ops: OpCounter
    uncrossed: int  # uncrossed page ids actually used by the plan (5, or 6 after a merge conflict)
    moved: int = 0  # edges re-paged by the repair step
    diagnostics: list[str] = field(default_factory=list)

    @property
    def pages(self) -> int:
        return self.embedding.num_pages

    @property
    def allowed(self) -> int:
        """Budget, plus one page when the 6-page uncrossed scheme was used."""
        return self.budget + (1 if self.uncrossed == 6 else 0)

    @property
    def ok(self) -> bool:
        return self.certificate.ok and self.pages <= self.allowed


def _assemble(order: list[int], page: dict[tuple[int, int], int], keep: set) -> BookEmbedding:
    by_page: dict[int, list[tuple[int, int]]] = {}
    for e, p in page.items():
        if e in keep:
            by_page.setdefault(p, []).append(e)
    return compact(BookEmbedding(order, [by_page[p] for p in sorted(by_page)]))


def _repair(plan: PagePlan, pos, real, keep, skel, ops: OpCounter, sk_k: int, mode: str):
    page = {e: p for e, p in plan.page.items() if e in keep}
    with ops.run("repair"):
        low = list(range(plan.uncrossed))
        high = sorted({p for p in page.values() if p >= plan.uncrossed}
                      | {plan.crossed_page(par, c, j) for par in (0, 1) for c in range(3)
                         for j in range(plan.width)})
        # own class first, then any other existing page, then a fresh one
        up, down = low + high, high + low
        pools = {p: up for p in low}
        pools.update({p: down for p in high})
        prio = {e: 0 if e in skel else 1 for e in page}
        page, moved = repair_pages(pos, page, pools, prio, ops)
    if len(set(page.values())) > budget(sk_k, mode):
        with ops.run("squeeze"):
            page, _ = squeeze_pages(pos, page, ops)
    with ops.run("revalidate"):
        be = _assemble(real, page, keep)
        cert = check_embedding(be, keep, ops)
    return be, cert, moved


def embed(
    w: Witness,
    mode: str = "general",
    uncrossed: int = 5,
    ops: OpCounter | None = None,
    repair: bool = True,
) -> EmbedResult:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if uncrossed not in (5, 6):
        raise ValueError("uncrossed pages must be 5 or 6")
    ops = ops or OpCounter()
    diagnostics: list[str] = []
    with ops.run("skeleton"):
        sk = planar_skeleton(augment_planar_maximal(w, ops), ops)
    with ops.run("leveling"):
        dec = decompose(sk, ops=ops)
    with ops.run("ordering"):
        order = order_vertices(sk, dec, ops)
    real = order.real()
    pos = {v: i for i, v in enumerate(real)}
    keep = set(half_square(w).edges)
    skel = {_key(u, v) for u, v in sk.graph.edges}
    with ops.run("pages"):
        try:
            plan = plan_pages(sk, dec, order, mode, uncrossed, ops)
        except MergeConflict as ex:
            diagnostics.append(f"merge conflict: {ex}")
            log.debug("%s", diagnostics[-1])
            plan = plan_pages(sk, dec, order, mode, uncrossed, ops, strict=False)
    with ops.run("validate"):
        be = _assemble(real, plan.page, keep)
        cert = check_embedding(be, keep, ops)
    moved = 0
    if not cert.ok and repair:
        diagnostics.append(f"twist on page {cert.violation.page}: "
                           f"{cert.violation.first} and {cert.violation.second}")
        be, cert, moved = _repair(plan, pos, real, keep, skel, ops, sk.k, mode)
        diagnostics.append(f"repair moved {moved} edges, {be.num_pages} pages")
        log.debug("%s", diagnostics[-1])
        if be.num_pages > budget(sk.k, mode) and plan.uncrossed == 5:
            # fallback: separate uncrossed banks per level parity
            with ops.run("fallback"):
                plan6 = plan_pages(sk, dec, order, mode, 6, ops)
            with ops.run("revalidate"):
                be6 = _assemble(real, plan6.page, keep)
                cert6 = check_embedding(be6, keep, ops)
            moved6 = 0
            if not cert6.ok:
                be6, cert6, moved6 = _repair(plan6, pos, real, keep, skel, ops, sk.k, mode)
            diagnostics.append(f"6-page fallback: moved {moved6} edges, {be6.num_pages} pages")
            if cert6.ok and be6.num_pages < be.num_pages:
                plan, be, cert, moved = plan6, be6, cert6, moved6
    be.meta.update(k=sk.k, n=sk.n, m=len(keep), levels=dec.leveling.depth, mode=mode,
                   uncrossed=plan.uncrossed, moved=moved)
    return EmbedResult(sk, dec, order, plan, be, cert, budget(sk.k, mode), ops,
                       plan.uncrossed, moved, diagnostics)
