"""Matplotlib figures for ``bookbind bench``: pages and operations against n."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _by_k(rows):
    groups = defaultdict(lambda: defaultdict(list))
    for k, n, m, pages, budget, ops, micros in rows:
        groups[k][n].append((pages, budget, ops, micros))
    return groups


def _n_axis(ax, ns) -> None:
    ax.set_xscale("log")
    ax.set_xticks(ns, [str(n) for n in ns])
    ax.minorticks_off()
    ax.set_xlabel("n (vertices)")


def bench_figures(rows, outdir: Path) -> list[Path]:
    """Write ``pages.png`` and ``ops.png`` into ``outdir``; returns the paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    groups = _by_k(rows)
    all_ns = sorted({n for k in groups for n in groups[k]})
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    for i, k in enumerate(sorted(groups)):
        ns = sorted(groups[k])
        worst = [max(r[0] for r in groups[k][n]) for n in ns]
        color = f"C{i}"
        ax.plot(ns, worst, "o-", color=color, label=f"k={k}")
        ax.axhline(groups[k][ns[0]][0][1], color=color, ls=":", lw=1)
    _n_axis(ax, all_ns)
    ax.set_ylabel("pages (worst seed)")
    ax.set_title("Pages used; dotted lines are the budgets")
    ax.legend(fontsize="small")
    fig.tight_layout()
    paths.append(outdir / "pages.png")
    fig.savefig(paths[-1], dpi=120, metadata={"Software": None})
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    for i, k in enumerate(sorted(groups)):
        ns = sorted(groups[k])
        per_n = [sum(r[2] for r in groups[k][n]) / len(groups[k][n]) / n for n in ns]
        ax.plot(ns, per_n, "o-", color=f"C{i}", label=f"k={k}")
    _n_axis(ax, all_ns)
    ax.set_ylabel("operations / n")
    ax.set_title("Operation count per vertex (flat means linear)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    paths.append(outdir / "ops.png")
    fig.savefig(paths[-1], dpi=120, metadata={"Software": None})
    plt.close(fig)
    return paths
