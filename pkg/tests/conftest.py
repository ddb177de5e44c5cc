"""Shared instance corpus and a memoised pipeline run."""

from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bookbind.instances import gen_bubble, gen_hamantasch, gen_kframed_random  # noqa: E402
from bookbind.pipeline import embed  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

KS = range(3, 9)
BENCH_NS = (50, 200, 1000)
SEEDS = range(20)


@lru_cache(maxsize=None)
def instance(family: str, a: int, b: int = 0, c: int = 0, pair: str = "inner"):
    if family == "kframed":
        return gen_kframed_random(a, b, c)
    if family == "bubble":
        return gen_bubble(a, b, pair)
    return gen_hamantasch(a)


@lru_cache(maxsize=None)
def run(family: str, a: int, b: int = 0, c: int = 0, pair: str = "inner",
        mode: str = "general", uncrossed: int = 5):
    return embed(instance(family, a, b, c, pair), mode=mode, uncrossed=uncrossed)


def small_corpus():
    """Instances cheap enough for structural property checks."""
    out = [("kframed", k, n, s) for k in KS for n in (8, 12, 14, 30, 60) for s in range(6)]
    out += [("bubble", r, s, 0, pair) for r in (1, 2, 3) for s in range(4) for pair in ("inner", "outer")]
    out += [("hamantasch", k) for k in (2, 4, 6)]
    return out


def corpus_id(key) -> str:
    return "-".join(map(str, key))


@pytest.fixture(params=small_corpus(), ids=corpus_id)
def small_result(request):
    return run(*request.param)


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {ACCEPTANCE[num]}")
