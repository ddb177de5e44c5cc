"""``bookbind`` command line: embed, validate, thickness, gen, bench, render.

Exit codes: 0 success, 1 parse error, 2 invariant violation or failed
validation, 3 internal error (the algorithm produced something its own
guarantees rule out).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import BookbindError, ParseError
from .instances import gen_bubble, gen_hamantasch, gen_kframed_random
from .oracle import SmallGraph, exact_book_thickness
from .pipeline import MODES, embed
from .render import render_svg
from .validate import check_embedding, format_embedding, parse_embedding
from .witness import Witness, format_witness, half_square, parse_witness

log = logging.getLogger("bookbind")

CSV_HEADER = ("k", "n", "m", "pages", "budget", "ops", "micros")

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_INTERNAL = 0, 1, 2, 3


class InternalFailure(BookbindError):
    exit_code = EXIT_INTERNAL


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def load_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    """A witness file (its map graph) or an edge list of ``u v`` / ``u-v`` lines.

    Edge lists may carry an ``N <count>`` line for isolated vertices.
    """
    if text.lstrip().startswith("WITNESS"):
        mg = half_square(parse_witness(text))
        return mg.n, sorted(mg.edges)
    n = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.replace("-", " ").split()
        try:
            if toks[0] == "N" and len(toks) == 2:
                n = max(n, int(toks[1]))
                continue
            if len(toks) != 2:
                raise ValueError(f"expected two endpoints, got {line!r}")
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    return n, edges


def _report(res, elapsed: float) -> str:
    meta = res.embedding.meta
    lines = [
        f"k={meta['k']} n={meta['n']} m={meta['m']} levels={meta['levels']} mode={meta['mode']}",
        f"pages={res.pages} budget={res.budget} allowed={res.allowed} "
        f"uncrossed={res.uncrossed} moved={res.moved}",
        f"certificate={'pass' if res.certificate.ok else 'FAIL'} elapsed_ms={elapsed * 1e3:.1f}",
    ]
    for stage, count in res.ops.ops.items():
        lines.append(f"ops {stage}={count}")
    for d in res.diagnostics:
        lines.append(f"note {d}")
    return "\n".join(lines) + "\n"


def _csv_rows(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    wr.writerows(rows)
    return buf.getvalue()


def cmd_embed(args) -> int:
    w = parse_witness(_read(args.witness))
    t0 = time.perf_counter()
    res = embed(w, mode=args.mode, uncrossed=args.uncrossed_pages)
    elapsed = time.perf_counter() - t0
    _write(args.output, format_embedding(res.embedding))
    if args.svg:
        Path(args.svg).write_text(render_svg(res.embedding, title=Path(args.witness).name))
    err = sys.stderr if args.output in (None, "-") else sys.stdout
    if args.csv:
        micros = 0 if args.no_timing else round(elapsed * 1e6)
        m = res.embedding.meta
        err.write(_csv_rows([(m["k"], m["n"], m["m"], res.pages, res.budget, res.ops.total, micros)]))
    else:
        err.write(_report(res, elapsed))
    if not res.certificate.ok:
        raise InternalFailure(f"output does not validate: {res.certificate.violation}")
    if res.pages > res.allowed:
        raise InternalFailure(f"{res.pages} pages exceed the budget of {res.allowed}")
    return EXIT_OK


def cmd_validate(args) -> int:
    _, edges = load_graph(_read(args.graph))
    be = parse_embedding(_read(args.embedding))
    cert = check_embedding(be, edges)
    if cert.ok:
        print(f"pass: {cert.edges} edges on {cert.pages} pages")
        return EXIT_OK
    print(f"fail: {cert.violation}")
    return EXIT_INVARIANT


def cmd_thickness(args) -> int:
    n, edges = load_graph(_read(args.graph))
    if args.max_n is not None and n > args.max_n:
        print(f"n={n} exceeds --max-n {args.max_n}", file=sys.stderr)
        return EXIT_INVARIANT
    print(exact_book_thickness(SmallGraph.from_edges(n, edges)))
    return EXIT_OK


def make_instance(family: str, k: int | None, n: int | None, r: int | None, seed: int,
                  pair: str = "inner") -> Witness:
    if family == "kframed":
        if k is None or n is None:
            raise ValueError("kframed needs --k and --n")
        return gen_kframed_random(k, n, seed)
    if family == "bubble":
        if r is None:
            raise ValueError("bubble needs --r")
        return gen_bubble(r, seed, pair)
    if family == "hamantasch":
        if k is None:
            raise ValueError("hamantasch needs --k")
        return gen_hamantasch(k)
    raise ValueError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    w = make_instance(args.family, args.k, args.n, args.r, args.seed, args.pair)
    _write(args.output, format_witness(w))
    return EXIT_OK


def bench_row(job: tuple[int, int, int, str, bool]) -> tuple[int, ...]:
    k, n, seed, mode, timing = job
    w = gen_kframed_random(k, n, seed)
    t0 = time.perf_counter()
    res = embed(w, mode=mode)
    micros = round((time.perf_counter() - t0) * 1e6) if timing else 0
    if not res.ok:
        raise InternalFailure(f"k={k} n={n} seed={seed}: {res.pages} pages, "
                              f"certificate {'pass' if res.certificate.ok else 'fail'}")
    m = res.embedding.meta
    return (m["k"], m["n"], m["m"], res.pages, res.budget, res.ops.total, micros)


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def cmd_bench(args) -> int:
    jobs = [(k, n, s, args.mode, not args.no_timing)
            for k in _int_list(args.k) for n in _int_list(args.n)
            for s in range(args.seed, args.seed + args.seeds)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(bench_row, jobs))
    else:
        rows = [bench_row(j) for j in jobs]
    _write(args.csv, _csv_rows(rows))
    if args.plot:
        from .report import bench_figures

        for path in bench_figures(rows, Path(args.plot)):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    be = parse_embedding(_read(args.embedding))
    _write(args.output, render_svg(be, title=Path(args.embedding).name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bookbind", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="book-embed the map graph of a witness file")
    p.add_argument("witness")
    p.add_argument("-o", "--output", help="embedding file (default stdout)")
    p.add_argument("--mode", choices=MODES, default="general")
    p.add_argument("--uncrossed-pages", type=int, choices=(5, 6), default=5)
    p.add_argument("--svg", metavar="OUT", help="also write an arc diagram")
    p.add_argument("--csv", action="store_true", help="report as one CSV row")
    p.add_argument("--no-timing", action="store_true", help="write 0 for wall-clock columns")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("validate", help="check an embedding against a graph")
    p.add_argument("graph", help="witness file or edge list")
    p.add_argument("embedding")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("thickness", help="exact book thickness of a small graph")
    p.add_argument("graph", help="witness file or edge list")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_thickness)

    p = sub.add_parser("gen", help="write a generated witness")
    p.add_argument("family", choices=("kframed", "bubble", "hamantasch"))
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--pair", choices=("inner", "outer"), default="inner")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="seeded sweep over a (k, n) grid, CSV out")
    p.add_argument("--k", default="3..8", help="list like 3,5 or range 3..8")
    p.add_argument("--n", default="100,200,400,800,1600,3200")
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--mode", choices=MODES, default="general")
    p.add_argument("--csv", metavar="OUT", help="CSV file (default stdout)")
    p.add_argument("--plot", metavar="DIR", help="also render figures into DIR")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="write 0 for wall-clock columns")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="SVG arc diagram of an embedding file")
    p.add_argument("embedding")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BookbindError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        # bad arguments or unreadable input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - anything else is our bug
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
