import re

import pytest

from bookbind.cli import CSV_HEADER, load_graph, main

from conftest import GOLDEN

HAM = str(GOLDEN / "hamantasch-k4.wit")
K5 = str(GOLDEN / "kframed-k5-n50-s7.wit")


def test_embed_matches_golden(tmp_path, capsys):
    for wit, emb in [(HAM, "hamantasch-k4.emb"), (K5, "kframed-k5-n50-s7.emb")]:
        out = tmp_path / emb
        assert main(["embed", wit, "-o", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / emb).read_bytes()
    assert "certificate=pass" in capsys.readouterr().out


def test_embed_to_stdout_keeps_report_on_stderr(capsys):
    assert main(["embed", HAM]) == 0
    cap = capsys.readouterr()
    assert cap.out == (GOLDEN / "hamantasch-k4.emb").read_text()
    assert "pages=" in cap.err


def test_embed_csv_row_without_timing(tmp_path, capsys):
    assert main(["embed", K5, "-o", str(tmp_path / "e"), "--csv", "--no-timing"]) == 0
    header, row = capsys.readouterr().out.strip().split("\n")
    assert tuple(header.split(",")) == CSV_HEADER
    assert row.endswith(",0")


def test_uncrossed_pages_six(tmp_path):
    assert main(["embed", K5, "-o", str(tmp_path / "e"), "--uncrossed-pages", "6"]) == 0
    assert main(["validate", K5, str(tmp_path / "e")]) == 0


def test_validate_round_trip(capsys):
    assert main(["validate", K5, str(GOLDEN / "kframed-k5-n50-s7.emb")]) == 0
    assert capsys.readouterr().out.startswith("pass:")


def test_tampered_embedding_fails_validation(tmp_path, capsys):
    text = (GOLDEN / "hamantasch-k4.emb").read_text()
    # 4-0 and 2-3 twist in the order 1 4 2 0 3 5
    bad = tmp_path / "bad.emb"
    bad.write_text(text.replace("PAGE 2: 4-3 4-5 2-3", "PAGE 2: 4-3 4-5").replace("2-0\n", "2-0 2-3\n"))
    assert main(["validate", HAM, str(bad)]) == 2
    assert capsys.readouterr().out.startswith("fail:")
    missing = tmp_path / "missing.emb"
    missing.write_text(text.replace(" 0-3", ""))
    assert main(["validate", HAM, str(missing)]) == 2


def test_parse_errors_exit_one(tmp_path):
    junk = tmp_path / "junk.emb"
    junk.write_text("ORDER 0 1 2\nPAGE x: 0-1\n")
    assert main(["validate", HAM, str(junk)]) == 1
    wit = tmp_path / "junk.wit"
    wit.write_text("WITNESS nonsense\n")
    assert main(["embed", str(wit)]) == 1
    assert main(["embed", str(tmp_path / "absent.wit")]) == 1


def test_edge_list_loader():
    n, edges = load_graph("# a square\n0 1\n1-2\n2 3\n3 0\nN 6\n")
    assert n == 6
    assert edges == [(0, 1), (1, 2), (2, 3), (3, 0)]


def test_thickness(tmp_path, capsys):
    k5 = tmp_path / "k5.txt"
    k5.write_text("".join(f"{u} {v}\n" for u in range(5) for v in range(u + 1, 5)))
    assert main(["thickness", str(k5)]) == 0
    assert main(["thickness", HAM]) == 0
    assert capsys.readouterr().out.split() == ["3", "3"]
    assert main(["thickness", str(k5), "--max-n", "4"]) == 2


def test_gen_requires_parameters(capsys):
    assert main(["gen", "kframed", "--k", "4"]) == 1
    assert main(["gen", "hamantasch", "--k", "3"]) != 0


BENCH = ["bench", "--k", "3,4", "--n", "50,100", "--seeds", "2", "--no-timing"]


def test_bench_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(BENCH + ["--csv", str(a)]) == 0
    assert main(BENCH + ["--csv", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes() == (GOLDEN / "bench-small.csv").read_bytes()


def test_bench_plot_writes_figures(tmp_path):
    figs = tmp_path / "figs"
    assert main(["bench", "--k", "3", "--n", "30,60", "--seeds", "1",
                 "--csv", str(tmp_path / "b.csv"), "--plot", str(figs)]) == 0
    for name in ("pages.png", "ops.png"):
        data = (figs / name).read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"


def test_render_cycle_uses_one_colour(tmp_path):
    emb = tmp_path / "c5.emb"
    emb.write_text("ORDER 0 1 2 3 4\nPAGE 0: 0-1 1-2 2-3 3-4 0-4\n")
    out = tmp_path / "c5.svg"
    assert main(["render", str(emb), "-o", str(out)]) == 0
    svg = out.read_text()
    assert svg.count("<path ") == 5
    assert len(set(re.findall(r'stroke="(#[0-9a-f]{6})"', svg)) - {"#000"}) == 1
    assert main(["render", str(emb), "-o", str(tmp_path / "again.svg")]) == 0
    assert (tmp_path / "again.svg").read_text() == svg


def test_embed_svg_option(tmp_path):
    svg = tmp_path / "h.svg"
    assert main(["embed", HAM, "-o", str(tmp_path / "h.emb"), "--svg", str(svg)]) == 0
    assert svg.read_text().count("<path ") == 15


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
