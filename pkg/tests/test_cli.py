import os

import pytest

from chordalg.cli import main
from chordalg.fileio import (
    coloring_from_text, graph_from_text, graph_to_text, independent_set_from_text,
)
from chordalg import Graph, ParseError, gen_chordal


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("CHORDALG_OUT", str(tmp_path))
    return tmp_path


def test_graph_file_roundtrip():
    g = gen_chordal(40, seed=2, max_clique=5)
    g.add_node(999)
    text = graph_to_text(g)
    back = graph_from_text(text)
    assert back.adj == g.adj
    assert "node 999" in text


def test_graph_file_parse_errors():
    with pytest.raises(ParseError):
        graph_from_text("1 2\n")
    with pytest.raises(ParseError):
        graph_from_text("n 3\n1 2\n")  # wrong node count
    with pytest.raises(ParseError):
        graph_from_text("n 2\n1 x\n")


def test_gen_idempotent(workdir):
    assert main(["gen", "chordal", "60", "--seed", "21",
                 "--max-clique", "8", "--out", "a.el"]) == 0
    assert main(["gen", "chordal", "60", "--seed", "21",
                 "--max-clique", "8", "--out", "b.el"]) == 0
    assert (workdir / "a.el").read_bytes() == (workdir / "b.el").read_bytes()


def test_gen_path_file(workdir):
    assert main(["gen", "path", "10", "--out", "p.el"]) == 0
    g = graph_from_text((workdir / "p.el").read_text())
    assert g.num_edges == 9


def test_run_mvc_on_clique(workdir):
    # a K20: the coloring must use exactly 20 colors, ratio 1.0
    g = Graph()
    for u in range(1, 21):
        for v in range(u + 1, 21):
            g.add_edge(u, v)
    (workdir / "k20.el").write_text(graph_to_text(g))
    assert main(["run", "mvc", "central", "k20.el", "--eps", "0.5",
                 "--solution", "k20.sol", "--out", "report.csv"]) == 0
    colors = coloring_from_text((workdir / "k20.sol").read_text())
    assert len(set(colors.values())) == 20
    report = (workdir / "report.csv").read_text()
    assert "mvc,20," in report and ",1.0000," in report


def test_run_modes_agree(workdir):
    assert main(["gen", "chordal", "120", "--seed", "21",
                 "--max-clique", "6", "--out", "g.el"]) == 0
    assert main(["run", "mvc", "central", "g.el", "--eps", "0.5",
                 "--solution", "c.sol"]) == 0
    assert main(["run", "mvc", "local", "g.el", "--eps", "0.5",
                 "--solution", "l.sol"]) == 0
    assert (workdir / "c.sol").read_bytes() == (workdir / "l.sol").read_bytes()


def test_run_mis_and_verify(workdir):
    assert main(["gen", "chordal", "150", "--seed", "3",
                 "--max-clique", "6", "--out", "g.el"]) == 0
    assert main(["run", "mis", "central", "g.el", "--eps", "0.4",
                 "--solution", "m.sol"]) == 0
    members = independent_set_from_text((workdir / "m.sol").read_text())
    assert members
    assert main(["verify", "g.el", "m.sol", "--eps", "0.4"]) == 0


def test_verify_catches_conflict(workdir):
    assert main(["gen", "path", "6", "--out", "p.el"]) == 0
    assert main(["run", "mvc", "central", "p.el", "--eps", "1.0",
                 "--solution", "p.sol"]) == 0
    colors = coloring_from_text((workdir / "p.sol").read_text())
    colors[2] = colors[1]  # inject one conflict on edge 1-2
    (workdir / "bad.sol").write_text(
        "".join("%d %d\n" % (v, colors[v]) for v in sorted(colors)))
    assert main(["verify", "p.el", "bad.sol"]) == 8


def test_exit_codes(workdir):
    # not chordal
    (workdir / "c4.el").write_text("n 4\n1 2\n1 4\n2 3\n3 4\n")
    assert main(["run", "mvc", "central", "c4.el", "--eps", "0.5"]) == 4
    # not interval (subdivided three-leg star)
    from chordalg import gen_spider
    (workdir / "spider.el").write_text(graph_to_text(gen_spider(3, 2)))
    assert main(["run", "mis-interval", "central", "spider.el", "--eps", "0.4"]) == 5
    # epsilon below 2/omega
    (workdir / "k4.el").write_text("n 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    assert main(["run", "mvc", "central", "k4.el", "--eps", "0.3"]) == 6
    assert main(["run", "mis", "central", "k4.el", "--eps", "0.7"]) == 6
    # parse failure
    (workdir / "junk.el").write_text("hello\n")
    assert main(["run", "mvc", "central", "junk.el", "--eps", "0.5"]) == 3
    # missing file
    assert main(["run", "mvc", "central", "nope.el", "--eps", "0.5"]) == 3
    # bad usage
    assert main(["run", "mvc"]) == 2


def test_bench_emits_rows_and_slope(workdir, capsys):
    assert main(["bench", "mvc", "--sizes", "40,80", "--eps", "0.5",
                 "--seeds", "2", "--max-clique", "6", "--out", "bench.csv"]) == 0
    out = capsys.readouterr().out
    assert "# slope rounds-vs-log2n" in out
    text = (workdir / "bench.csv").read_text()
    assert text.startswith("algorithm,")
    assert "# slope" in text


def test_run_mis_interval_local(workdir):
    assert main(["gen", "interval", "80", "--seed", "6", "--out", "i.el"]) == 0
    assert main(["run", "mis-interval", "local", "i.el", "--eps", "0.4",
                 "--solution", "i.sol", "--out", "r.csv"]) == 0
    text = (workdir / "r.csv").read_text()
    row = text.splitlines()[1]
    assert row.split(",")[7] != ""  # rounds recorded for the local mode
