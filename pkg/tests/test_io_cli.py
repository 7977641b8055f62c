import json
import subprocess
import sys

import pytest

from conftest import gk
from twinwidth import io
from twinwidth.cli import run
from twinwidth.construction import icosahedron
from twinwidth.trigraph import ContractionSequence, Trigraph


@pytest.fixture
def p4(tmp_path):
    path = tmp_path / "p4.edges"
    io.write_edge_list(path, 4, [(0, 1), (1, 2), (2, 3)])
    return path


@pytest.fixture(scope="module")
def g1_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("g1")
    assert run(["generate", "--k", "1", "--out-dir", str(d)]) == 0
    assert run(["witness", "--k", "1", "--out", str(d / "cert.json"), "--trace", str(d / "trace.csv")]) == 0
    return d


class TestFormats:
    def test_edge_list_round_trip(self, g1):
        text = io.format_edge_list(g1.n, g1.edges)
        n, edges = io.parse_edge_list(text)
        assert n == g1.n and edges == list(g1.edges)
        assert io.format_edge_list(n, edges) == text

    @pytest.mark.parametrize(
        "text",
        ["", "3\n", "3 2\n0 1\n", "3 1\n0 1 2\n", "x y\n", "3 1\n0 a\n"],
    )
    def test_malformed_edge_list(self, text):
        with pytest.raises(io.FormatError):
            io.parse_edge_list(text)

    def test_certificate_round_trip(self):
        seq = ContractionSequence.of([(0, 1), (2, 3), (0, 2)])
        text = io.format_certificate(4, 1, seq)
        assert text.endswith("\n")
        n, w, back = io.parse_certificate(text)
        assert (n, w, back.pairs()) == (4, 1, seq.pairs())
        assert io.format_certificate(n, w, back) == text
        assert json.loads(text)["format"] == io.CERT_FORMAT

    @pytest.mark.parametrize(
        "text",
        ["{", "[]", '{"format":"other"}', '{"format":"tww-cert/1","n":3}', '{"format":"tww-cert/1","n":3,"width":0,"steps":[[0]]}'],
    )
    def test_malformed_certificate(self, text):
        with pytest.raises(io.FormatError):
            io.parse_certificate(text)

    def test_embedding_round_trip(self):
        _, emb = icosahedron()
        text = io.format_embedding(emb)
        back = io.parse_embedding(text)
        assert back.rotation == emb.rotation
        assert io.format_embedding(back) == text

    def test_bad_embedding(self):
        with pytest.raises(io.FormatError):
            io.parse_embedding("0 1 2\n")
        with pytest.raises(io.FormatError):
            io.parse_embedding("0: 0\n1: 2\n")

    def test_dot_marks_red_edges(self):
        g = Trigraph.from_colored_edges(3, [(0, 1)], [(1, 2)])
        text = io.to_dot(g)
        assert "0 -- 1;" in text
        assert "1 -- 2 [color=red];" in text
        assert text.endswith("}\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            io.read_edge_list(tmp_path / "nope.edges")


class TestCli:
    def test_generate_writes_files(self, g1_files, capsys):
        assert {p.name for p in g1_files.iterdir()} >= {"g1.edges", "g1.emb", "g1.json"}
        meta = json.loads((g1_files / "g1.json").read_text())
        assert meta["n"] == gk(1).n and meta["skeleton_n"] == 42
        assert meta["histogram"] == {"4": 240, "5": 240, "20": 12, "24": 30}

    def test_witness_then_verify(self, g1_files, capsys):
        code = run(["verify", "--graph", str(g1_files / "g1.edges"), "--cert", str(g1_files / "cert.json"), "--bound", "7"])
        assert code == 0
        assert capsys.readouterr().out.startswith("ACCEPT width=7")

    def test_verify_tighter_bound_rejects(self, g1_files, capsys):
        code = run(["verify", "--graph", str(g1_files / "g1.edges"), "--cert", str(g1_files / "cert.json"), "--bound", "6"])
        assert code == 1
        out = capsys.readouterr().out
        assert out.startswith("REJECT step=")
        assert "red_degree=7" in out
        # the first step of the trace that reaches 7
        rows = (g1_files / "trace.csv").read_text().splitlines()[1:]
        first = next(int(r.split(",")[0]) for r in rows if r.endswith(",7"))
        assert f"step={first} " in out

    def test_verify_wrong_graph(self, g1_files, p4, capsys):
        assert run(["verify", "--graph", str(p4), "--cert", str(g1_files / "cert.json")]) == 1

    def test_solve_p4(self, p4, capsys, tmp_path):
        out = tmp_path / "c.json"
        assert run(["solve", "--graph", str(p4), "--mode", "exact", "--out", str(out)]) == 0
        assert capsys.readouterr().out == "width=1 status=exact\n"
        assert run(["verify", "--graph", str(p4), "--cert", str(out)]) == 0

    def test_solve_naive_and_at_most(self, p4, capsys):
        assert run(["solve", "--graph", str(p4), "--mode", "naive"]) == 0
        assert capsys.readouterr().out == "width=1 status=exact\n"
        assert run(["solve", "--graph", str(p4), "--mode", "at-most", "--bound", "0"]) == 1
        assert capsys.readouterr().out == "width>0 status=infeasible\n"
        assert run(["solve", "--graph", str(p4), "--mode", "at-most", "--bound", "1"]) == 0

    def test_solve_threads_same_output(self, p4, capsys):
        run(["solve", "--graph", str(p4), "--threads", "1"])
        a = capsys.readouterr().out
        run(["solve", "--graph", str(p4), "--threads", "2"])
        assert capsys.readouterr().out == a

    def test_solve_g0_with_witness(self, tmp_path, capsys):
        assert run(["generate", "--k", "0", "--out-dir", str(tmp_path)]) == 0
        assert run(["witness", "--k", "0", "--out", str(tmp_path / "c.json")]) == 0
        capsys.readouterr()
        code = run(["solve", "--graph", str(tmp_path / "g0.edges"), "--upper-cert", str(tmp_path / "c.json")])
        assert code == 0
        assert capsys.readouterr().out == "width=6 status=unknown\n"

    def test_analyze_json(self, capsys):
        assert run(["analyze", "--k", "2"]) == 0
        out = capsys.readouterr().out
        assert out.endswith("\n")
        doc = json.loads(out)
        assert all(doc["hypotheses"].values())
        assert doc["skeleton_min_degree"] == 5

    def test_analyze_from_files(self, tmp_path, capsys):
        assert run(["export", "--k", "1", "--format", "skeleton-edges", "--out", str(tmp_path / "s.edges")]) == 0
        assert run(["analyze", "--graph", str(tmp_path / "s.edges")]) == 0
        assert all(json.loads(capsys.readouterr().out)["hypotheses"].values())

    @pytest.mark.parametrize("fmt", ["edges", "embedding", "dot", "meta", "skeleton-edges"])
    def test_export_ends_with_newline(self, fmt, capsys):
        assert run(["export", "--k", "0", "--format", fmt]) == 0
        assert capsys.readouterr().out.endswith("\n")

    def test_export_round_trip(self, tmp_path):
        path = tmp_path / "g.edges"
        assert run(["export", "--k", "1", "--out", str(path)]) == 0
        g = io.read_edge_list(path)
        assert g.vertices() == list(range(gk(1).n))
        assert g == gk(1).graph

    def test_malformed_inputs_exit_2(self, tmp_path, p4, capsys):
        bad = tmp_path / "bad.edges"
        bad.write_text("3 2\n0 1\n")
        assert run(["solve", "--graph", str(bad)]) == 2
        cert = tmp_path / "bad.json"
        cert.write_text("{not json")
        assert run(["verify", "--graph", str(p4), "--cert", str(cert)]) == 2
        assert run(["verify", "--graph", str(tmp_path / "missing"), "--cert", str(cert)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_usage_errors(self, p4, capsys):
        assert run([]) == 2
        assert run(["solve", "--graph", str(p4), "--mode", "at-most"]) == 2
        assert run(["analyze"]) == 2

    def test_module_entry_point(self, p4):
        proc = subprocess.run(
            [sys.executable, "-m", "twinwidth", "solve", "--graph", str(p4)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "width=1 status=exact\n"
