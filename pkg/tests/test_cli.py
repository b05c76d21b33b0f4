import json
import random

import pytest

from kpartial import io
from kpartial.cli import main
from kpartial.coloring import Coloring, PartialSpec, verify_partial
from kpartial.graph import complete_graph, path_graph
from kpartial.ids import CliqueCoord
from conftest import random_graph


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        if hasattr(obj, "colors"):
            io.write_coloring(obj, path)
        else:
            io.write_graph(obj, path)
        return path

    return put


class TestGen:
    def test_path_of_cliques(self, capsys, tmp_path):
        out = tmp_path / "p.json"
        code, rep = run(capsys, "gen", "path-of-cliques", "--k", 3, "--l", 4, "--out", out, "--dot")
        assert code == 0 and (rep["n"], rep["m"]) == (12, 30)
        G = io.read_graph(out)
        assert G.n == 12 and G.labels[0] == CliqueCoord(1, 1)
        assert (tmp_path / "p.dot").exists()
        assert out.read_text() == json.dumps(io.graph_to_json(G)) + "\n"

    def test_perms_and_spec(self, capsys, tmp_path):
        code, rep = run(capsys, "gen", "path-of-cliques", "--k", 3, "--l", 3,
                        "--perms", "[[2,3,1],[1,2,3]]", "--out", tmp_path / "a.json")
        assert code == 0
        spec = tmp_path / "s.json"
        spec.write_text(json.dumps({"k": 3, "l": 3, "perms": [[2, 3, 1], [1, 2, 3]]}))
        code, _ = run(capsys, "gen", "path-of-cliques", "--spec", spec, "--out", tmp_path / "b.json")
        assert code == 0
        assert io.read_graph(tmp_path / "a.json") == io.read_graph(tmp_path / "b.json")

    def test_indist_pair(self, capsys, tmp_path):
        code, rep = run(capsys, "gen", "indist-pair", "--k", 3, "--l", 6, "--out", tmp_path / "pair.json")
        assert code == 0 and rep["view_radius"] == 6
        g1 = io.read_graph(tmp_path / "pair.g1.json")
        g2 = io.read_graph(tmp_path / "pair.g2.json")
        assert g1.n == g2.n == rep["n"]
        clique1 = {l for l in g1.labels if isinstance(l, CliqueCoord)}
        assert clique1 == {l for l in g2.labels if isinstance(l, CliqueCoord)}

    def test_gadget_transform(self, capsys, tmp_path, files):
        src = files("k3.json", complete_graph(3))
        code, rep = run(capsys, "gen", "gadget-transform", "--graph", src, "--k", 3, "--out", tmp_path / "t.json")
        assert code == 0 and rep["n"] == 12

    def test_bad_params(self, capsys, tmp_path):
        assert main(["gen", "indist-pair", "--k", "3", "--l", "5", "--out", str(tmp_path / "x")]) == 2
        assert main(["gen", "indist-pair", "--k", "3", "--l", "6", "--middle-perm", "1,2,3",
                     "--out", str(tmp_path / "x")]) == 2
        assert main(["gen", "path-of-cliques", "--k", "3", "--out", str(tmp_path / "x")]) == 2
        assert main(["gen", "gadget-transform", "--graph", str(tmp_path / "none.json"), "--k", "3",
                     "--out", str(tmp_path / "x")]) == 2


class TestVerify:
    def test_alternating_path(self, capsys, files):
        g = files("p.json", path_graph(10))
        c = files("c.json", Coloring(2, tuple(1 + v % 2 for v in range(10))))
        code, rep = run(capsys, "verify", "--graph", g, "--coloring", c, "--k", 2, "--c", 2)
        assert code == 0 and rep == {"valid": True, "violations": []}

    def test_all_one_path(self, capsys, files):
        g = files("p.json", path_graph(10))
        c = files("c.json", Coloring(2, (1,) * 10))
        code, rep = run(capsys, "verify", "--graph", g, "--coloring", c, "--k", 2, "--c", 2)
        assert code == 1 and len(rep["violations"]) == 10
        assert [v["required"] for v in rep["violations"]] == [1] + [2] * 8 + [1]

    def test_palette(self, capsys, files):
        g = files("p.json", path_graph(2))
        c = files("c.json", Coloring(3, (1, 3)))
        code, rep = run(capsys, "verify", "--graph", g, "--coloring", c, "--k", 1, "--c", 2)
        assert code == 1 and rep["error"] == "palette"

    def test_fuzz(self, capsys, files):
        rng = random.Random(7)
        for trial in range(1000):
            n = rng.randint(1, 9)
            G = random_graph(rng, n, rng.random())
            c = rng.randint(1, 4)
            k = rng.randint(0, 4)
            col = Coloring(c, tuple(rng.randint(1, c) for _ in range(n)))
            g, cf = files("g.json", G), files("c.json", col)
            code, rep = run(capsys, "verify", "--graph", g, "--coloring", cf, "--k", k, "--c", c)
            assert code == (0 if not verify_partial(G, col, PartialSpec(k, c)) else 1)


class TestColor:
    def test_greedy_pipeline(self, capsys, tmp_path, files):
        G = random_graph(random.Random(1), 40, 0.3)
        g = files("g.json", G)
        out = tmp_path / "col.json"
        code, _ = run(capsys, "color", "--graph", g, "--mode", "greedy", "--k", 4, "--out", out)
        assert code == 0
        code, rep = run(capsys, "verify", "--graph", g, "--coloring", out, "--k", 4, "--c", 5)
        assert code == 0 and rep["valid"]

    def test_exact_unsat(self, capsys, files):
        code, rep = run(capsys, "color", "--graph", files("k4.json", complete_graph(4)),
                        "--mode", "exact", "--k", 3, "--c", 3)
        assert code == 1 and rep["status"] == "unsat"

    def test_exact_triangle(self, capsys, files):
        code, rep = run(capsys, "color", "--graph", files("k3.json", complete_graph(3)),
                        "--mode", "exact", "--k", 3, "--c", 3)
        assert code == 0 and sorted(rep["colors"]) == [1, 2, 3]

    def test_budget(self, capsys, files):
        code, rep = run(capsys, "color", "--graph", files("k9.json", complete_graph(9)),
                        "--mode", "exact", "--k", 8, "--c", 9, "--budget", 3)
        assert code == 3 and rep["status"] == "budget"

    def test_greedy_palette(self, capsys, files):
        assert main(["color", "--graph", str(files("g.json", path_graph(3))), "--k", "1", "--c", "3"]) == 2


class TestDemo:
    def test_constant(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run(capsys, "demo-lower-bound", "--k", 3, "--l", 6, "--algo", "constant", "--out", out)
        rep = json.loads(out.read_text())
        assert code == 0 and rep["passed"]
        assert rep["details"]["verdict"]["endpoint_agreement"]
        assert rep["details"]["verdict"]["failed"]
        assert all("expected" in c and "observed" in c for c in rep["checks"])
        assert rep["details"]["radius_3l/2-1"] == {"radius": 8, "views_equal": False}

    def test_refusal(self, capsys):
        code = main(["demo-lower-bound", "--k", "3", "--l", "6", "--algo", "constant", "--rounds", "8"])
        assert code == 2
        assert "refused" in capsys.readouterr().err

    def test_id_hash_k4(self, capsys):
        code, rep = run(capsys, "demo-lower-bound", "--k", 4, "--l", 4, "--algo", "id-hash")
        assert code == 0 and rep["wall_clock_s"] < 10


class TestSearch:
    def test_k4(self, capsys):
        code, rep = run(capsys, "search-obstructions", "--k", 3, "--max-n", 4, "--no-no-clique")
        assert code == 0
        assert rep["details"]["found"][0]["edges"] == [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]

    def test_none(self, capsys):
        code, rep = run(capsys, "search-obstructions", "--k", 3, "--max-n", 4)
        assert code == 1 and rep["details"]["complete"]


class TestCompare:
    def test_pair(self, capsys, tmp_path):
        run(capsys, "gen", "indist-pair", "--k", 3, "--l", 6, "--out", tmp_path / "pair.json")
        a, b = tmp_path / "pair.g1.json", tmp_path / "pair.g2.json"
        code, rep = run(capsys, "sim-compare-views", "--graph-a", a, "--graph-b", b, "--radius", 6)
        assert code == 0 and len(rep["pairs"]) == 6
        code, rep = run(capsys, "sim-compare-views", "--graph-a", a, "--graph-b", b, "--radius", 9)
        assert code == 1 and rep["verdict"] == "distinguishable"

    def test_missing_ids(self, capsys, files):
        g = files("g.json", path_graph(3))
        assert main(["sim-compare-views", "--graph-a", str(g), "--graph-b", str(g),
                     "--radius", "1", "--ids", "99"]) == 2
