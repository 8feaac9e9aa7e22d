from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from orthodecomp import cli
from orthodecomp import planarize as pz
import random


def run(argv, stdin: str | None = None, monkeypatch=None, capsys=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sh(monkeypatch, capsys):
    def call(*argv, stdin=None):
        return run(list(argv), stdin, monkeypatch, capsys)

    return call


@pytest.fixture
def write(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return put


def test_gen_grid(sh):
    code, out, _ = sh("gen", "grid", "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["n"] == 9 and len(data["edges"]) == 12
    assert out.endswith("\n") and "\r" not in out


def test_gen_dot(sh):
    code, out, _ = sh("gen", "cycle", "--n", "4", "--format", "dot")
    assert code == 0 and out.lstrip().startswith("graph")


@pytest.mark.parametrize(
    "argv, n",
    [
        (["complete_bipartite", "--n", "3", "--m", "2"], 5),
        (["complete_tripartite", "--n", "2"], 6),
        (["subdivided_knn", "--n", "2"], 8),
        (["shift", "--n", "5"], 10),
        (["binary-tree", "--n", "2"], 7),
        (["universal-2tree", "--h", "2", "--d", "2"], 2 + 2 * (1 + 4)),
        (["universal-2tree", "--k", "3"], 2 + 5 * (1 + 10 + 100 + 1000)),
    ],
)
def test_gen_families(sh, argv, n):
    code, out, _ = sh("gen", *argv)
    assert code == 0 and json.loads(out)["n"] == n


def test_gen_lazy_matches_materialized(sh):
    lazy = json.loads(sh("gen", "universal-2tree", "--h", "3", "--d", "3", "--lazy")[1])
    full = json.loads(sh("gen", "universal-2tree", "--h", "3", "--d", "3")[1])
    assert lazy["predicted_vertices"] == full["n"]
    assert lazy["predicted_edges"] == len(full["edges"])


def test_gen_lazy_and_cap(sh):
    code, out, _ = sh("gen", "universal-2tree", "--k", "5", "--param", "statement", "--lazy")
    data = json.loads(out)
    assert code == 0 and (data["h"], data["d"]) == (13, 50)
    code, _, err = sh("gen", "universal-2tree", "--k", "5")
    assert code == 3 and json.loads(err)["error"] == "cap"


def test_gen_add_dominant(sh, write):
    path = write("g.json", {"n": 3, "edges": [[0, 1]]})
    code, out, _ = sh("gen", "add-dominant", "--graph", path)
    assert json.loads(out)["n"] == 4 and len(json.loads(out)["edges"]) == 4


def test_grid_pair_pipes_into_ortho(sh):
    _, out, _ = sh("construct", "grid-pair", "--n", "3")
    code, out2, _ = sh("ortho", "-", stdin=out)
    assert code == 0 and out2 == "4\n"


@pytest.mark.parametrize(
    "argv, k",
    [
        (["grid-pair", "--n", "4"], 4),
        (["knn-pair", "--n", "3"], 2),
        (["star-pair", "--n", "3"], 2),
        (["subdiv-pair", "--n", "3"], None),
    ],
)
def test_constructions_revalidate(sh, argv, k):
    code, out, _ = sh("construct", *argv)
    assert code == 0
    if k is not None:
        assert json.loads(out)["orthogonality"] == k
    code, chk, _ = sh("check", "-", stdin=out)
    assert code == 0 and json.loads(chk)["ok"]


def test_domino_construction(sh, write):
    _, g, _ = sh("gen", "grid", "--n", "3")
    code, out, _ = sh("construct", "domino", "--graph", write("g.json", g))
    assert code == 0
    assert sh("check", "-", stdin=out)[0] == 0


def test_check_reports_validation_failure(sh, write):
    bundle = {
        "graph": {"n": 3, "edges": [[0, 1], [1, 2]]},
        "decompositions": [{"kind": "path", "bags": [[0, 1], [2]]}],
    }
    code, out, err = sh("check", write("b.json", bundle))
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "validation"


def test_invalid_input_exit_one(sh, write):
    code, _, err = sh("ortho", write("bad.json", "{not json"))
    assert code == 1 and json.loads(err)["error"] == "invalid"
    code, _, _ = sh("gen", "grid")
    assert code == 1


def test_compress_and_separator(sh, write):
    _, out, _ = sh("construct", "grid-pair", "--n", "4")
    bundle = json.loads(out)
    g = write("g.json", bundle["graph"])
    tree = write("t.json", bundle["decompositions"][0])
    weak = write("p.json", bundle["decompositions"][1])
    code, res, _ = sh("compress", "--graph", g, "--tree", tree, "--weakpath", weak)
    data = json.loads(res)
    assert code == 0 and data["result"]["within_bound"]
    assert sh("check", "-", stdin=res)[0] == 0
    code, sep, _ = sh("separator", "--graph", g, "--tree", tree)
    sep = json.loads(sep)
    assert code == 0 and 2 * sep["largest_component"] <= sep["n"]


def test_lift_commands(sh, write):
    arr = pz.random_arrangement(random.Random(2), 5, 6, 0)
    code, out, _ = sh("lift", "string", "--input", write("a.json", arr.to_dict()), "--base", "exact")
    assert code == 0 and json.loads(out)["report"]["crossings"] == 6
    assert sh("check", "-", stdin=out)[0] == 0
    code, out, _ = sh("lift", "string", "--input", write("a.json", arr.to_dict()), "--k", "6")
    assert code == 0 and "layered_width" in json.loads(out)["report"]
    drw = pz.random_drawing(random.Random(3), 5, 3)
    code, out, _ = sh("lift", "drawing", "--input", write("d.json", drw.to_dict()))
    assert code == 0 and sh("check", "-", stdin=out)[0] == 0


def test_bounds(sh):
    code, out, _ = sh("bounds", "--tw", "47", "--n", "24", "--k", "2", "--s", "8")
    data = json.loads(out)["bounds"]
    assert data["crossing_lower_bound"] == {"floor": 36, "value": "36"}
    assert data["tw_from_weak_path"]["floor"] == 7


def test_rect_clique_example(sh):
    code, out, _ = sh("rect", "clique", "--k", "3", "--oracle", "random", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and len(data["shapes"]) == 3 and data["verified"] and data["trace"]


@pytest.mark.parametrize("oracle", ["stall-h", "stall-v", "corner"])
def test_rect_clique_adversaries(sh, oracle):
    code, out, _ = sh("rect", "clique", "--k", "4", "--oracle", oracle)
    assert code == 0 and json.loads(out)["verified"]


def test_rect_clique_file_oracle(sh, write):
    from orthodecomp import rects as rc

    rng = random.Random(1)
    pool = [rc.Rect(0, 4, 0, 4), rc.Rect(2, 6, 1, 5)]
    while len(pool) < 40:
        pool.append(rc._random_around(rng, rc.Rect(2, 4, 1, 4)))
    path = write("pool.json", rc.rects_to_dict(pool))
    code, out, _ = sh("rect", "clique", "--k", "3", "--oracle", f"file:{path}")
    assert code == 0 and json.loads(out)["verified"]


def test_rect_clique_jobs_match_serial(sh):
    _, serial, _ = sh("rect", "clique", "--k", "4", "--seed", "3", "--count", "6")
    _, parallel, _ = sh("rect", "clique", "--k", "4", "--seed", "3", "--count", "6", "--jobs", "2")
    assert serial == parallel and len(json.loads(serial)["runs"]) == 6


def test_rect_classify_and_hvo(sh, write):
    path = write("r.json", {"rects": [[0, 0, 4, 4], [2, 1, 6, 3]]})
    assert json.loads(sh("rect", "classify", "--input", path)[1]) == {"type": "H"}
    out = json.loads(sh("rect", "hvo", "--input", path)[1])
    assert out["ok"]
    code, _, _ = sh("rect", "classify", "--input", write("c.json", {"rects": [[0, 0, 4, 4], [3, 3, 6, 6]]}))
    assert code == 1


def test_rect_paths_round_trip(sh, write):
    _, out, _ = sh("construct", "knn-pair", "--n", "3")
    code, rects_out, _ = sh("rect", "from-paths", "--input", "-", stdin=out)
    assert code == 0 and len(json.loads(rects_out)["rects"]) == 6
    code, back, _ = sh("rect", "to-paths", stdin=rects_out)
    assert code == 0 and json.loads(back)["orthogonality"] == 2
    assert sh("check", "-", stdin=back)[0] == 0


def test_box_clique(sh):
    code, out, _ = sh("box", "clique", "--d", "2", "--k", "7", "--seed", "1")
    data = json.loads(out)
    assert code == 0 and data["rounds"] == 2 and data["verified"]


@pytest.mark.parametrize(
    "what, key, value",
    [("tw", "treewidth", 4), ("pw", "pathwidth", 4), ("clique", "clique", 5), ("chi", "chromatic", 5), ("sep", "separator", 3)],
)
def test_oracle_commands_on_k5(sh, write, what, key, value):
    path = write("k5.json", {"n": 5, "edges": [[i, j] for i in range(5) for j in range(i + 1, 5)]})
    code, out, _ = sh("oracle", what, path)
    assert code == 0 and json.loads(out)[key] == value


def test_oracle_cap_exit_three(sh, write):
    path = write("big.json", {"n": 20, "edges": [[i, i + 1] for i in range(19)]})
    code, _, err = sh("oracle", "tw", path)
    assert code == 3 and json.loads(err)["error"] == "cap"


DETERMINISTIC = [
    ["gen", "universal-2tree", "--h", "3", "--d", "2"],
    ["construct", "domino", "--graph", "{grid}"],
    ["rect", "clique", "--k", "5", "--oracle", "random", "--seed", "11"],
    ["box", "clique", "--d", "1", "--k", "5", "--seed", "4"],
    ["lift", "string", "--input", "{arr}", "--base", "heuristic", "--seed", "5"],
]


@pytest.mark.parametrize("argv", DETERMINISTIC, ids=lambda a: " ".join(a[:2]))
def test_byte_identical_reruns(sh, write, argv):
    grid = write("grid.json", json.loads(sh("gen", "grid", "--n", "4")[1]))
    arr = write("arr.json", pz.random_arrangement(random.Random(8), 6, 8, 0).to_dict())
    argv = [a.format(grid=grid, arr=arr) for a in argv]
    first = sh(*argv)
    second = sh(*argv)
    assert first[0] == 0 and first == second


def test_console_script_subprocess():
    cmd = [sys.executable, "-m", "orthodecomp.cli", "construct", "knn-pair", "--n", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and b"\r" not in a.stdout
