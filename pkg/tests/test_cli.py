import io
import json

import pytest

from _corpus import C3_EMB, K2_EMB
from geostretch.cli import main
from geostretch.io import read_edge_list

PATH3 = "3 2\n0 1 1.0\n1 2 1.0\n"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


@pytest.fixture
def files(tmp_path):
    p = tmp_path / "path3.txt"
    p.write_text(PATH3)
    k2 = tmp_path / "k2.emb"
    k2.write_text(K2_EMB)
    c3 = tmp_path / "c3.emb"
    c3.write_text(C3_EMB)
    return {"path3": p, "k2": k2, "c3": c3, "dir": tmp_path}


def test_validate(files):
    code, out = run_json("validate", files["path3"])
    assert code == 0
    assert out["result"]["edge_stats"] == {"l_min": 1.0, "l_max": 1.0, "r_e": 1.0}
    assert out["timings"] == {}


def test_validate_disconnected(files):
    bad = files["dir"] / "bad.txt"
    bad.write_text("3 1\n0 1 1.0\n")
    code, out = run_json("validate", bad)
    assert code == 1 and out["error"]["type"] == "DisconnectedGraph"


def test_validate_mesh(files):
    off = files["dir"] / "tri.off"
    off.write_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n")
    code, out = run_json("validate", off)
    assert code == 0 and out["result"]["ok"]


def test_missing_file_is_io_error(files):
    code, out = run_json("validate", files["dir"] / "nope.txt")
    assert code == 3


def test_parse_error_exit_code(files):
    bad = files["dir"] / "bad.txt"
    bad.write_text("garbage\n")
    assert run("validate", bad)[0] == 3


def test_sample(files):
    code, out = run_json("sample", files["path3"], "-k", 2, "--start", 0)
    assert code == 0
    assert out["result"]["sources"] == [0, 2] and out["result"]["radii"] == [2.0, 1.0]


def test_start_and_seed_exclusive(files):
    assert run("sample", files["path3"], "-k", 1, "--start", 0, "--seed", 1)[0] == 2


def test_oracle_build_query_stretch(files):
    ob = files["dir"] / "o.bin"
    code, out = run_json("oracle", "build", files["path3"], "-k", 1, "--start", 0, "-o", ob)
    assert code == 0 and out["result"]["sources"] == [0]
    code, out = run_json("oracle", "query", ob, "-p", 1, "-q", 2, "--graph", files["path3"])
    assert code == 0 and out["result"]["value"] == 3.0 and out["result"]["witness_source"] == 0
    code, out = run_json("stretch", files["path3"], ob, "--method", "both", "--check-bounds")
    assert code == 0
    assert out["result"]["stretch"] == 3.0 and out["result"]["naive"]["stretch"] == 3.0
    assert out["result"]["methods_agree"]
    assert all(b["holds"] for b in out["result"]["bounds"])


def test_corrupt_oracle_exit_code(files):
    ob = files["dir"] / "o.bin"
    ob.write_bytes(b"GSTR1 truncated")
    assert run("oracle", "query", ob, "-p", 0, "-q", 1)[0] == 3


def test_oracle_for_other_graph(files):
    ob = files["dir"] / "o.bin"
    run("oracle", "build", files["path3"], "-k", 1, "-o", ob)
    other = files["dir"] / "other.txt"
    other.write_text("3 2\n0 1 2.0\n1 2 1.0\n")
    code, out = run_json("stretch", other, ob)
    assert code == 1 and out["error"]["type"] == "ChecksumMismatch"


def test_brute_stretch(files):
    code, out = run_json("brute", files["path3"], "--objective", "stretch", "-k", 1)
    assert code == 0
    assert out["result"]["objective"] == 1.0 and out["result"]["best_sets"] == [[1]]
    assert {b["name"] for b in out["result"]["bounds"]} == {"fps_guarantee", "kcenter_transfer"}


def test_brute_other_objectives(files):
    assert run_json("brute", files["path3"], "--objective", "kcenter", "-k", 1)[1]["result"]["objective"] == 1.0
    assert run_json("brute", files["path3"], "--objective", "vc")[1]["result"]["objective"] == 1.0
    out = run_json("brute", files["path3"], "--objective", "exists", "-k", 1, "--xi", 1.0)[1]
    assert out["result"]["exists"] and out["result"]["witness"] == [1]


def test_brute_usage_errors(files):
    assert run("brute", files["path3"], "--objective", "stretch")[0] == 2
    assert run("brute", files["path3"], "--objective", "exists", "-k", 1)[0] == 2


def test_brute_budget(files):
    code, out = run_json("brute", files["path3"], "--objective", "stretch", "-k", 1, "--budget", 2)
    assert code == 1 and out["error"]["type"] == "BudgetExceeded"


def test_gadget_verify(files):
    code, out = run_json("gadget", "verify", files["k2"], "-k", 1, "--xi", 3)
    assert code == 0
    rows = out["result"]["stretch_reduction"]["rows"]
    assert [r["k"] for r in rows] == [0, 1] and all(r["agree"] for r in rows)


def test_gadget_verify_csv(files):
    code, text = run("gadget", "verify", files["c3"], "--format", "csv")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "k,vc_le_k,sources_exist,agree,vc_subdivision_agree"
    assert len(lines) == 5


def test_gadget_build(files):
    out_path = files["dir"] / "gp.txt"
    code, out = run_json("gadget", "build", files["c3"], "-o", out_path)
    assert code == 0 and out["result"]["structure"]["ok"]
    g = read_edge_list(out_path)
    assert g.vertex_count == out["result"]["vertices"]
    trace = json.loads((files["dir"] / "gp.txt.trace.json").read_text())
    assert len(trace["gadgets"]) * 5 == g.edge_count


def test_gadget_xi_too_small(files):
    code, out = run_json("gadget", "build", files["k2"], "--xi", 2, "-o", files["dir"] / "x.txt")
    assert code == 1 and out["error"]["type"] == "XiTooSmall"


def test_outputs_are_byte_identical(files):
    argv = ("sample", files["path3"], "-k", 2, "--seed", 7)
    assert run(*argv) == run(*argv)
    argv = ("brute", files["path3"], "--objective", "stretch", "-k", 2)
    assert run(*argv) == run(*argv)


def test_timings_flag(files):
    out = run_json("sample", files["path3"], "-k", 1, "--timings")[1]
    assert "sample" in out["timings"]


def test_sample_csv(files):
    code, text = run("sample", files["path3"], "-k", 2, "--format", "csv")
    assert text == "index,source,radius\n0,0,2.0\n1,2,1.0\n"


def test_generate_and_bench(files):
    grid = files["dir"] / "grid.off"
    code, out = run_json("generate", "grid", "--rows", 6, "--cols", 6, "-o", grid)
    assert code == 0 and out["result"]["vertices"] == 36
    code, out = run_json("bench", grid, "-k", 4, "--ks", "1,2,4", "--queries", 200, "--repeats", 2)
    assert code == 0
    assert [row["k"] for row in out["result"]["query_scaling"]] == [1, 2, 4]
    assert out["result"]["build_seconds"] > 0
    assert out["result"]["stretch_naive"]["stretch"] == out["result"]["stretch_fast"]["stretch"]


def test_generate_random(files):
    path = files["dir"] / "r.txt"
    code, out = run_json("generate", "random", "-n", 20, "--extra", 5, "--lengths", "uniform", "-o", path)
    assert code == 0 and read_edge_list(path).vertex_count == 20


def test_unknown_command():
    assert run("frobnicate")[0] == 2
