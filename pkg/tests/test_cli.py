import io
import json
import subprocess
import sys

import pytest

from fibexpr import cli
from fibexpr.expr import add, expand, mul, parse, render
from fibexpr.graph import enumerate_paths, fib_graph
from fibexpr.methods import gen_dfs


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_gen_dls_9():
    code, out, _ = run("gen", "--method", "dls", "--n", "9")
    assert code == 0
    e = parse(out.strip())
    assert expand(e) == enumerate_paths(fib_graph(9))
    assert out.count("+") == 14


def test_gen_seq_2():
    assert run("gen", "--method", "seq", "--n", "2")[:2] == (0, "a1\n")


def test_gen_gd_verified_json():
    code, out, _ = run("gen", "--method", "gd", "--n", "9", "--m", "3",
                       "--verify", "--format", "json")
    assert code == 0
    report = cli.RunReport.from_json(out)
    assert report.verified == "pass" and report.m == 3 and report.products == 34
    assert report.wall_time is None
    assert expand(parse(report.expr)) == enumerate_paths(fib_graph(9))


def test_gen_verify_skipped_above_expand_limit():
    code, out, _ = run("gen", "--method", "dls", "--n", "20", "--verify", "--format", "json")
    assert json.loads(out)["verified"] == "skipped"


def test_runreport_roundtrip():
    r = cli.RunReport("reduction", 9, None, 4, 35, 13, 34, "a1", "pass", 0.25)
    assert cli.RunReport.from_json(r.to_json()) == r
    assert set(json.loads(r.to_json())) == {
        "method", "n", "m", "seed", "terms", "plus_ops", "products", "expr",
        "verified", "wall_time"}


def test_gen_options():
    _, fork, _ = run("gen", "--method", "reduction-opt", "--n", "8", "--heavier", "fork")
    _, joint, _ = run("gen", "--method", "reduction-opt", "--n", "8")
    assert fork != joint
    _, opp, _ = run("gen", "--method", "dfs", "--n", "5", "--direction", "opposite")
    assert opp.strip() == render(gen_dfs(5, "opposite"))
    _, fixed, _ = run("gen", "--method", "decomposition", "--n", "7", "--strategy", "fixed:1")
    assert fixed.strip() == render(gen_dfs(7))


def test_gen_timing_flag():
    _, out, _ = run("gen", "--method", "dfs", "--n", "6", "--format", "json", "--timing")
    assert json.loads(out)["wall_time"] >= 0


def test_gen_deterministic_with_seed():
    a1 = run("gen", "--method", "reduction", "--n", "14", "--seed", "3", "--format", "json")
    a2 = run("gen", "--method", "reduction", "--n", "14", "--seed", "3", "--format", "json")
    assert a1 == a2


@pytest.mark.parametrize("argv", [
    ["gen", "--method", "nope", "--n", "5"],
    ["gen", "--method", "dfs", "--n", "1"],
    ["gen", "--method", "dfs", "--n", "x"],
    ["gen", "--method", "gd", "--n", "9"],
    ["gen", "--method", "gd", "--n", "9", "--m", "9"],
    ["gen", "--method", "decomposition", "--n", "9", "--strategy", "fixed:q"],
    ["gen", "--n", "5"],
    ["table", "--n", "9..3"],
    ["table", "--n", "a..b"],
    ["table", "--n", "5", "--method", "gd"],
    ["oracle", "dp", "--n", "1001"],
    ["oracle", "schedules", "--n", "17"],
    ["verify", "--n", "5", "--checks", "speed"],
    ["bogus"],
])
def test_usage_errors(argv, capsys):
    code, out, _ = run(*argv)
    assert code == 2
    assert out == ""


def test_size_guard_exit():
    code, out, err = run("gen", "--method", "seq", "--n", "40")
    assert code == 3 and "--force" in err and out == ""
    assert run("gen", "--method", "seq", "--n", "14", "--cap", "12")[0] == 3
    assert run("gen", "--method", "seq", "--n", "14", "--cap", "12", "--force")[0] == 0


def test_table_n9_markdown():
    code, out, _ = run("table", "--n", "9")
    assert code == 0
    rows = [line.split("|")[1:-1] for line in out.splitlines()[2:]]
    got = [(r[0].strip(), int(r[2]), int(r[3])) for r in rows]
    assert got == [("seq", 201, 33), ("dfs", 87, 33), ("dls", 39, 14),
                   ("reduction-opt", 35, 13), ("decomposition-opt", 31, 11)]


def test_table_csv_json_order():
    _, out, _ = run("table", "--n-range", "4..6", "--method", "dls,seq", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "method,n,terms,plus_ops,products"
    assert [l.split(",")[:2] for l in lines[1:]] == [
        ["seq", "4"], ["seq", "5"], ["seq", "6"], ["dls", "4"], ["dls", "5"], ["dls", "6"]]
    _, out, _ = run("table", "--n", "5", "--method", "reduction-opt", "--format", "json")
    assert json.loads(out) == [{"method": "reduction-opt", "n": 5, "terms": 9,
                                "plus_ops": 3, "products": 5}]


def test_table_trivial_and_beyond_cap():
    _, out, _ = run("table", "--n", "2", "--format", "json")
    assert {(r["terms"], r["plus_ops"]) for r in json.loads(out)} == {(1, 0)}
    code, out, _ = run("table", "--n", "100", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 5


def test_verify_dfs_counts():
    code, out, _ = run("verify", "--method", "dfs", "--n", "9", "--checks", "counts",
                       "--format", "json")
    rows = json.loads(out.split("OK:")[0])
    assert code == 0
    assert {(r["terms"], r["plus_ops"], r["counts"]) for r in rows} == {(87, 33, "pass")}


def test_verify_all():
    code, out, _ = run("verify", "--n", "2..15", "--all")
    assert code == 0
    assert "fail" not in out and out.rstrip().splitlines()[-1].startswith("OK:")


def test_verify_expand_limit():
    _, out, _ = run("verify", "--method", "dls", "--n", "16", "--checks", "expand",
                    "--format", "json")
    rows = json.loads(out.split("OK:")[0])
    assert {r["expand"] for r in rows} == {"skipped"}


def test_verify_catches_mutation(monkeypatch):
    good = cli.BUILDERS["dls"]

    def broken(n, opts):
        # drop one monomial: swap the last b-edge for an a-edge
        e = good(n, opts)
        return parse(render(e).replace(f"b{n - 2}", f"a{n - 2}", 1))

    monkeypatch.setitem(cli.BUILDERS, "dls", broken)
    code, out, _ = run("verify", "--method", "dls", "--n", "6..8")
    assert code == 1
    assert "FAIL" in out and "expression:" in out
    assert ("missing" in out) or ("unexpected" in out) or ("duplicate" in out)


def test_gen_verify_catches_mutation(monkeypatch):
    monkeypatch.setitem(cli.BUILDERS, "dfs", lambda n, o: add(mul(gen_dfs(n), gen_dfs(2))))
    code, out, _ = run("gen", "--method", "dfs", "--n", "5", "--verify", "--format", "json")
    assert code == 1 and json.loads(out)["verified"] == "fail"


def test_oracle_dp():
    code, out, _ = run("oracle", "dp", "--n", "9", "--objective", "P", "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["pmin"] == 11 and r["argmin"] == [5]
    _, out, _ = run("oracle", "dp", "--n", "7", "--objective", "P", "--format", "json")
    r = json.loads(out)
    assert set(r["argmin"]) - set(r["middle"])


def test_oracle_schedules():
    code, out, _ = run("oracle", "schedules", "--n", "9", "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["min"] == [35, 13]
    assert r["tmin_tallies"] == [[3, 3]] and r["pmin_tallies"] == [[3, 3]]
    _, text, _ = run("oracle", "schedules", "--n", "9")
    assert "(35,13)" in text


def test_module_entry_point_is_byte_identical():
    cmd = [sys.executable, "-m", "fibexpr", "gen", "--method", "reduction", "--n", "12",
           "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.strip()
