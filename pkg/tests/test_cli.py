import json
import subprocess
import sys

CLI = [sys.executable, "-m", "masseykit.cli"]


def run_cli(args, stdin=None):
    return subprocess.run(CLI + args, input=stdin, capture_output=True,
                          text=True)


def test_goncharova_cli():
    res = run_cli(["goncharova", "--qmax", "2", "--wmax", "8"])
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["schema"] == 1
    got = {(e["q"], e["w"]) for e in data["entries"]}
    assert got == {(1, 1), (1, 2), (2, 5), (2, 7)}


def test_generate_and_betti_pipe():
    gen = run_cli(["generate", "polygon", "--m", "4"])
    assert gen.returncode == 0
    res = run_cli(["betti"], stdin=gen.stdout)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["total"] == {"0": 1, "3": 2, "6": 1}


def test_betti_simplex_single_unit():
    simplex = json.dumps({"m": 3, "minimal_nonfaces": []})
    res = run_cli(["betti"], stdin=simplex)
    data = json.loads(res.stdout)
    assert data["entries"] == [{"i": 0, "I": [], "dim": 1}]


def test_betti_csv():
    res = run_cli(["betti", "--format", "csv"],
                  stdin=json.dumps({"m": 2, "minimal_nonfaces": [[1, 2]]}))
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "i,I,dim"


def test_generate_qn_pipe_massey():
    gen = run_cli(["generate", "qn", "--n", "3"])
    assert gen.returncode == 0
    res = run_cli(["massey", "--supports", "1,4;2,5;3,6"], stdin=gen.stdout)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["status"] == "strict"
    assert data["triviality"] == "nontrivial"
    assert data["strict"] is True


def test_kstep_cli():
    res = run_cli(["kstep", "--lie", '{"name": "m0", "W": 12}',
                   "--classes", "0,1;1,0;0,1", "--k", "1"])
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["defined"] is True
    assert len(data["tuple"]) == 2


def test_mainlemma_cli():
    gen = run_cli(["generate", "qn", "--n", "3"])
    res = run_cli(["mainlemma", "--supports", "1,4;2,5;3,6",
                   "--dims", "0;0;0"], stdin=gen.stdout)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["cond1"] and data["cond2"]


def test_golod_cli():
    res = run_cli(["golod", "--order-cap", "3"],
                  stdin=json.dumps({"m": 4,
                                    "minimal_nonfaces": [[1, 3], [2, 4]]}))
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["status"] == "not-golod"


def test_triple_scan_cli_streams_jsonl():
    gen = run_cli(["generate", "polygon", "--m", "6"])
    res = run_cli(["triple-scan"], stdin=gen.stdout)
    assert res.returncode == 0
    lines = [json.loads(l) for l in res.stdout.splitlines() if l.strip()]
    assert lines
    assert all("status" in l and "supports" in l for l in lines)


def test_poincare_cli():
    ring = json.dumps({"n": 1, "gens": [[2]]})
    res = run_cli(["poincare", "--order", "5"], stdin=ring)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["tor_dims"] == [1] * 6
    assert data["golod_equality"] is True


def test_bad_input_exit_2():
    res = run_cli(["betti"], stdin="{not json")
    assert res.returncode == 2


def test_cap_exceeded_exit_3():
    big = json.dumps({"m": 15, "minimal_nonfaces": [[1, 2]]})
    res = run_cli(["betti"], stdin=big)
    assert res.returncode == 3


def test_deterministic_output():
    gen = run_cli(["generate", "qn", "--n", "3"]).stdout
    a = run_cli(["massey", "--supports", "1,4;2,5;3,6"], stdin=gen).stdout
    b = run_cli(["massey", "--supports", "1,4;2,5;3,6"], stdin=gen).stdout
    assert a == b


def test_cohomology_cli_named_algebra():
    lie = json.dumps({
        "name": "m0", "W": 8,
    })
    res = run_cli(["cohomology", "--qmax", "2", "--wmax", "8"], stdin=lie)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    dims = {(e["q"], e["w"]): e["dim"] for e in data["entries"]}
    assert dims[(1, 1)] == 1 and dims[(1, 2)] == 1
    assert dims.get((2, 5)) == 1 and (2, 4) not in dims


def test_cohomology_cli_explicit_presentation():
    # three-generator two-step algebra: [e1, e2] = e3
    lie = json.dumps({
        "W": 4,
        "generators": [{"i": 1, "w": 1}, {"i": 2, "w": 1}, {"i": 3, "w": 2}],
        "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}],
    })
    res = run_cli(["cohomology", "--qmax", "2", "--wmax", "4"], stdin=lie)
    assert res.returncode == 0
    data = json.loads(res.stdout)
    dims = {(e["q"], e["w"]): e["dim"] for e in data["entries"]}
    # H^1 is spanned by e^1, e^2 (weight 1); e^3 is not closed
    assert dims.get((1, 1)) == 2
    assert (1, 2) not in dims
    # H^2: e^1 ^ e^3 and e^2 ^ e^3 are closed and not exact (weight 3)
    assert dims.get((2, 3)) == 2
