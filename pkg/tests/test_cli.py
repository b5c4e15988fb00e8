import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ergmlab import __version__
from ergmlab.cli import main
from ergmlab.graph import Graph, complete_bipartite, format_graph_text, parse_graph_text, path
from ergmlab.model import ErgmModel, dumps_model, indicator, loads_model

SCHEMAS = resources.files("ergmlab") / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, schema_name, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    obj = json.loads(out)
    jsonschema.validate(obj, schema(schema_name))
    return obj


@pytest.fixture
def files(tmp_path):
    def write(name, g):
        p = tmp_path / name
        p.write_text(format_graph_text(g))
        return p
    base = tmp_path / "base.json"
    base.write_text(dumps_model(ErgmModel(3, (indicator(Graph.complete(2), (0, 1), 2),))))
    return {
        "k3": write("k3.txt", Graph.complete(3)),
        "k2": write("k2.txt", Graph.complete(2)),
        "p2": write("p2.txt", path(3)),
        "p4": write("p4.txt", path(4)),
        "k33": write("k33.txt", complete_bipartite(3, 3)),
        "e9": write("e9.txt", Graph.empty(9)),
        "base": base,
        "dir": tmp_path,
    }


def test_partition_trifree_example(capsys, files):
    out = files["dir"] / "tri.json"
    built = run_json(capsys, "build-trifree", "build-trifree", "--graph", files["k3"], "--alpha", 4, "--out", out)
    assert built["beta"] == -16
    jsonschema.validate(json.loads(out.read_text()), schema("model"))
    res = run_json(capsys, "partition", "partition", "--model", out)
    assert res["integer_part"] == "817" and res["z"] == "13073*2^-4"
    assert res["digits"] == {"base_exponent": 4, "digits": ["1", "3", "3", "0"]}
    m = res["manifest"]
    assert m["command"] == "partition" and m["version"] == __version__
    assert list(m["inputs"].values())[0] == __import__("hashlib").sha256(out.read_bytes()).hexdigest()


def test_partition_engines_and_threads(capsys, files):
    model = files["dir"] / "tri.json"
    run(capsys, "build-trifree", "--graph", files["p4"], "--alpha", 7, "--out", model)
    zs = {run_json(capsys, "partition", "partition", "--model", model, "--threads", t)["z"] for t in (1, 2, 4)}
    zs.add(run_json(capsys, "partition", "partition", "--model", model, "--engine", "reference")["z"])
    assert len(zs) == 1
    code, _, err = run(capsys, "partition", "--model", model, "--engine", "two-vertex")
    assert code == 2 and "2" in err


def test_threads_env_fallback(capsys, files, monkeypatch):
    monkeypatch.setenv("ERGMLAB_THREADS", "3")
    res = run_json(capsys, "partition", "partition", "--model", files["base"])
    assert res["threads"] == 3


def test_decode(capsys, files):
    res = run_json(capsys, "decode", "decode", "--z", "13073*2^-4", "--n", 3, "--alpha", 4)
    assert res["digits"]["digits"] == ["1", "3", "3", "0"]
    mm = files["dir"] / "mm.json"
    run_json(capsys, "build-matching-model", "build-matching-model", "--graph", files["p4"], "--out", mm)
    res = run_json(capsys, "decode", "decode", "--model", mm)
    assert res["digits"]["digits"][:3] == ["1", "3", "1"]
    assert run(capsys, "decode", "--z", "5", "--n", 3)[0] == 2
    assert run(capsys, "decode", "--model", files["base"])[0] == 2
    assert run(capsys, "decode", "--z", "5", "--n", 3, "--alpha", 2)[0] == 2


def test_snub_outputs(capsys, files):
    out, roles = files["dir"] / "s.txt", files["dir"] / "r.json"
    res = run_json(capsys, "snub", "snub", "--graph", files["k33"], "--out", out, "--roles", roles)
    assert (res["edges"], res["triangles"]) == (45, 24)
    text = out.read_text()
    assert text.startswith("# manifest: ")
    assert parse_graph_text(text).num_edges() == 45
    jsonschema.validate(json.loads(roles.read_text()), schema("snub-roles"))
    rnd = run_json(capsys, "snub", "snub", "--graph", files["k33"], "--out", out, "--roles", roles,
                   "--randomize", "--seed", 3)
    assert rnd["manifest"]["seed"] == 3
    assert run(capsys, "snub", "--graph", files["k3"], "--out", out, "--roles", roles)[0] == 2


def test_replace_and_recover(capsys, files):
    new = files["dir"] / "new.json"
    res = run_json(capsys, "replace-feature", "replace-feature", "--model", files["base"], "--feature", 0,
                   "--pattern", files["p2"], "--embedding", "0:0,1:1", "--out", new)
    assert res["n"] == 6 and res["replacement"]["s"] == 3
    assert loads_model(new.read_text()).metadata["kind"] == "replaced"
    rec = run_json(capsys, "recover-partition", "recover-partition", "--model", new, "--old-model", files["base"])
    assert rec["window"] == rec["expected_window"] == "640"
    assert rec["z_old_recovered"] == rec["z_old"] == "20*2^-0"
    assert rec["window_matches"] and rec["exact_matches"]
    assert run(capsys, "replace-feature", "--model", files["base"], "--feature", 0, "--pattern", files["p2"],
               "--embedding", "0:0,1:2", "--out", new)[0] == 2
    assert run(capsys, "replace-feature", "--model", files["base"], "--feature", 5, "--pattern", files["p2"],
               "--embedding", "0:0,1:1", "--out", new)[0] == 2
    assert run(capsys, "recover-partition", "--model", files["base"])[0] == 2


def test_gap_check_example(capsys, files):
    res = run_json(capsys, "gap-check", "gap-check", "--graph", files["k3"], "--k", 2, "--flog", 3)
    assert res["verdict"] == "YES" and res["agrees"] and res["identity_holds"]
    assert res["yes_threshold"] == "1048576*2^-0" and res["no_threshold"] == "8192*2^-0"
    res = run_json(capsys, "gap-check", "gap-check", "--graph", files["k3"], "--k", 4, "--flog", 0)
    assert res["verdict"] == "NO" and res["agrees"]


def test_classify(capsys, files):
    res = run_json(capsys, "classify", "classify", "--patterns", files["k2"], files["p2"])
    assert (res["verdict"], res["case"], res["pattern_index"]) == ("sharp-p-hard", "P2", 1)
    res = run_json(capsys, "classify", "classify", "--patterns", files["k2"])
    assert res["verdict"] == "polynomial" and res["witness"] is None


def test_oracles(capsys, files):
    res = run_json(capsys, "oracle-trifree-census", "oracle", "trifree-census", "--graph", files["k3"])
    assert res["counts"] == ["1", "3", "3", "0"]
    res = run_json(capsys, "oracle-max-trifree", "oracle", "max-trifree", "--graph", files["k3"])
    assert (res["max_edges"], res["count"]) == (2, 3)
    res = run_json(capsys, "oracle-matchings", "oracle", "matchings", "--graph", files["k33"])
    assert res["perfect"] == res["permanent"] == "6"
    code, out, _ = run(capsys, "oracle", "trifree-census", "--graph", files["k3"], "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# manifest: ") and json.loads(lines[0][len("# manifest: "):])["command"] == "oracle"
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    assert rows == [["edges", "count"], ["0", "1"], ["1", "3"], ["2", "3"], ["3", "0"]]
    code, out, _ = run(capsys, "oracle", "matchings", "--graph", files["p4"], "--format", "csv")
    assert out.splitlines()[1:] == ["size,count", "0,1", "1,3", "2,1"]


def test_sample(capsys, files):
    model = files["dir"] / "tri.json"
    run(capsys, "build-trifree", "--graph", files["k3"], "--alpha", 4, "--out", model)
    a = run_json(capsys, "sample", "sample", "--model", model, "--steps", 20000, "--seed", 7, "--tv", "--check-k", 2)
    b = run_json(capsys, "sample", "sample", "--model", model, "--steps", 20000, "--seed", 7, "--tv", "--check-k", 2)
    assert a == b
    assert a["check"]["tri_free"] and a["check"]["rate"] > 0.8
    assert a["tv_distance"] is not None
    assert run(capsys, "sample", "--model", files["base"], "--steps", 10, "--check-k", 1)[0] == 2


def test_sample_size_cap(capsys, files):
    big = files["dir"] / "big.json"
    big.write_text(dumps_model(ErgmModel(6, ())))
    assert run(capsys, "sample", "--model", big, "--steps", 10, "--tv")[0] == 3
    assert run_json(capsys, "sample", "sample", "--model", big, "--steps", 10)["tv_distance"] is None


def test_verify_parsimony(capsys, files):
    res = run_json(capsys, "verify-parsimony", "verify-parsimony", "--graph", files["k33"])
    assert (res["matchings"], res["max_trifree_count"], res["status"]) == (6, 6, "PASS")


def test_verify_all_filter_and_fault_injection(capsys, files):
    res = run_json(capsys, "verify-all", "verify-all", "--filter", "digits")
    assert [r["key"] for r in res["results"]] == ["digits"] and res["passed"]
    model = files["dir"] / "tri.json"
    run(capsys, "build-trifree", "--graph", files["k3"], "--alpha", 4, "--out", model)
    obj = json.loads(model.read_text())
    obj["features"][-1]["weight"] = "-15"
    model.write_text(json.dumps(obj))
    code, out, err = run(capsys, "verify-all", "--filter", "dichotomy", "--model", model)
    assert code == 1
    failed = [r for r in json.loads(out)["results"] if not r["passed"]]
    assert failed and "beta weight" in failed[0]["detail"]
    assert "[FAIL] model" in err
    assert run(capsys, "verify-all", "--filter", "nothing-matches")[0] == 2


def test_verify_all_csv(capsys):
    code, out, _ = run(capsys, "verify-all", "--filter", "snub", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert rows[0] == ["key", "name", "passed", "detail", "seconds"] and rows[1][:3] == ["snub", rows[1][1], "True"]


def test_exit_codes(capsys, files):
    assert run(capsys, "frobnicate")[0] == 64
    code, _, err = run(capsys)
    assert code == 64 and "usage" in err
    assert run(capsys, "partition", "--model", files["dir"] / "missing.json")[0] == 2
    assert run(capsys, "partition")[0] == 2
    big = files["dir"] / "big.json"
    run(capsys, "build-trifree", "--graph", files["e9"], "--alpha", 40, "--out", big)
    assert run(capsys, "partition", "--model", big)[0] == 3
    census_big = files["dir"] / "k8.txt"
    census_big.write_text(format_graph_text(Graph.complete(8)))
    assert run(capsys, "oracle", "trifree-census", "--graph", census_big)[0] == 3
    bad = files["dir"] / "bad.txt"
    bad.write_text("3 1\n2 1\n")
    assert run(capsys, "classify", "--patterns", bad)[0] == 2
    assert run(capsys, "build-matching-model", "--graph", files["k3"], "--out", files["dir"] / "x.json")[0] == 2


def test_outputs_are_deterministic(capsys, files):
    a = run(capsys, "oracle", "max-trifree", "--graph", files["k33"])
    b = run(capsys, "oracle", "max-trifree", "--graph", files["k33"])
    assert a == b


def test_every_schema_is_valid():
    names = [p.name for p in SCHEMAS.iterdir() if p.name.endswith(".json")]
    assert len(names) >= 16
    for name in names:
        jsonschema.Draft202012Validator.check_schema(json.loads((SCHEMAS / name).read_text()))


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "ergmlab.cli", "oracle", "matchings", "--graph", str(files["k33"])],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["perfect"] == "6"
