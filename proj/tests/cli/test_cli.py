"""End-to-end checks of the iminfer command line: outputs, schemas, exit codes."""
import csv
import io
import json
import math
import os
import pathlib
import subprocess

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]
BIN = os.environ.get("IMINFER_BIN", str(ROOT / "build" / "tools" / "iminfer"))
DATA = ROOT / "data"
SCHEMAS = ROOT / "schemas"


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, env=None, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    assert proc.returncode == expect, (args, proc.returncode, proc.stderr)
    return proc


def run_json(*args, schema=None, expect=0):
    doc = json.loads(run(*args, expect=expect).stdout)
    if schema:
        validate(doc, schema)
    return doc


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


# --- believe ---------------------------------------------------------------

def test_believe_normal_mean_monte_carlo():
    doc = run_json("believe", "--model", "normal-mean", "--x", "0", "--assertion", "(-inf,1.959964]",
                   "--draws", "100000", schema="believe.schema.json")
    assert abs(doc["belief"] - 0.95) <= 3 * doc["belief_mc_se"] + 1e-6
    assert doc["seed"] == 20160518
    assert doc["draws"] == 100000


def test_believe_whole_line():
    doc = run_json("believe", "--model", "normal-mean", "--x", "1.3", "--assertion", "(-inf,inf)",
                   schema="believe.schema.json")
    assert doc["belief"] == 1.0 and doc["plausibility"] == 1.0


def test_believe_closed_form():
    doc = run_json("believe", "--model", "normal-mean", "--x", "0", "--assertion", "(-inf, 1.959964]",
                   "--draws", "0", schema="believe.schema.json")
    assert doc["method"] == "closed-form"
    assert doc["belief"] == pytest.approx(0.95, abs=1e-6)


def test_believe_cv_sample_is_reproducible():
    args = ("believe", "--model", "normal-cv", "--data", str(DATA / "cv_mu0.1_n10.csv"), "--assertion", "(-inf,9]",
            "--draws", "20000")
    first = run(*args).stdout
    assert first == run(*args).stdout
    doc = json.loads(first)
    validate(doc, "believe.schema.json")
    assert doc["n"] == 10
    assert 0.0 <= doc["belief"] <= doc["plausibility"] <= 1.0
    closed = run_json(*args[:-2], "--draws", "0")
    assert abs(doc["belief"] - closed["belief"]) <= 3 * doc["belief_mc_se"] + 1e-9


def test_believe_seed_changes_draws():
    base = ("believe", "--model", "normal-mean", "--x", "0.2", "--assertion", "[0,1]", "--draws", "5000")
    a = run_json(*base)
    b = run_json(*base, "--seed", "7")
    assert b["seed"] == 7
    assert a["belief"] != b["belief"]


# --- curve -------------------------------------------------------------------

def curve(dataset, grid="-20:20:401"):
    out = run("curve", "--model", "normal-cv", "--data", str(DATA / dataset), "--theta-grid", grid)
    assert out.stderr.strip() == "seed=20160518"
    rows = read_csv(out.stdout)
    assert rows[0] == ["theta", "plausibility"]
    return [(float(t), float(p)) for t, p in rows[1:]]


def test_curve_shapes():
    strong = curve("cv_mu1_n30.csv", "0.2:4:381")
    assert len(strong) == 381
    assert strong[0][1] < 1e-3 and strong[-1][1] < 0.05
    assert max(p for _, p in strong) > 0.98
    weak = curve("cv_mu0_n30.csv")
    assert min(p for t, p in weak if abs(t) > 10) > 0.05


def test_curve_normal_mean_peak_on_grid():
    out = run("curve", "--model", "normal-mean", "--x", "0.5", "--theta-grid", "-2:3:11")
    rows = read_csv(out.stdout)[1:]
    assert ["0.5", "1"] in rows


# --- interval ----------------------------------------------------------------

def test_interval_normal_mean():
    doc = run_json("interval", "--model", "normal-mean", "--x", "0", "--alpha", "0.05", schema="interval.schema.json")
    (c,) = doc["region"]["components"]
    assert c["lo"] == pytest.approx(-1.959964, abs=1e-6)
    assert c["hi"] == pytest.approx(1.959964, abs=1e-6)


def test_interval_grid_method_matches():
    exact = run_json("interval", "--model", "normal-mean", "--x", "0.3", "--alpha", "0.2")
    grid = run_json("interval", "--model", "normal-mean", "--x", "0.3", "--alpha", "0.2", "--scan-grid",
                    "-10:10:201", schema="interval.schema.json")
    for a, b in zip(exact["region"]["components"], grid["region"]["components"]):
        assert a["lo"] == pytest.approx(b["lo"], abs=1e-8)
        assert a["hi"] == pytest.approx(b["hi"], abs=1e-8)


def test_interval_cv_unbounded_and_nested():
    wide = run_json("interval", "--model", "normal-cv", "--data", str(DATA / "cv_mu0_n30.csv"), "--alpha", "0.05",
                    schema="interval.schema.json")
    assert not wide["bounded"]
    assert wide["region"]["components"][0]["lo"] == "-inf"
    assert wide["region"]["components"][-1]["hi"] == "inf"
    bounded = run_json("interval", "--model", "normal-cv", "--data", str(DATA / "cv_mu1_n30.csv"), "--alpha", "0.05")
    assert bounded["bounded"]
    narrow = run_json("interval", "--model", "normal-cv", "--data", str(DATA / "cv_mu1_n30.csv"), "--alpha", "0.5")
    (w,), (n,) = bounded["region"]["components"], narrow["region"]["components"]
    assert w["lo"] <= n["lo"] and n["hi"] <= w["hi"]


# --- audit -------------------------------------------------------------------

def test_audit_validity_examples():
    far = run_json("audit", "--mode", "validity", "--model", "normal-mean", "--theta", "0", "--assertion",
                   "(-inf,-10]", schema="audit-validity.schema.json")
    assert all(p["value"] < 1e-12 for p in far["ecdf"])
    boundary = run_json("audit", "--mode", "validity", "--model", "normal-mean", "--theta", "0", "--assertion",
                        "(-inf,0)", schema="audit-validity.schema.json")
    assert boundary["all_satisfied"]
    ref = run_json("audit", "--mode", "validity", "--model", "normal-cv", "--mu", "0.1", "--sigma", "1", "--n", "10",
                    "--assertion", "(-inf,9]", schema="audit-validity.schema.json")
    assert ref["form"] == "belief" and ref["all_satisfied"]
    assert [p["alpha"] for p in ref["per_alpha"]] == [0.01, 0.05, 0.1, 0.25, 0.5]
    assert len(ref["ecdf"]) == 1000


def test_audit_true_assertion_uses_plausibility_form():
    doc = run_json("audit", "--mode", "validity", "--model", "normal-mean", "--theta", "0", "--assertion", "[-1,1]",
                   "--alphas", "0.05,0.5", schema="audit-validity.schema.json")
    assert doc["form"] == "plausibility" and doc["truth_in_assertion"]


def test_audit_coverage():
    doc = run_json("audit", "--mode", "coverage", "--model", "normal-mean", "--reps", "2000",
                   schema="audit-coverage.schema.json")
    assert abs(doc["coverage_rate"] - 0.95) <= 3 * doc["mc_se"]
    assert "fraction_unbounded" not in doc
    cv = run_json("audit", "--mode", "coverage", "--model", "normal-cv", "--mu", "0", "--n", "30", "--reps", "500",
                  schema="audit-coverage.schema.json")
    assert cv["fraction_unbounded"] > 0


def test_audit_violation_exit_code():
    # One Monte Carlo draw per replication makes the estimate 0 or 1, so
    # P(b > 0.99) becomes E[b] = 0.25 for this boundary assertion.
    doc = run_json("audit", "--mode", "validity", "--model", "normal-mean", "--theta", "0", "--assertion",
                   "(-inf,0)", "--draws", "1", "--alphas", "0.01", expect=4)
    assert not doc["all_satisfied"]
    assert doc["per_alpha"][0]["exceedance_rate"] == pytest.approx(0.25, abs=0.05)


# --- compare -----------------------------------------------------------------

def test_compare_small_run(tmp_path):
    summary = tmp_path / "summary.json"
    args = ("compare", "--reps", "10", "--posterior-draws", "10000", "--summary", str(summary))
    first = run(*args)
    rows = read_csv(first.stdout)
    assert rows[0] == ["quantile_uniform", "im_belief", "bayes_posterior"]
    assert len(rows) == 11
    validate(json.loads(summary.read_text()), "compare-summary.schema.json")
    assert "seed=20160518" in first.stderr
    assert run(*args).stdout == first.stdout


# --- discrete-demo -------------------------------------------------------------

def test_discrete_demo_examples():
    doc = run_json("discrete-demo", "--frame", "a,b,c", "--mass", "{a}=0.3;{a,b}=0.5;{a,b,c}=0.2", "--query", "{a}",
                   "--query", "{a,b}", "--query", "{c}", schema="discrete-demo.schema.json")
    q = {tuple(r["set"]): r for r in doc["queries"]}
    assert q[("a",)]["belief"] == pytest.approx(0.3)
    assert q[("a", "b")]["belief"] == pytest.approx(0.8)
    assert q[("c",)]["plausibility"] == pytest.approx(0.2)
    assert q[("a",)]["plausibility"] == pytest.approx(1.0)


def test_discrete_demo_vacuous_weekdays():
    doc = run_json("discrete-demo", "--query", "{Sat,Sun}", schema="discrete-demo.schema.json")
    (row,) = doc["queries"]
    assert row["belief"] == 0.0 and row["plausibility"] == 1.0


def test_discrete_demo_errors():
    run("discrete-demo", "--frame", "a,b", "--mass", "{a}=0.5", expect=3)
    run("discrete-demo", "--frame", "a,b", "--mass", "{}=0.5;{a}=0.5", expect=3)
    run("discrete-demo", "--frame", "a,b", "--query", "{z}", expect=2)


# --- simulate and shipped data --------------------------------------------------

@pytest.mark.parametrize("name,mu,n", [("cv_mu1_n30.csv", "1", "30"), ("cv_mu0_n30.csv", "0", "30"),
                                       ("cv_mu0.1_n10.csv", "0.1", "10")])
def test_shipped_data_regenerates(name, mu, n):
    out = run("simulate", "--mu", mu, "--sigma", "1", "--n", n)
    assert out.stdout == (DATA / name).read_text()


# --- exit codes ------------------------------------------------------------------

def test_usage_errors_exit_2():
    err = run("believe", "--model", "normal-mean", "--x", "0", "--assertion", "(-inf,9", expect=2).stderr
    assert "--assertion" in err
    assert "--model" in run("believe", "--model", "poisson", "--x", "0", "--assertion", "[0,1]", expect=2).stderr
    assert "--alpha" in run("interval", "--model", "normal-mean", "--x", "0", "--alpha", "1.5", expect=2).stderr
    assert "--theta-grid" in run("curve", "--model", "normal-mean", "--x", "0", "--theta-grid", "1:0:5",
                                 expect=2).stderr
    run("audit", "--mode", "validity", "--model", "normal-mean", "--assertion", "[0,1]", "--reps", "10", expect=2)
    run("audit", "--mode", "sideways", "--model", "normal-mean", expect=2)
    run(expect=2)
    run("believe", "--model", "normal-mean", "--x", "0", "--data", "x.csv", "--assertion", "[0,1]", expect=2)


def test_model_errors_exit_3(tmp_path):
    flat = tmp_path / "flat.csv"
    flat.write_text("x\n1\n1\n1\n")
    err = run("believe", "--model", "normal-cv", "--data", str(flat), "--assertion", "[0,1]", expect=3).stderr
    assert "DegenerateSample" in err
    bad = tmp_path / "bad.csv"
    bad.write_text("x\n1\nfoo\n")
    run("interval", "--model", "normal-cv", "--data", str(bad), "--alpha", "0.1", expect=3)
    run("interval", "--model", "normal-cv", "--data", str(tmp_path / "missing.csv"), "--alpha", "0.1", expect=3)


# --- determinism -------------------------------------------------------------------

@pytest.mark.parametrize("args", [
    ("believe", "--model", "normal-cv", "--data", str(DATA / "cv_mu0.1_n10.csv"), "--assertion", "(-inf,9]",
     "--draws", "30000"),
    ("audit", "--mode", "validity", "--model", "normal-cv", "--assertion", "(-inf,9]", "--reps", "300"),
    ("compare", "--reps", "20", "--posterior-draws", "10000"),
])
def test_output_independent_of_threads(args):
    outputs = set()
    for threads in ("1", "2", "5"):
        env = dict(os.environ, IM_INFER_THREADS=threads)
        outputs.add(run(*args, env=env).stdout)
    assert len(outputs) == 1


def test_number_formatting_is_plain():
    doc = run("interval", "--model", "normal-cv", "--data", str(DATA / "cv_mu0_n30.csv"), "--alpha", "0.05").stdout
    assert "Infinity" not in doc and "NaN" not in doc and "null" not in doc
    assert math.isfinite(json.loads(doc)["statistic"])
