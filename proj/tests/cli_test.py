"""End-to-end checks of the rbm command-line tool.

Usage: cli_test.py <path to rbm> <schema directory>
"""

import csv
import io
import json
import math
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource
from scipy import stats

RBM = None
SCHEMA_DIR = None


def run(*args, env=None, check_rc=0):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("RBM_")}
    if env:
        full_env.update(env)
    proc = subprocess.run([RBM, *map(str, args)], capture_output=True, text=True, env=full_env)
    if check_rc is not None and proc.returncode != check_rc:
        raise AssertionError(
            f"rbm {' '.join(map(str, args))}: exit {proc.returncode}, expected {check_rc}\n{proc.stderr}")
    return proc


def run_json(*args, **kw):
    return json.loads(run(*args, "--format", "json", "--out", "-", **kw).stdout)


def eval_fields(*args, **kw):
    out = run("eval", *args, **kw).stdout
    return dict(line.split("=", 1) for line in out.strip().splitlines())


class SchemaMixin:
    @classmethod
    def setUpClass(cls):
        resources = []
        cls.schemas = {}
        for path in pathlib.Path(SCHEMA_DIR).glob("*.schema.json"):
            doc = json.loads(path.read_text())
            cls.schemas[path.name] = doc
            resources.append((doc["$id"], Resource.from_contents(doc)))
        cls.registry = Registry().with_resources(resources)

    def validate(self, doc, name):
        schema = self.schemas[name]
        jsonschema.Draft202012Validator.check_schema(schema)
        jsonschema.Draft202012Validator(schema, registry=self.registry).validate(doc)


class ExitCodes(unittest.TestCase):
    def test_usage_errors(self):
        run("eval", "no-such-evaluator", check_rc=2)
        run("eval", "cdf", "--sigma", "-1", "--u", "1", "--T", "1", check_rc=2)
        run("eval", "cdf", "--u", "abc", check_rc=2)
        run("simulate", "--bogus-flag", check_rc=2)
        run(check_rc=2)
        run("sup-cdf", "--u-min", "2", "--u-max", "1", check_rc=2)
        run("simulate", "--format", "csv", "--out", "-", check_rc=2)

    def test_unsupported_regime_is_a_usage_error(self):
        proc = run("eval", "sup-tail-asym", "--sigma", "2", "--u", "5", "--T", "1", check_rc=2)
        self.assertIn("unsupported", proc.stderr)
        run("eval", "stationary-joint-asym", "--lambda", "2", "--xr", "1", "--u", "3", "--z", "0", "--T", "1",
            check_rc=2)

    def test_unwritable_output(self):
        run("simulate", "--out", "/nonexistent-dir/trajectory.csv", check_rc=1)

    def test_forced_validation_failure(self):
        proc = run("validate", "--suite", "numerics", "--tol-scale", "1e-30", "--out", "-", check_rc=1)
        report = json.loads(proc.stdout)
        self.assertFalse(report["passed"])
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        self.assertIn("quad_polynomial_exact", failed)
        self.assertIn("quad_polynomial_exact", proc.stderr)

    def test_version(self):
        self.assertTrue(run("--version").stdout.strip())


class Schemas(SchemaMixin, unittest.TestCase):
    def test_validate_report(self):
        doc = json.loads(run("validate", "--suite", "numerics", "--out", "-").stdout)
        self.assertTrue(doc["passed"])
        self.validate(doc, "report.schema.json")

    def test_curve(self):
        doc = run_json("sup-cdf", "--lambdas", "1,2", "--u-max", "0.5", "--step", "0.1", "--mc-samples", "50",
                       "--n-max", "8")
        self.assertEqual(len(doc["rows"]), 12)
        self.validate(doc, "rows.schema.json")

    def test_tables(self):
        for args in (["table1", "--mc-samples", "5", "--n-max", "10"],
                     ["table2", "--mc-samples", "50", "--step", "0.05"],
                     ["table3", "--mc-samples", "50", "--step", "0.05"]):
            self.validate(run_json(*args), "rows.schema.json")

    def test_trajectory(self):
        doc = run_json("simulate", "--T", "1", "--step", "0.1")
        self.validate(doc, "trajectory.schema.json")

    def test_eval(self):
        for args in (["alpha", "--lambda", "2"], ["mean-fpt-series", "--u", "1", "--lambda", "1.2",
                                                   "--mc-samples", "5", "--n-max", "5"],
                     ["sup-bounds", "--u", "1", "--T", "1"]):
            self.validate(run_json("eval", *args), "eval.schema.json")

    def test_config_file(self):
        cfg = {"lambda": 2, "c": 0.5, "xr": 1, "T": 1.5, "seed": 7, "lambdas": [0.5, 1], "format": "csv"}
        self.validate(cfg, "config.schema.json")


class Determinism(unittest.TestCase):
    def test_byte_identical_outputs(self):
        with tempfile.TemporaryDirectory() as d:
            outs = []
            for k in range(2):
                p = pathlib.Path(d) / f"curve{k}.csv"
                run("sup-cdf", "--lambdas", "2", "--u-max", "2", "--step", "0.25", "--mc-samples", "200",
                    "--workers", str(1 + 3 * k), "--out", p)
                outs.append(p.read_bytes())
                t = pathlib.Path(d) / f"traj{k}.csv"
                run("simulate", "--seed", "99", "--out", t)
                outs.append(t.read_bytes() + (pathlib.Path(d) / f"traj{k}.resets.csv").read_bytes())
            self.assertEqual(outs[0], outs[2])
            self.assertEqual(outs[1], outs[3])

    def test_csv_headers_and_locale_free_numbers(self):
        out = run("sup-cdf", "--lambdas", "2", "--u-max", "0.3", "--step", "0.1", "--mc-samples", "20",
                  "--out", "-").stdout
        rows = list(csv.reader(io.StringIO(out)))
        self.assertEqual(rows[0], ["lambda", "u", "cdf", "mc_std_err", "truncation_bound"])
        for row in rows[1:]:
            for cell in row:
                float(cell)
        cdf = [float(r[2]) for r in rows[1:]]
        self.assertEqual(cdf, sorted(cdf))


class Precedence(unittest.TestCase):
    def test_flag_over_env_over_file(self):
        with tempfile.TemporaryDirectory() as d:
            cfg = pathlib.Path(d) / "cfg.json"
            cfg.write_text(json.dumps({"lambda": 0.5, "u": 1}))
            args = ("--config", cfg)
            base = float(eval_fields("mean-fpt-exact", *args)["value"])
            self.assertAlmostEqual(base, math.expm1(1.0) / 0.5, places=12)
            env = float(eval_fields("mean-fpt-exact", *args, env={"RBM_LAMBDA": "2"})["value"])
            self.assertAlmostEqual(env, math.expm1(2.0) / 2.0, places=12)
            flag = float(eval_fields("mean-fpt-exact", *args, "--lambda", "1", env={"RBM_LAMBDA": "2"})["value"])
            self.assertAlmostEqual(flag, math.expm1(math.sqrt(2.0)), places=12)

    def test_env_name_mapping_and_echo(self):
        doc = run_json("sup-cdf", "--lambdas", "2", "--step", "0.5", "--mc-samples", "5",
                       env={"RBM_U_MAX": "1", "RBM_N_MAX": "3"})
        self.assertEqual(doc["config"]["u-max"], 1.0)
        self.assertEqual(doc["config"]["n-max"], 3)
        self.assertEqual([r["u"] for r in doc["rows"]], [0.0, 0.5, 1.0])

    def test_bad_config_file(self):
        run("eval", "alpha", "--config", "/nonexistent.json", check_rc=2)


class Simulate(unittest.TestCase):
    def test_default_run(self):
        with tempfile.TemporaryDirectory() as d:
            p = pathlib.Path(d) / "path.csv"
            run("simulate", "--out", p)
            rows = list(csv.reader(p.open()))
            self.assertEqual(rows[0], ["t", "x"])
            self.assertEqual((float(rows[1][0]), float(rows[1][1])), (0.0, 0.0))
            self.assertAlmostEqual(float(rows[-1][0]), 3.0)
            resets = list(csv.reader((pathlib.Path(d) / "path.resets.csv").open()))
            self.assertEqual(resets[0], ["t", "left_limit", "x"])
            for r in resets[1:]:
                self.assertEqual(float(r[2]), 1.0)

    def test_no_resets_without_rate(self):
        with tempfile.TemporaryDirectory() as d:
            p = pathlib.Path(d) / "path.csv"
            run("simulate", "--lambda", "0", "--out", p)
            resets = (pathlib.Path(d) / "path.resets.csv").read_text().strip().splitlines()
            self.assertEqual(resets, ["t,left_limit,x"])

    def test_reset_counts_are_poisson(self):
        # Reset epochs do not depend on the grid step, so a coarse grid is used.
        counts = []
        for seed in range(1, 1001):
            doc = run_json("simulate", "--T", "3", "--step", "0.5", "--seed", seed)
            counts.append(len(doc["resets"]))
        mu = 6.0
        observed = [sum(c <= 2 for c in counts)] + [counts.count(k) for k in range(3, 11)] + \
                   [sum(c >= 11 for c in counts)]
        probs = [stats.poisson.cdf(2, mu)] + [stats.poisson.pmf(k, mu) for k in range(3, 11)] + \
                [stats.poisson.sf(10, mu)]
        expected = [1000 * p for p in probs]
        _, pvalue = stats.chisquare(observed, expected)
        self.assertGreater(pvalue, 1e-3)


class Evaluators(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(float(eval_fields("mean-fpt-exact", "--lambda", "0.1", "--u", "1")["value"]),
                               5.639483, places=6)
        self.assertEqual(float(eval_fields("alpha", "--lambda", "2", "--sigma", "1", "--c", "0")["value"]), 2.0)
        self.assertAlmostEqual(float(eval_fields("optimize-lambda", "--u", "1")["value"]), 1.2698, places=3)
        self.assertAlmostEqual(float(eval_fields("window-constant", "--c", "0", "--delta", "1")["value"]),
                               math.sqrt(2 / math.pi), places=12)
        self.assertAlmostEqual(
            float(eval_fields("stationary-sup-asym", "--lambda", "2", "--xr", "1", "--u", "2.5", "--T", "1")["value"]),
            0.13677, places=5)

    def test_table_reference_columns(self):
        rows = run_json("table1", "--mc-samples", "5", "--n-max", "10")["rows"]
        self.assertEqual(len(rows), 11)
        for r in rows:
            self.assertLessEqual(abs(r["exact"] - r["reference_exact"]), 1e-5)
        rows = run_json("table2", "--mc-samples", "50", "--step", "0.05")["rows"]
        asym = [0.13677, 0.05031518, 0.01850992, 0.006809419, 0.002505]
        for r, a in zip(rows, asym):
            self.assertLessEqual(abs(r["asym"] / a - 1.0), 1e-4)

    def test_sup_cdf_tends_to_one(self):
        doc = run_json("sup-cdf", "--lambdas", "0.5", "--u-min", "6", "--u-max", "6", "--mc-samples", "200")
        row = doc["rows"][0]
        self.assertLessEqual(1.0 - row["cdf"], row["truncation_bound"] + 3 * row["mc_std_err"] + 1e-9)


if __name__ == "__main__":
    RBM, SCHEMA_DIR = sys.argv[1], sys.argv[2]
    unittest.main(argv=[sys.argv[0], "-v"])
