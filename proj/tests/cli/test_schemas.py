import json
import unittest
from pathlib import Path

from jsonschema import Draft202012Validator

from common import DATA, SCHEMAS, fixture, run, scratch_dir


def validator(name):
    schema = json.loads((SCHEMAS / name).read_text())
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


class Schemas(unittest.TestCase):
    def assertValid(self, schema, doc):
        errors = sorted(validator(schema).iter_errors(doc), key=lambda e: list(e.path))
        self.assertEqual([f"{list(e.path)}: {e.message}" for e in errors], [])

    def test_every_schema_is_well_formed(self):
        names = sorted(p.name for p in SCHEMAS.glob("*.schema.json"))
        self.assertGreaterEqual(len(names), 9)
        for name in names:
            validator(name)

    def test_fixtures(self):
        for path in DATA.glob("*.json"):
            if path.name == "malformed.json":
                continue
            self.assertValid("tuple.schema.json", json.loads(path.read_text()))

    def test_check(self):
        for name, code in (("example22.json", 0), ("diagonal.json", 1)):
            got, rep, _ = run("check", fixture(name))
            self.assertEqual(got, code)
            self.assertValid("check.schema.json", rep)

    def test_defect(self):
        for args in (("--kind", "S", "--l", 2), ("--kind", "M", "--l", 1), ("--kind", "Lambda", "--m", 2, "--n", 1)):
            _, rep, _ = run("defect", fixture("example22.json"), *args)
            self.assertValid("defect.schema.json", rep)

    def test_minimal(self):
        _, rep, _ = run("minimal", fixture("example22.json"), "--m-max", 3, "--n-max", 3)
        self.assertValid("minimal.schema.json", rep)

    def test_spectrum(self):
        for name in ("example22.json", "hermitian_pair.json", "zero_coordinate.json", "diagonal.json"):
            _, rep, _ = run("spectrum", fixture(name), "--m", 1, "--n", 1)
            self.assertValid("spectrum.schema.json", rep)
        _, rep, _ = run("spectrum", fixture("diagonal.json"))
        self.assertValid("spectrum.schema.json", rep)

    def test_construct(self):
        with scratch_dir() as tmp:
            q = Path(tmp) / "q.json"
            cases = [
                ("example22",),
                ("nilpotent", "--d", 2, "--dim", 3, "--q", 2, "--out", q),
                ("random", "--d", 2, "--dim", 3, "--seed", 1),
                ("jordan", "--mu", "1,0.5", "--q", 3, "--base", fixture("jordan.json")),
                ("scaled", "--base", fixture("jordan.json"), "--beta", "0.6,0.8"),
                ("tensor", "--left", fixture("example22.json"), "--right", q),
            ]
            for args in cases:
                code, rep, err = run("construct", *args)
                self.assertEqual(code, 0, err)
                self.assertValid("construct.schema.json", rep)
                if "tuple" in rep["results"]:
                    self.assertValid("tuple.schema.json", rep["results"]["tuple"])
            self.assertValid("tuple.schema.json", json.loads(q.read_text()))

    def test_verify_passing(self):
        code, rep, _ = run("verify", "--suite", "all", "--trials", 5, "--seed", 2)
        self.assertEqual(code, 0)
        self.assertValid("verify.schema.json", rep)
        for suite in rep["results"]["suites"]:
            self.assertValid("suite_report.schema.json", suite)

    def test_verify_failing_writes_counterexamples(self):
        with scratch_dir() as tmp:
            dump = Path(tmp) / "dump"
            code, rep, _ = run("verify", "--suite", "recurrence", "--trials", 3, "--tol", "1e-300",
                               "--dump-dir", dump)
            self.assertEqual(code, 1)
            self.assertValid("verify.schema.json", rep)
            suite = rep["results"]["suites"][0]
            self.assertEqual(len(suite["counterexamples"]), suite["trials_run"] - suite["trials_passed"])
            files = sorted(dump.glob("*.json"))
            self.assertEqual(len(files), len(suite["counterexamples"]))
            for path in files:
                self.assertValid("counterexample.schema.json", json.loads(path.read_text()))


if __name__ == "__main__":
    unittest.main()
