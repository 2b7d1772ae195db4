import json
import math
import unittest
from pathlib import Path

from common import fixture, run, scratch_dir


def mu(pair):
    return [complex(re, im) for re, im in pair]


class Check(unittest.TestCase):
    def test_example22_is_isosymmetric_only(self):
        code, rep, _ = run("check", fixture("example22.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 0)
        res = rep["results"]
        self.assertTrue(res["isosymmetric"]["holds"])
        self.assertFalse(res["isometric"]["holds"])
        self.assertFalse(res["symmetric"]["holds"])

    def test_identity_holds_everything(self):
        code, rep, _ = run("check", fixture("identity.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 0)
        for key in ("isometric", "symmetric", "isosymmetric"):
            self.assertTrue(rep["results"][key]["holds"], key)

    def test_noncommuting_is_invalid_input(self):
        code, rep, err = run("check", fixture("noncommuting.json"))
        self.assertEqual(code, 2)
        self.assertIsNone(rep)
        self.assertIn("commutator", err)

    def test_malformed_is_invalid_input(self):
        code, _, err = run("check", fixture("malformed.json"))
        self.assertEqual(code, 2)
        self.assertIn("matrices", err)

    def test_missing_file_and_bad_flag(self):
        self.assertEqual(run("check", fixture("absent.json"))[0], 2)
        self.assertEqual(run("check", fixture("identity.json"), "--nope")[0], 2)
        self.assertEqual(run("check", fixture("identity.json"), "--format", "xml")[0], 2)

    def test_property_failure_exits_one(self):
        code, rep, _ = run("check", fixture("diagonal.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 1)
        self.assertFalse(rep["results"]["isosymmetric"]["holds"])

    def test_tolerance_is_echoed(self):
        _, rep, _ = run("check", fixture("identity.json"), "--tol", "1e-6")
        self.assertEqual(rep["tolerances"]["tau"], 1e-6)
        self.assertEqual(rep["tolerances"]["tol_comm"], 1e-10)

    def test_globals_after_subcommand(self):
        code, rep, _ = run("check", fixture("identity.json"), "--seed", 4, "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(rep["command"]["name"], "check")

    def test_bad_thread_setting(self):
        code, _, err = run("check", fixture("identity.json"), env={"ISOSYM_THREADS": "many"})
        self.assertEqual(code, 2)
        self.assertIn("ISOSYM_THREADS", err)


class Defect(unittest.TestCase):
    def test_m1_of_example22(self):
        code, rep, _ = run("defect", fixture("example22.json"), "--kind", "M", "--l", 1)
        self.assertEqual(code, 0)
        matrix = rep["results"]["matrix"]
        expected = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        for i in range(3):
            for j in range(3):
                self.assertEqual(matrix[i][j], [expected[i][j], 0.0])
        self.assertFalse(rep["results"]["is_zero"])

    def test_lambda11_of_example22_vanishes(self):
        _, rep, _ = run("defect", fixture("example22.json"), "--kind", "Lambda", "--m", 1, "--n", 1)
        res = rep["results"]
        self.assertTrue(res["is_zero"])
        self.assertEqual(res["norm"], 0.0)
        self.assertEqual(res["forms_gap"], 0.0)

    def test_s1_of_zeros(self):
        _, rep, _ = run("defect", fixture("zeros.json"), "--kind", "S", "--l", 1)
        self.assertTrue(rep["results"]["is_zero"])
        self.assertEqual(rep["results"]["norm"], 0.0)

    def test_missing_orders(self):
        self.assertEqual(run("defect", fixture("zeros.json"), "--kind", "Lambda", "--m", 1)[0], 2)
        self.assertEqual(run("defect", fixture("zeros.json"), "--kind", "S")[0], 2)


class Minimal(unittest.TestCase):
    def test_example22_staircase(self):
        code, rep, _ = run("minimal", fixture("example22.json"))
        self.assertEqual(code, 0)
        stair = [tuple(p) for p in rep["results"]["staircase"]]
        self.assertIn((1, 1), stair)
        self.assertEqual(sorted(stair), [(0, 3), (1, 1), (2, 0)])

    def test_identity_staircase(self):
        _, rep, _ = run("minimal", fixture("identity.json"))
        self.assertEqual(sorted(tuple(p) for p in rep["results"]["staircase"]), [(0, 1), (1, 0)])

    def test_random_tuple_not_exhausted(self):
        with scratch_dir() as tmp:
            path = Path(tmp) / "r.json"
            self.assertEqual(run("construct", "random", "--d", 2, "--dim", 4, "--seed", 3, "--out", path)[0], 0)
            code, rep, _ = run("minimal", path, "--m-max", 1, "--n-max", 1)
        self.assertEqual(code, 1)
        self.assertFalse(rep["results"]["exhausted"])
        self.assertEqual(rep["results"]["staircase"], [])


class Spectrum(unittest.TestCase):
    def test_example22_single_point(self):
        code, rep, _ = run("spectrum", fixture("example22.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 0)
        res = rep["results"]
        self.assertEqual(len(res["eigenpairs"]), 1)
        self.assertEqual(mu(res["eigenpairs"][0]["mu"]), [0, 1])
        self.assertTrue(res["classifications"][0]["on_sphere"])
        self.assertTrue(res["asserted"])

    def test_diagonal_vectors(self):
        code, rep, _ = run("spectrum", fixture("diagonal.json"))
        self.assertEqual(code, 0)
        points = sorted((tuple(mu(p["mu"])) for p in rep["results"]["eigenpairs"]), key=lambda t: (t[0].real, t[0].imag))
        expected = [(-1, 0.5), (2j, 0), (1, 3)]
        expected.sort(key=lambda t: (complex(t[0]).real, complex(t[0]).imag))
        self.assertEqual(len(points), 3)
        for got, want in zip(points, expected):
            for a, b in zip(got, want):
                self.assertLess(abs(a - b), 1e-12)

    def test_jordan_point(self):
        code, rep, _ = run("spectrum", fixture("jordan.json"), "--m", 3, "--n", 1)
        self.assertEqual(code, 0)
        res = rep["results"]
        self.assertEqual(len(res["eigenpairs"]), 1)
        self.assertLess(abs(mu(res["eigenpairs"][0]["mu"])[0] - 1), 1e-12)
        self.assertTrue(res["classifications"][0]["on_sphere"])

    def test_orthogonality_asserted_on_normal_pair(self):
        code, rep, _ = run("spectrum", fixture("hermitian_pair.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 0)
        rows = rep["results"]["orthogonality"]
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["status"], "asserted")
        self.assertLess(rows[0]["gram_norm"], 1e-8)

    def test_unmet_hypothesis_exits_one(self):
        code, rep, _ = run("spectrum", fixture("diagonal.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 1)
        self.assertFalse(rep["results"]["asserted"])

    def test_zero_coordinate_counterexample(self):
        code, rep, _ = run("spectrum", fixture("zero_coordinate.json"), "--m", 1, "--n", 1)
        self.assertEqual(code, 1)
        zc = rep["results"]["zero_coordinate"]
        self.assertFalse(zc["consistent"])
        self.assertEqual(len(zc["points"]), 1)
        self.assertTrue(zc["points"][0]["unit_factor_singular"])
        self.assertTrue(rep["results"]["hypothesis"]["holds"])

    def test_half_hypothesis_rejected(self):
        self.assertEqual(run("spectrum", fixture("jordan.json"), "--m", 1)[0], 2)


class Construct(unittest.TestCase):
    def test_example22_matrices(self):
        code, rep, _ = run("construct", "example22")
        self.assertEqual(code, 0)
        tup = rep["results"]["tuple"]
        self.assertEqual((tup["d"], tup["dim"]), (2, 3))
        r1, r2 = tup["matrices"]
        for i in range(3):
            for j in range(3):
                self.assertEqual(r1[i][j], [1.0 if (i, j) == (1, 0) else 0.0, 0.0])
                self.assertEqual(r2[i][j], [1.0 if i == j else 0.0, 0.0])

    def test_jordan_on_identity(self):
        with scratch_dir() as tmp:
            path = Path(tmp) / "j.json"
            code, rep, _ = run("construct", "jordan", "--mu", 1, "--q", 2, "--out", path)
            self.assertEqual(code, 0)
            tup = json.loads(path.read_text())
            self.assertEqual(tup["metadata"]["predicted_orders"], [3, 4])
            self.assertEqual(tup["matrices"], [[[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]])
            self.assertEqual(run("check", path, "--m", 3, "--n", 4)[0], 0)

    def test_tensor_dims_multiply(self):
        with scratch_dir() as tmp:
            q = Path(tmp) / "q.json"
            t = Path(tmp) / "t.json"
            run("construct", "nilpotent", "--d", 2, "--dim", 3, "--q", 2, "--seed", 5, "--out", q)
            code, rep, _ = run("construct", "tensor", "--left", fixture("example22.json"), "--right", q, "--out", t)
            self.assertEqual(code, 0)
            self.assertEqual(rep["results"]["dim"], 9)
            meta = rep["results"]["metadata"]
            self.assertEqual(meta["nilpotency_order"], 2)
            self.assertEqual(meta["predicted_orders"], [3, 4])
            self.assertEqual(run("check", t, "--m", 3, "--n", 4)[0], 0)

    def test_scaled_requires_unit_beta(self):
        with scratch_dir() as tmp:
            out = Path(tmp) / "s.json"
            self.assertEqual(run("construct", "scaled", "--base", fixture("jordan.json"), "--beta", "0.6,0.7", "--out", out)[0], 2)
            code, rep, _ = run("construct", "scaled", "--base", fixture("jordan.json"), "--beta", "0.6,0.8", "--out", out)
            self.assertEqual(code, 0)
            self.assertEqual(rep["results"]["d"], 2)
            self.assertIn([3, 0], rep["results"]["metadata"]["predicted_staircase"])
            self.assertEqual(run("check", out, "--m", 3, "--n", 1)[0], 0)

    def test_nilpotent_prediction(self):
        with scratch_dir() as tmp:
            out = Path(tmp) / "n.json"
            _, rep, _ = run("construct", "nilpotent", "--d", 2, "--dim", 4, "--q", 3, "--seed", 9, "--mix", "--out", out)
            self.assertEqual(rep["results"]["metadata"]["predicted_orders"], [0, 6])
            code, drep, _ = run("defect", out, "--kind", "S", "--l", 6)
            self.assertEqual(code, 0)
            self.assertTrue(drep["results"]["is_zero"])

    def test_same_seed_same_bytes(self):
        with scratch_dir() as tmp:
            a, b = Path(tmp) / "a.json", Path(tmp) / "b.json"
            run("construct", "random", "--d", 3, "--dim", 5, "--seed", 11, "--out", a)
            run("construct", "random", "--d", 3, "--dim", 5, "--seed", 11, "--out", b)
            self.assertEqual(a.read_bytes(), b.read_bytes())

    def test_invalid_params(self):
        self.assertEqual(run("construct", "nilpotent", "--dim", 2, "--q", 3)[0], 2)
        self.assertEqual(run("construct", "jordan")[0], 2)
        self.assertEqual(run("construct", "bogus")[0], 2)


class Verify(unittest.TestCase):
    def test_recurrence(self):
        code, rep, _ = run("verify", "--suite", "recurrence", "--trials", 200, "--seed", 7)
        self.assertEqual(code, 0)
        suite = rep["results"]["suites"][0]
        self.assertEqual((suite["trials_run"], suite["trials_passed"]), (200, 200))

    def test_perturbation(self):
        code, rep, _ = run("verify", "--suite", "perturbation", "--trials", 200, "--seed", 7)
        self.assertEqual(code, 0)
        self.assertTrue(rep["results"]["passed"])

    def test_forms_single_trial(self):
        self.assertEqual(run("verify", "--suite", "forms", "--trials", 1, "--seed", 0)[0], 0)

    def test_thread_count_does_not_change_report(self):
        args = ("verify", "--suite", "spectral", "--trials", 40, "--seed", 3)
        _, one, _ = run(*args, env={"ISOSYM_THREADS": "1"})
        _, four, _ = run(*args, env={"ISOSYM_THREADS": "4"})
        self.assertEqual(one["results"]["suites"], four["results"]["suites"])
        self.assertEqual(four["results"]["threads"], 4)

    def test_invalid_config(self):
        self.assertEqual(run("verify", "--suite", "nonsense")[0], 2)
        self.assertEqual(run("verify", "--dim-max", 65)[0], 2)
        self.assertEqual(run("verify", "--trials", 0)[0], 2)


class TextFormat(unittest.TestCase):
    def test_text_report_to_file(self):
        with scratch_dir() as tmp:
            out = Path(tmp) / "report.txt"
            code, rep, _ = run("check", fixture("example22.json"), "--format", "text", "--out", out)
            self.assertEqual(code, 0)
            self.assertIsNone(rep)
            text = out.read_text()
            self.assertIn("results.isosymmetric.holds: true", text)
            self.assertIn("tolerances.tau: 1e-08", text)


if __name__ == "__main__":
    unittest.main()
