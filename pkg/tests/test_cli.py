import json
import math

import pytest
from click.testing import CliRunner

from polarlab import cli


HHAT2 = json.dumps({"dimension": 1, "class": {"s": 2},
                    "family": {"kind": "hhat_power", "s_exponent": 2}})
BOX1 = json.dumps({"dimension": 1, "class": {"s": 1},
                   "family": {"kind": "polytope_indicator",
                              "vertices": [[-1.0], [1.0]]}})
GAUSS1 = json.dumps({"dimension": 1, "class": "log",
                     "family": {"kind": "gaussian", "center": [0.0],
                                "sigma": 1.0}})


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, text in (("hhat2", HHAT2), ("box1", BOX1), ("gauss1", GAUSS1)):
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        paths[name] = str(p)
    return paths


class TestCommands:
    def test_eval(self, runner, specs):
        r = runner.invoke(cli.main, ["eval", "--spec", specs["hhat2"], "--z", "0"])
        assert r.exit_code == 0
        assert json.loads(r.output)["value"] == pytest.approx(1.0)

    def test_phi_kappa_anchor(self, runner, specs):
        r = runner.invoke(cli.main, ["phi", "--spec", specs["hhat2"],
                                     "--s", "2", "--z", "0"])
        assert r.exit_code == 0
        assert json.loads(r.output)["value"] == pytest.approx(4.0 / 3.0, rel=1e-6)

    def test_polar_inf(self, runner, specs):
        r = runner.invoke(cli.main, ["polar", "--spec", specs["gauss1"],
                                     "--s", "inf", "--z", "0.5"])
        assert r.exit_code == 0
        assert json.loads(r.output)["value"] == pytest.approx(
            math.exp(-0.125), rel=1e-6)

    def test_integrate(self, runner, specs):
        r = runner.invoke(cli.main, ["integrate", "--spec", specs["box1"]])
        assert r.exit_code == 0
        assert json.loads(r.output)["value"] == pytest.approx(2.0, rel=1e-10)

    def test_region_closed_form(self, runner, specs):
        r = runner.invoke(cli.main, ["region", "--spec", specs["box1"],
                                     "--s", "1", "--t", "2", "--rays", "2"])
        assert r.exit_code == 0
        radii = json.loads(r.output)["radii"]
        want = math.sqrt(1.0 - 4.0 / math.pi**2)
        assert radii[0] == pytest.approx(want, abs=1e-4)

    def test_santalo_point(self, runner, specs):
        r = runner.invoke(cli.main, ["santalo-point", "--spec", specs["hhat2"],
                                     "--s", "2"])
        assert r.exit_code == 0
        out = json.loads(r.output)
        assert abs(out["z_star"][0]) <= 1e-8
        assert out["converged"]

    def test_santalo_hyperplane(self, runner, specs):
        r = runner.invoke(cli.main, ["santalo-point", "--spec", specs["box1"],
                                     "--s", "1", "--hyperplane", "1,0.5"])
        assert r.exit_code == 0
        out = json.loads(r.output)
        assert out["lambda"] == pytest.approx(0.25, abs=1e-6)
        assert out["pass"]

    def test_convergence_csv(self, runner, specs):
        r = runner.invoke(cli.main, ["convergence", "--spec", specs["gauss1"],
                                     "--z", "0.5", "--s-schedule", "4,16",
                                     "--format", "csv"])
        assert r.exit_code == 0
        lines = r.output.strip().splitlines()
        assert lines[0].split(",")[:3] == ["s", "x1", "L_s_value"]
        assert len(lines) == 3


class TestExitCodes:
    def test_schema_violation_is_2(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dimension": 0}))
        r = runner.invoke(cli.main, ["eval", "--spec", str(bad), "--z", "0"])
        assert r.exit_code == 2

    def test_dimension_mismatch_is_2(self, runner, specs):
        r = runner.invoke(cli.main, ["eval", "--spec", specs["hhat2"],
                                     "--z", "0,0"])
        assert r.exit_code == 2

    def test_bad_s_is_2(self, runner, specs):
        r = runner.invoke(cli.main, ["phi", "--spec", specs["hhat2"],
                                     "--s", "-1", "--z", "0"])
        assert r.exit_code == 2

    def test_phi_outside_support_is_1(self, runner, specs):
        r = runner.invoke(cli.main, ["phi", "--spec", specs["box1"],
                                     "--s", "1", "--z", "1.5"])
        assert r.exit_code == 1

    def test_failing_suite_is_3(self, runner, monkeypatch):
        def fake_suite(name, seed=0):
            return {"suite": name, "seed": seed, "passed": 0, "failed": 1,
                    "worst_slack": -1.0,
                    "cases": [{"name": "x", "pass": False, "slack": -1.0}]}
        monkeypatch.setattr(cli.suites, "run_suite", fake_suite)
        r = runner.invoke(cli.main, ["verify", "--suite", "onedim"])
        assert r.exit_code == 3


class TestDeterminism:
    def test_verify_jsonl_byte_identical(self, runner, tmp_path):
        outs = []
        for i in (0, 1):
            out = tmp_path / f"rep{i}.jsonl"
            r = runner.invoke(cli.main, ["verify", "--suite", "onedim",
                                         "--seed", "7", "--out", str(out)])
            assert r.exit_code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_env_seed_default(self, runner, specs, monkeypatch, tmp_path):
        monkeypatch.setenv("POLARLAB_SEED", "12345")
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for path in (a, b):
            r = runner.invoke(cli.main, ["convergence", "--spec", specs["gauss1"],
                                         "--s-schedule", "4", "--out", str(path)])
            assert r.exit_code == 0
        assert a.read_bytes() == b.read_bytes()
