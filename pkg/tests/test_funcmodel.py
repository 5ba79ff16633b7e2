import json
import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab.errors import InputError


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


class TestEvaluate:
    def test_hhat_closed_form(self):
        spec = hhat_spec(2, 2.0)
        x = np.array([0.3, 0.4])
        assert fm.evaluate(spec, x) == pytest.approx(1.0 - 0.25)

    def test_ball_indicator(self):
        spec = fm.FunctionSpec(1, fm.SConcave(1.0), fm.BallIndicator((0.5,), 1.0))
        assert fm.evaluate(spec, np.array([1.4])) == 1.0
        assert fm.evaluate(spec, np.array([1.6])) == 0.0

    def test_polytope_indicator(self):
        tri = fm.FunctionSpec(2, fm.SConcave(1.0), fm.PolytopeIndicator(
            ((0.0, 0.0), (2.0, 0.0), (0.0, 2.0))))
        assert fm.evaluate(tri, np.array([0.5, 0.5])) == 1.0
        assert fm.evaluate(tri, np.array([1.5, 1.5])) == 0.0

    def test_gaussian(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 2.0))
        assert fm.evaluate(g, np.array([2.0])) == pytest.approx(math.exp(-0.5))

    def test_shifted(self):
        base = hhat_spec(1, 2.0)
        sh = fm.FunctionSpec(1, fm.SConcave(2.0), fm.Shifted(base, (0.3,)))
        x = np.array([0.5])
        assert fm.evaluate(sh, x) == pytest.approx(fm.evaluate(base, x - 0.3))

    def test_batch_matches_scalar(self):
        spec = hhat_spec(2, 1.0)
        X = np.random.default_rng(0).uniform(-1.2, 1.2, size=(40, 2))
        vals = fm.evaluate_batch(spec, X)
        for x, v in zip(X, vals):
            assert v == pytest.approx(fm.evaluate(spec, x))


class TestValidation:
    def test_bad_dimension(self):
        with pytest.raises(InputError):
            fm.FunctionSpec(0, fm.SConcave(1.0), fm.HhatPower(1.0))

    def test_bad_s(self):
        with pytest.raises(InputError):
            fm.FunctionSpec(1, fm.SConcave(-1.0), fm.HhatPower(1.0))

    def test_degenerate_polytope(self):
        with pytest.raises(InputError):
            fm.FunctionSpec(2, fm.SConcave(1.0), fm.PolytopeIndicator(
                ((0.0, 0.0), (1.0, 0.0), (2.0, 0.0))))

    def test_grid_profile_disconnected(self):
        vals = np.zeros(9)
        vals[0] = 1.0
        vals[8] = 1.0
        with pytest.raises(InputError):
            fm.FunctionSpec(1, fm.SConcave(1.0),
                            fm.GridProfile((0.0,), 0.25, vals))

    def test_concavity_detection(self):
        t = np.linspace(-1.0, 1.0, 33)
        good = np.maximum(0.0, 1.0 - t * t)
        bad = np.maximum(0.0, np.abs(t) * (1.0 - np.abs(t))) + (np.abs(t) < 0.6)
        spec_good = fm.FunctionSpec(1, fm.SConcave(1.0),
                                    fm.GridProfile((-1.0,), 2.0 / 32.0, good))
        assert fm.validate_concavity(spec_good, 200, seed=0).ok
        spec_bad = fm.FunctionSpec(1, fm.SConcave(1.0),
                                   fm.GridProfile((-1.0,), 2.0 / 32.0, bad))
        assert not fm.validate_concavity(spec_bad, 200, seed=0).ok


class TestGeometry:
    def test_axis_extents_ball(self):
        spec = fm.FunctionSpec(2, fm.SConcave(1.0), fm.BallIndicator((0.5, 0.0), 1.0))
        rm, rp = fm.axis_extents(spec, np.zeros(2))
        assert rm[0] == pytest.approx(0.5)
        assert rp[0] == pytest.approx(1.5)

    def test_support_ray_extent_box(self):
        spec = fm.FunctionSpec(2, fm.SConcave(1.0), fm.PolytopeIndicator(
            ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0))))
        u = np.array([1.0, 1.0]) / math.sqrt(2.0)
        assert fm.support_ray_extent(spec, np.zeros(2), u) == pytest.approx(
            math.sqrt(2.0))

    def test_barycenter_shifted_ball(self):
        spec = fm.FunctionSpec(1, fm.SConcave(1.0), fm.BallIndicator((0.7,), 0.5))
        assert fm.barycenter(spec).vector[0] == pytest.approx(0.7, abs=1e-9)


class TestJson:
    def test_round_trip(self):
        spec = hhat_spec(2, 2.0)
        back = fm.spec_from_json(fm.spec_to_json(spec))
        assert back.dimension == 2
        X = np.random.default_rng(1).uniform(-1, 1, size=(20, 2))
        np.testing.assert_allclose(fm.evaluate_batch(back, X),
                                   fm.evaluate_batch(spec, X))

    def test_examples_from_schema(self):
        spec = fm.spec_from_json(json.dumps({
            "dimension": 1, "class": {"s": 2},
            "family": {"kind": "hhat_power", "s_exponent": 2}}))
        assert isinstance(spec.family, fm.HhatPower)
        spec2 = fm.spec_from_json(json.dumps({
            "class": "log", "dimension": 1,
            "family": {"kind": "gaussian", "center": [0], "sigma": 1}}))
        assert isinstance(spec2.family, fm.Gaussian)

    def test_missing_dimension_path(self):
        with pytest.raises(InputError) as exc:
            fm.spec_from_json(json.dumps({
                "class": {"s": 1},
                "family": {"kind": "hhat_power", "s_exponent": 1}}))
        paths = [v["path"] for v in exc.value.violations]
        assert any("dimension" in p or p == "/" for p in paths)

    def test_unknown_field_rejected(self):
        with pytest.raises(InputError):
            fm.spec_from_json(json.dumps({
                "dimension": 1, "class": {"s": 1}, "extra": 1,
                "family": {"kind": "hhat_power", "s_exponent": 1}}))

    def test_invalid_json(self):
        with pytest.raises(InputError):
            fm.spec_from_json("{not json")
