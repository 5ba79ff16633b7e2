import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarlab import funcmodel as fm
from polarlab import transforms


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


def ball_spec(d, center=None, radius=1.0):
    c = (0.0,) * d if center is None else tuple(center)
    return fm.FunctionSpec(d, fm.SConcave(1.0), fm.BallIndicator(c, radius))


class TestSPolar:
    def test_indicator_closed_form(self):
        spec = ball_spec(1)
        for y in (0.0, 0.5, 0.9, 1.5):
            want = max(0.0, 1.0 - abs(y)) ** 1.0
            assert transforms.s_polar(spec, 1.0, np.array([y])) == pytest.approx(
                want, abs=1e-12)

    def test_hhat_self_polar_scalar(self):
        spec = hhat_spec(2, 2.0)
        y = np.array([0.3, -0.4])
        assert transforms.s_polar(spec, 2.0, y) == pytest.approx(
            fm.evaluate(spec, y), abs=1e-7)

    def test_zero_outside_polar_support(self):
        spec = ball_spec(1, center=(0.5,))
        # support is [-0.5, 1.5]; the polar vanishes for y >= 1/1.5
        assert transforms.s_polar(spec, 1.0, np.array([0.8])) == 0.0

    def test_center_recentring(self):
        spec = ball_spec(1, center=(0.5,))
        val = transforms.s_polar(spec, 1.0, np.array([0.9]), center=np.array([0.5]))
        assert val == pytest.approx(max(0.0, 1.0 - 0.9), abs=1e-12)

    @given(st.floats(-0.8, 0.8), st.floats(-0.8, 0.8))
    @settings(max_examples=25, deadline=None)
    def test_duality_inequality(self, x, y):
        # f(x) L_s f(y) <= (1 - <x,y>)_+^s by construction of the infimum
        spec = hhat_spec(1, 2.0)
        fx = fm.evaluate(spec, np.array([x]))
        ly = transforms.s_polar(spec, 2.0, np.array([y]))
        assert fx * ly <= max(0.0, 1.0 - x * y) ** 2.0 + 1e-9

    def test_batch_grid_profile(self):
        t = np.linspace(-1.0, 1.0, 65)
        vals = np.maximum(0.0, 1.0 - t * t)
        spec = fm.FunctionSpec(1, fm.SConcave(2.0),
                               fm.GridProfile((-1.0,), 2.0 / 64.0, vals))
        Y = np.linspace(-0.9, 0.9, 21)[:, None]
        got = transforms.s_polar_batch(spec, 2.0, Y)
        want = transforms.s_polar_batch(hhat_spec(1, 2.0), 2.0, Y)
        np.testing.assert_allclose(got, want, atol=5e-3)


class TestLegendre:
    def test_quadratic_fixed_point(self):
        ev = transforms.legendre_evaluator(
            fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0)))
        for y in (-1.2, 0.0, 0.7):
            lv = transforms.legendre(ev, np.array([y]))
            assert not lv.infinite
            assert lv.value == pytest.approx(0.5 * y * y, abs=1e-9)

    def test_norm_conjugate_indicator(self):
        ev = transforms.legendre_evaluator(
            fm.FunctionSpec(1, fm.LogConcave(), fm.ExpNegNorm(1.0)))
        assert transforms.legendre(ev, np.array([0.5])).value == pytest.approx(
            0.0, abs=1e-9)
        assert transforms.legendre(ev, np.array([1.5])).infinite


class TestLogPolar:
    def test_gaussian_self_polar(self):
        g = fm.FunctionSpec(2, fm.LogConcave(), fm.Gaussian((0.0, 0.0), 1.0))
        y = np.array([0.4, -0.3])
        assert transforms.log_polar(g, y) == pytest.approx(
            math.exp(-0.5 * float(y @ y)), abs=1e-9)

    def test_shift_multiplies_by_exponential(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        y = np.array([0.6])
        z = np.array([0.3])
        shifted = transforms.log_polar(g, y, center=z)
        assert shifted == pytest.approx(
            math.exp(float(z @ y)) * transforms.log_polar(g, y), rel=1e-9)

    def test_batch_matches_scalar(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.2,), 0.8))
        Y = np.linspace(-1.0, 1.0, 9)[:, None]
        got = transforms.log_polar_batch(g, Y)
        want = [transforms.log_polar(g, y, refine=False) for y in Y]
        np.testing.assert_allclose(got, want, rtol=1e-6, atol=1e-9)


class TestSApprox:
    def test_gaussian_point_value(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        fs = transforms.s_approx(g, 2.0)
        # (1 - x^2/(2 s))_+^s at x = 1, s = 2
        assert fm.evaluate(fs, np.array([1.0])) == pytest.approx(0.5625)

    def test_pointwise_monotone_convergence(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        x = np.array([1.3])
        vals = [fm.evaluate(transforms.s_approx(g, s), x) for s in (2.0, 8.0, 32.0)]
        target = fm.evaluate(g, x)
        gaps = [abs(v - target) for v in vals]
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] < 1e-2

    def test_convergence_study_columns(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        rows = transforms.convergence_study(g, [(0.5,)], [4.0, 16.0])
        assert len(rows) == 2
        for r in rows:
            for key in ("s", "x", "L_s_value", "L_inf_value", "gap",
                        "mahler_s", "mahler_inf"):
                assert key in r
