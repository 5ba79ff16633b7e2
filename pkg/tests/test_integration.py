import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab import integration
from polarlab.errors import InputError


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


class TestConfigs:
    def test_resolution_floor(self):
        with pytest.raises(InputError):
            integration.IntegrationConfig(resolution=4)

    def test_monte_carlo_floor(self):
        with pytest.raises(InputError):
            integration.MonteCarloConfig(samples=10)

    def test_axis_cells_defaults(self):
        cfg = integration.IntegrationConfig()
        assert cfg.axis_cells(1) > cfg.axis_cells(3)


class TestBoxRules:
    def test_midpoint_polynomial(self):
        val = integration.midpoint_box(
            lambda X: X[:, 0] ** 2, np.array([0.0]), np.array([1.0]), 200)
        assert val == pytest.approx(1.0 / 3.0, rel=1e-5)

    def test_richardson_improves(self):
        f = lambda X: np.exp(-np.sum(X * X, axis=1))
        exact = math.sqrt(math.pi) * math.erf(1.0)
        val, err = integration.richardson_box(
            f, np.array([-1.0]), np.array([1.0]), 64)
        assert val == pytest.approx(exact, abs=1e-8)
        # the reported estimate is conservative relative to the true error
        assert abs(val - exact) < err < 1e-4


class TestGridIntegrals:
    def test_ball_indicator_area(self):
        spec = fm.FunctionSpec(2, fm.SConcave(1.0), fm.BallIndicator((0.2, 0.1), 1.5))
        val, _ = integration.integrate_grid(spec)
        assert val == pytest.approx(math.pi * 1.5**2, rel=1e-10)

    def test_polytope_volume(self):
        tri = fm.FunctionSpec(2, fm.SConcave(1.0), fm.PolytopeIndicator(
            ((0.0, 0.0), (2.0, 0.0), (0.0, 2.0))))
        val, _ = integration.integrate_grid(tri)
        assert val == pytest.approx(2.0, rel=1e-12)

    def test_gaussian_mass(self):
        g = fm.FunctionSpec(2, fm.LogConcave(), fm.Gaussian((0.0, 0.0), 1.0))
        val, _ = integration.integrate_grid(g)
        assert val == pytest.approx(2.0 * math.pi, rel=1e-6)

    def test_moment_of_shifted_ball(self):
        spec = fm.FunctionSpec(1, fm.SConcave(1.0), fm.BallIndicator((0.4,), 1.0))
        mass, mom, _ = integration.moment_grid(spec)
        assert mom[0] / mass == pytest.approx(0.4, abs=1e-9)


class TestSplitMoments:
    def test_interval_split(self):
        spec = fm.FunctionSpec(1, fm.SConcave(1.0), fm.PolytopeIndicator(
            ((-1.0,), (1.0,))))
        sm = integration.split_moments(spec, [1.0], 0.5)
        assert sm["m_plus"] == pytest.approx(0.5, abs=1e-6)
        assert sm["m_minus"] == pytest.approx(1.5, abs=1e-6)

    def test_split_sums_to_mass(self):
        spec = hhat_spec(2, 2.0)
        sm = integration.split_moments(spec, [1.0, 0.0], 0.2)
        mass, _ = integration.integrate_grid(spec)
        assert sm["m_plus"] + sm["m_minus"] == pytest.approx(mass, rel=1e-6)

    def test_barycenter_decomposition(self):
        spec = hhat_spec(1, 1.0)
        sm = integration.split_moments(spec, [1.0], 0.0)
        b = (sm["m_plus"] * np.asarray(sm["b_plus"])
             + sm["m_minus"] * np.asarray(sm["b_minus"]))
        assert b[0] == pytest.approx(0.0, abs=1e-6)
