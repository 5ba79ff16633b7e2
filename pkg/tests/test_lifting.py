import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab import integration, lifting
from polarlab import polar_integrals as pint


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


def interval_spec():
    return fm.FunctionSpec(1, fm.SConcave(1.0),
                           fm.PolytopeIndicator(((-1.0,), (1.0,))))


class TestLiftedSupport:
    def test_square_lift_is_cube(self):
        body = lifting.LiftedBody(interval_spec(), 1.0)
        assert lifting.lifted_support(body, np.array([1.0, 0.0])) == pytest.approx(1.0)
        u = np.array([1.0, 1.0]) / math.sqrt(2.0)
        assert lifting.lifted_support(body, u) == pytest.approx(math.sqrt(2.0))

    def test_hhat_lift_is_unit_ball(self):
        body = lifting.LiftedBody(hhat_spec(1, 2.0), 2.0)
        rng = np.random.default_rng(0)
        U = rng.normal(size=(32, 2))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        np.testing.assert_allclose(body.support_batch(U), 1.0, atol=1e-9)

    def test_vertical_symmetry(self):
        body = lifting.LiftedBody(hhat_spec(2, 1.0), 1.0)
        u = np.array([0.3, -0.2, 0.8])
        u /= np.linalg.norm(u)
        flipped = u.copy()
        flipped[-1] *= -1.0
        assert lifting.lifted_support(body, u) == pytest.approx(
            lifting.lifted_support(body, flipped), abs=1e-12)

    def test_nonunit_direction_rejected(self):
        from polarlab.errors import InputError
        body = lifting.LiftedBody(interval_spec(), 1.0)
        with pytest.raises(InputError):
            lifting.lifted_support(body, np.array([2.0, 0.0]))


class TestSVolume:
    def test_ball_chords_give_kappa(self):
        val, _ = lifting.s_volume(lifting.chords_of_ball(2), 2.0)
        assert val == pytest.approx(pint.kappa(2, 2.0), rel=1e-8)

    def test_box_chords(self):
        val, _ = lifting.s_volume(lifting.chords_of_box([-1.0, -1.0], [1.0, 1.0]), 1.0)
        assert val == pytest.approx(4.0, rel=1e-9)

    def test_lifting_chords_recover_mass(self):
        spec = hhat_spec(1, 2.0)
        val, _ = lifting.s_volume(lifting.chords_of_lifting(spec, 2.0), 2.0)
        mass, _ = pint.integrate_grid(spec)
        assert val == pytest.approx(mass, rel=1e-6)


class TestChecks:
    def test_polar_lifting_duality(self):
        rep = lifting.polar_lifting_check(hhat_spec(1, 2.0), 2.0,
                                          samples=1000, seed=3)
        assert rep["disagreements"] == 0

    def test_integer_lift_volume_interval(self):
        mc = integration.MonteCarloConfig(samples=200_000, seed=0)
        est, se = lifting.integer_lift_volume(interval_spec(), 1, mc)
        assert abs(est - 2.0) <= 3.0 * se

    def test_mahler_lift_identity(self):
        mc = integration.MonteCarloConfig(samples=200_000, seed=1)
        rep = lifting.mahler_lift_check(interval_spec(), 1, [0.2], mc)
        assert rep["within_3_sigma"]
