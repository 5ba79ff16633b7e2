import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab import polar_integrals as pint
from polarlab.errors import DomainError, InputError


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


def interval_spec():
    return fm.FunctionSpec(1, fm.SConcave(1.0),
                           fm.PolytopeIndicator(((-1.0,), (1.0,))))


class TestKappa:
    def test_closed_values(self):
        assert pint.kappa(1, 1.0) == pytest.approx(math.pi / 2.0)
        assert pint.kappa(1, 2.0) == pytest.approx(4.0 / 3.0)

    def test_factorization(self):
        for d in (2, 3):
            for s in (0.5, 1.0, 2.0, 5.0):
                assert pint.kappa(1, s) * pint.kappa(d - 1, s + 1) == pytest.approx(
                    pint.kappa(d, s), rel=1e-14)

    def test_matches_hhat_mass(self):
        val, _ = pint.integrate_grid(hhat_spec(2, 2.0))
        assert val == pytest.approx(pint.kappa(2, 2.0), rel=1e-7)


class TestQuadrature:
    def test_moment_identity(self):
        for d in (1, 2, 3):
            q = pint.default_quadrature(d, 1.5)
            assert float(q.weights.sum()) == pytest.approx(q.moment(), rel=1e-9)

    def test_cache_identity(self):
        assert pint.default_quadrature(2, 1.0) is pint.default_quadrature(2, 1.0)

    def test_mismatched_quadrature_rejected(self):
        q = pint.default_quadrature(1, 1.0)
        with pytest.raises(InputError):
            pint.phi_sphere(hhat_spec(2, 1.0), 1.0, np.zeros(2), quad=q)


class TestPhiSphere:
    def test_interval_closed_form(self):
        spec = interval_spec()
        for z in (-0.6, 0.0, 0.4):
            got = pint.phi_sphere(spec, 1.0, np.array([z])).value
            assert got == pytest.approx(1.0 / (1.0 - z * z), rel=1e-8)

    def test_center_outside_support_raises(self):
        with pytest.raises(DomainError):
            pint.phi_sphere(interval_spec(), 1.0, np.array([1.5]))

    def test_matches_oracle_on_ball(self):
        spec = fm.FunctionSpec(2, fm.SConcave(1.0), fm.BallIndicator((0.0, 0.0), 1.0))
        z = np.array([0.2, -0.1])
        vs = pint.phi_sphere(spec, 1.0, z).value
        vo = pint.phi_oracle(spec, 1.0, z).value
        assert vs == pytest.approx(vo, rel=1e-3)

    def test_shift_invariance_of_shifted_family(self):
        base = fm.FunctionSpec(1, fm.SConcave(1.0), fm.BallIndicator((0.0,), 1.0))
        shifted = fm.FunctionSpec(1, fm.SConcave(1.0), fm.Shifted(base, (0.3,)))
        v1 = pint.phi_sphere(base, 1.0, np.array([0.1])).value
        v2 = pint.phi_sphere(shifted, 1.0, np.array([0.4])).value
        assert v1 == pytest.approx(v2, rel=1e-9)


class TestGradient:
    def test_interval_gradient_closed_form(self):
        spec = interval_spec()
        z = np.array([0.5])
        res = pint.phi_gradient(spec, 1.0, z, with_moment=True)
        # Phi(z) = 1/(1-z^2) so Phi'(z) = 2z/(1-z^2)^2
        want = 2.0 * 0.5 / (1.0 - 0.25) ** 2
        assert res.gradient[0] == pytest.approx(want, rel=1e-8)
        # gradient = (d+s+1) * first moment of the polar of the shift
        assert res.gradient[0] == pytest.approx(3.0 * res.moment[0], rel=1e-4)

    def test_finite_difference_agreement(self):
        spec = hhat_spec(2, 2.0)
        z = np.array([0.2, 0.1])
        g = pint.phi_gradient(spec, 2.0, z).gradient
        h = 1e-5
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            fd = (pint.phi_sphere(spec, 2.0, z + e).value
                  - pint.phi_sphere(spec, 2.0, z - e).value) / (2 * h)
            assert g[i] == pytest.approx(fd, rel=1e-4)


class TestPhiLog:
    def test_gaussian_minimum_value(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        assert pint.phi_log(g, np.zeros(1)) == pytest.approx(
            math.sqrt(2.0 * math.pi), rel=1e-6)

    def test_gradient_matches_fd(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.3,), 1.0))
        z = np.array([0.5])
        grad = pint.phi_log_gradient(g, z)
        h = 1e-5
        fd = (pint.phi_log(g, z + h) - pint.phi_log(g, z - h)) / (2 * h)
        assert grad[0] == pytest.approx(fd, rel=1e-5)
