import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab import polar_integrals as pint
from polarlab import santalo
from polarlab.errors import InputError


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


def interval_spec(lo=-1.0, hi=1.0):
    return fm.FunctionSpec(1, fm.SConcave(1.0),
                           fm.PolytopeIndicator(((lo,), (hi,))))


class TestHyperplane:
    def test_normalization(self):
        H = santalo.Hyperplane.of([3.0, 4.0], 10.0)
        assert np.linalg.norm(H.a) == pytest.approx(1.0)
        assert H.offset == pytest.approx(2.0)

    def test_zero_normal_rejected(self):
        with pytest.raises(InputError):
            santalo.Hyperplane.of([0.0, 0.0], 1.0)


class TestSantaloPoint:
    def test_even_function_center(self):
        res = santalo.santalo_point(hhat_spec(1, 2.0), 2.0)
        assert abs(res.z_star[0]) <= 1e-9
        assert res.converged

    def test_interval_midpoint(self):
        res = santalo.santalo_point(interval_spec(0.0, 2.0), 1.0)
        assert res.z_star[0] == pytest.approx(1.0, abs=1e-8)

    def test_polar_barycenter_vanishes(self):
        res = santalo.santalo_point(hhat_spec(2, 1.0), 1.0)
        assert res.polar_barycenter_norm <= 1e-4

    def test_log_concave_gaussian(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.7,), 1.0))
        res = santalo.santalo_point(g, math.inf)
        assert res.z_star[0] == pytest.approx(0.7, abs=1e-6)


class TestHyperplaneConstruction:
    def test_interval_offset(self):
        H = santalo.Hyperplane.of([1.0], 0.25)
        z = santalo.hyperplane_point(interval_spec(), 1.0, H)
        assert z[0] == pytest.approx(0.25)

    def test_offset_outside_support_rejected(self):
        H = santalo.Hyperplane.of([1.0], 1.5)
        with pytest.raises(InputError):
            santalo.hyperplane_point(interval_spec(), 1.0, H)

    def test_verify_interval_quarter(self):
        rep = santalo.verify_santalo(interval_spec(), 1.0,
                                     santalo.Hyperplane.of([1.0], 0.5))
        assert rep["lambda"] == pytest.approx(0.25, abs=1e-6)
        assert rep["product"] == pytest.approx(8.0 / 3.0, rel=1e-6)
        assert rep["pass"]

    def test_equality_for_self_polar_at_half(self):
        rep = santalo.verify_santalo(hhat_spec(1, 2.0), 2.0,
                                     santalo.Hyperplane.of([1.0], 0.0))
        assert rep["lambda"] == pytest.approx(0.5, abs=1e-9)
        assert rep["product"] == pytest.approx(rep["bound"], rel=1e-7)


class TestLevelTransform:
    def test_fubini_indicator(self):
        phi = lambda t: ((np.asarray(t) >= 0) & (np.asarray(t) <= 1)).astype(float)
        assert santalo.level_transform_integral(phi, 1.0) == pytest.approx(
            1.0, rel=1e-7)

    def test_zero_level(self):
        phi = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        assert santalo.s_level_transform(phi, 1.0, 0.0) == 0.0

    def test_onedim_self_dual_equality(self):
        phi = lambda t: np.sqrt(np.maximum(0.0, 1.0 - np.asarray(t) ** 2)) ** 2
        rep = santalo.onedim_duality_check(phi, phi, 2.0, pairs=500, seed=0)
        assert rep["valid_pair"]
        assert rep["midpoint_failures"] == 0
        assert rep["product"] == pytest.approx(rep["bound"], rel=1e-6)
        assert rep["bound"] == pytest.approx((pint.kappa(1, 2.0) / 2.0) ** 2)

    def test_onedim_strict_pair(self):
        ind = lambda t: ((np.asarray(t) >= 0) & (np.asarray(t) <= 1)).astype(float)
        lin = lambda t: np.maximum(0.0, 1.0 - np.asarray(t, dtype=float))
        rep = santalo.onedim_duality_check(ind, lin, 1.0, pairs=500, seed=1)
        assert rep["valid_pair"]
        assert rep["product"] < rep["bound"]
