import math

import numpy as np
import pytest

from polarlab import funcmodel as fm
from polarlab import polar_integrals as pint
from polarlab import regions
from polarlab.errors import InputError


def hhat_spec(d, s):
    return fm.FunctionSpec(d, fm.SConcave(s), fm.HhatPower(s))


def interval_spec():
    return fm.FunctionSpec(1, fm.SConcave(1.0),
                           fm.PolytopeIndicator(((-1.0,), (1.0,))))


class TestMembership:
    def test_center_member_when_nonempty(self):
        q = regions.make_query(interval_spec(), 1.0, 2.0)
        assert regions.region_membership(q, np.zeros(1))

    def test_outside_support_nonmember(self):
        q = regions.make_query(interval_spec(), 1.0, 5.0)
        assert not regions.region_membership(q, np.array([1.2]))

    def test_negative_t_rejected(self):
        with pytest.raises(InputError):
            regions.make_query(interval_spec(), 1.0, -1.0)


class TestBoundary:
    def test_interval_closed_form_radius(self):
        q = regions.make_query(interval_spec(), 1.0, 2.0)
        b = regions.region_boundary(q, ray_count=2)
        want = math.sqrt(1.0 - 4.0 / math.pi**2)
        np.testing.assert_allclose(b.radii, want, atol=1e-5)

    def test_subcritical_t_empty(self):
        q = regions.make_query(interval_spec(), 1.0, 0.5)
        assert regions.region_boundary(q, ray_count=2).empty

    def test_self_polar_singleton_at_one(self):
        q = regions.make_query(hhat_spec(1, 2.0), 2.0, 1.0)
        b = regions.region_boundary(q, ray_count=2)
        assert not b.empty
        assert float(np.max(b.radii)) == 0.0

    def test_radii_grow_with_t(self):
        q1 = regions.make_query(interval_spec(), 1.0, 1.5)
        q2 = regions.make_query(interval_spec(), 1.0, 3.0)
        r1 = regions.region_boundary(q1, ray_count=2).radii
        r2 = regions.region_boundary(q2, ray_count=2).radii
        assert np.all(r2 >= r1)

    def test_gaussian_infinity_region(self):
        g = fm.FunctionSpec(1, fm.LogConcave(), fm.Gaussian((0.0,), 1.0))
        q = regions.make_query(g, regions.INF, 2.0)
        b = regions.region_boundary(q, ray_count=2)
        np.testing.assert_allclose(b.radii, math.sqrt(2.0 * math.log(2.0)),
                                   atol=1e-4)


class TestProperties:
    def test_convexity_sampling(self):
        q = regions.make_query(interval_spec(), 1.0, 2.0)
        rep = regions.region_properties(q, samples=100, seed=0)
        assert rep["nonempty"]
        assert rep["convexity_failures"] == 0

    def test_hausdorff_distance_symmetry(self):
        P = np.array([[0.0], [1.0]])
        Q = np.array([[0.5]])
        assert regions.hausdorff_distance(P, Q) == pytest.approx(0.5)
        assert regions.hausdorff_distance(Q, P) == pytest.approx(0.5)

    def test_convergence_requires_log_concave(self):
        with pytest.raises(InputError):
            regions.region_convergence(interval_spec(), 2.0, [8.0])


class TestLiftedRegion:
    def test_horizontal_slice_agreement(self):
        spec = hhat_spec(1, 2.0)
        q = regions.make_query(spec, 2.0, 1.4)
        for z in (0.0, 0.2, -0.35):
            want = regions.region_membership(q, np.array([z]))
            got = regions.sp_region_membership(spec, 2.0, 1.4, np.array([z, 0.0]))
            assert got == want

    def test_self_polar_value_at_origin(self):
        val = regions.sp_region_value(hhat_spec(1, 2.0), 2.0, np.zeros(2))
        assert val == pytest.approx(pint.kappa(1, 2.0) ** 2, rel=1e-8)

    def test_bad_vector_length(self):
        with pytest.raises(InputError):
            regions.sp_region_value(hhat_spec(1, 2.0), 2.0, np.zeros(3))
