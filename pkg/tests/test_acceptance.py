"""End-to-end acceptance checks.

Each test aggregates the relevant verification-suite cases for one numbered
criterion and prints a single pass/fail line for it.
"""

import pytest

from polarlab import suites

SEED = 0


@pytest.fixture(scope="module")
def reports():
    return {name: suites.run_suite(name, SEED) for name in suites.SUITE_NAMES}


def _select(reports, suite, prefixes):
    cases = [c for c in reports[suite]["cases"]
             if any(c["name"].startswith(p) for p in prefixes)]
    assert cases, f"no cases matched {prefixes} in suite {suite}"
    return cases


def _criterion(capsys, number, label, cases):
    failing = [c for c in cases if not c["pass"]]
    status = "FAIL" if failing else "PASS"
    with capsys.disabled():
        print(f"criterion {number:2d} [{label}]: {status} "
              f"({len(cases) - len(failing)}/{len(cases)} checks)")
    assert not failing, failing


def test_criterion_1_self_polarity_finite(reports, capsys):
    cases = _select(reports, "transforms", ["self_polar_finite"])
    assert len([c for c in cases if c["name"] != "self_polar_finite_runtime"]) == 12
    _criterion(capsys, 1, "self-polarity, finite s", cases)


def test_criterion_2_self_polarity_log(reports, capsys):
    cases = _select(reports, "transforms", ["self_polar_log"])
    assert len(cases) == 3
    _criterion(capsys, 2, "self-polarity, log-polar", cases)


def test_criterion_3_kappa_identities(reports, capsys):
    cases = _select(reports, "alexandrov",
                    ["kappa_grid", "kappa_factorization", "quadrature_moment"])
    _criterion(capsys, 3, "kappa identities", cases)


def test_criterion_4_spherical_formula(reports, capsys):
    cases = _select(reports, "alexandrov",
                    ["oracle_agreement", "interval_anchor"])
    centers = sum(c.get("centers", 0) for c in cases)
    assert centers >= 4 * 20  # 20 random interior centers per family
    _criterion(capsys, 4, "spherical formula vs oracle", cases)


def test_criterion_5_alexandrov_properties(reports, capsys):
    cases = _select(reports, "alexandrov",
                    ["phi_convex", "phi_power_concave", "phi_hessian",
                     "phi_power_hessian", "log_phi_inf_convex"])
    _criterion(capsys, 5, "convexity properties of Phi", cases)


def test_criterion_6_santalo_point(reports, capsys):
    cases = _select(reports, "santalo",
                    ["santalo_center", "santalo_barycenter", "santalo_interval",
                     "santalo_shift", "santalo_global", "hyperplane"])
    _criterion(capsys, 6, "Santalo point", cases)


def test_criterion_7_generalized_santalo(reports, capsys):
    cases = _select(reports, "santalo", ["lambda_santalo"])
    _criterion(capsys, 7, "lambda-Santalo inequality", cases)


def test_criterion_8_onedim_machinery(reports, capsys):
    cases = _select(reports, "onedim",
                    ["fubini", "psi_of_zero", "duality", "midpoint",
                     "two_sided"])
    _criterion(capsys, 8, "one-dimensional level transforms", cases)


def test_criterion_9_convergence(reports, capsys):
    cases = _select(reports, "approx", ["gap_", "mahler_"])
    _criterion(capsys, 9, "s-approximation convergence", cases)


def test_criterion_10_regions(reports, capsys):
    cases = _select(reports, "regions",
                    ["interval_radius", "region_", "sp_region"])
    _criterion(capsys, 10, "Santalo regions", cases)


def test_criterion_11_lifting(reports, capsys):
    cases = _select(reports, "lifting",
                    ["lift_", "s_volume", "polar_lifting", "integer_lift",
                     "mahler_lift"])
    _criterion(capsys, 11, "lifting identities", cases)
