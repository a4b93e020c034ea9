"""Exit criteria of the build, one test per criterion.

Each test prints one ``criterion N ...: PASS|FAIL`` line; the lines are
repeated in the pytest terminal summary. ``python tests/test_acceptance.py``
prints the same table without pytest.
"""
from __future__ import annotations

import pytest

from casimir import validate

pytestmark = pytest.mark.acceptance

RESULTS: dict[int, str] = {}

# tolerances as stated by the criteria; the validate module must use exactly these
EXPECTED_TOLERANCES = {
    "rings_2d": 1e-8,
    "spheres_3d_scalar": 1e-6,
    "em_spheres_zero_t": 1e-4,
    "p_three_way": 1e-8,
    "em_nu_integral": 1e-10,
    "force_1d_difference": 1e-6,
    "force_1d_zero_t": 1e-4,
    "coth_sum": 1e-10,
    "series_logdet": 1e-6,
    "slope_em_energy": 0.01,
    "slope_2d_energy": 0.01,
    "slope_em_force": 0.02,
    "proca_kernel": 1e-12,
}


def _record(number: int, title: str, rows) -> tuple[bool, str]:
    gated = [r for r in rows if r.status != "INFO"]
    ok = bool(gated) and all(r.status == "PASS" for r in gated)
    detail = "; ".join(f"{r.name}: {r.status} (value {r.value:.6g}, dev {r.rel_dev:.3g}, tol {r.tolerance:.3g})"
                       for r in gated if r.status == "FAIL")
    line = f"criterion {number:2d} {title}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    RESULTS[number] = line
    print(line)
    return ok, detail


def test_tolerances_match_criteria():
    assert validate.TOLERANCES == EXPECTED_TOLERANCES


def test_criterion_01_rings():
    ok, detail = _record(1, "2D rings quadrature vs closed form", validate.check_rings())
    assert ok, detail


def test_criterion_02_scalar_spheres():
    ok, detail = _record(2, "3D scalar spheres, sign-corrected log formula", validate.check_spheres_3d())
    assert ok, detail


def test_criterion_03_em_spheres():
    ok, detail = _record(3, "EM spheres zero T, engine vs P_-7 formula", validate.check_em_spheres())
    assert ok, detail


def test_criterion_04_p_three_way():
    ok, detail = _record(4, "P_p series / recursion / quadrature", validate.check_p_three_way())
    assert ok, detail


def test_criterion_05_em_frequency_integral():
    ok, detail = _record(5, "EM frequency integral 23/(64 pi^3 r^7)", validate.check_em_nu_integral())
    assert ok, detail


def test_criterion_06_force_1d():
    ok, detail = _record(6, "1D force: analytic vs difference, zero-T limit", validate.check_force_1d())
    assert ok, detail


def test_criterion_07_matsubara():
    ok, detail = _record(7, "Matsubara vs zero T, coth form", validate.check_thermal())
    assert ok, detail


def test_criterion_08_series_logdet():
    ok, detail = _record(8, "series orders 1..4 vs log-determinant", validate.check_series_logdet())
    assert ok, detail


def test_criterion_09_power_laws():
    ok, detail = _record(9, "power-law slopes over R in [8, 32](a+b)", validate.check_slopes())
    assert ok, detail


def test_criterion_10_proca():
    ok, detail = _record(10, "Proca massless limit and mass correction", validate.check_proca())
    assert ok, detail


def test_criterion_11_determinism():
    first = validate.report_csv(validate.validate_all())
    second = validate.report_csv(validate.validate_all())
    same = first == second
    row = validate.Check("validate_all twice, byte-identical", 11, "PASS" if same else "FAIL",
                         float(len(first)), float(len(second)), 0.0 if same else 1.0, 0.0)
    ok, detail = _record(11, "deterministic validation report", [row])
    assert ok, detail


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
