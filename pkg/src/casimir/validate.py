"""Engine-versus-oracle and oracle-versus-oracle checks.

Each check returns one or more ``Check`` rows. Gated rows carry status PASS
or FAIL against a fixed tolerance; rows with status INFO record measured
discrepancies between published closed forms and computed values. The report
is deterministic: the same code produces a byte-identical CSV.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closedform as cf
from .geometry import Body, PointCloud, QuadratureSpec, RingShell, SphereShell, quadrature_nodes
from .kernels import EM, Proca, Scalar, kernel_array
from .perturbation import (
    Scene,
    energy_1d_intervals,
    force,
    interval_cross_summand,
    logdet_energy,
    pair_energy,
    series_energy,
)
from .susceptibility import Constant, Lorentz
from .thermal import FiniteT, ZeroT, extrapolate_t2, thermal_reduce

__all__ = ["Check", "CHECKS", "TOLERANCES", "validate_all", "report_csv", "all_passed", "loglog_slope"]

# criterion -> tolerance
TOLERANCES = {
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


@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    status: str
    value: float
    reference: float
    rel_dev: float
    tolerance: float
    note: str = ""


def _rel(value, reference):
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _gate(name, criterion, value, reference, tol, scale, note=""):
    dev = _rel(value, reference)
    status = "PASS" if dev <= tol * scale else "FAIL"
    return Check(name, criterion, status, value, reference, dev, tol * scale, note)


def _abs_gate(name, criterion, value, reference, tol, scale, note=""):
    dev = abs(value - reference)
    status = "PASS" if dev <= tol * scale else "FAIL"
    return Check(name, criterion, status, value, reference, dev, tol * scale, note)


def _info(name, criterion, value, reference, note):
    return Check(name, criterion, "INFO", value, reference, _rel(value, reference), math.nan, note)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ``log|y|`` against ``log x``."""
    return float(np.polyfit(np.log(np.asarray(xs)), np.log(np.abs(np.asarray(ys))), 1)[0])


def _kernel_of_nu(kind, r):
    def f(nu):
        return np.array([kernel_array(kind, float(v), np.array([r]))[0] for v in np.atleast_1d(nu)])
    return f


def _shells(a, b, R, chi=1.0):
    return (Body(SphereShell(a, (0.0, 0.0, 0.0)), Constant(chi)),
            Body(SphereShell(b, (0.0, 0.0, R)), Constant(chi)))


# ---------------------------------------------------------------------------


def check_rings(scale=1.0):
    out = []
    quad = QuadratureSpec(angular_order=256, radial_order=1)
    for a, b, R in ((0.5, 0.7, 3.0), (1.0, 1.0, 4.0), (0.2, 1.5, 5.0)):
        ra = Body(RingShell(a, (0.0, 0.0)), Constant(1.0))
        rb = Body(RingShell(b, (R, 0.0)), Constant(1.0))
        e = pair_energy(ra, rb, Scalar(2), ZeroT(), quad, branch="static").energy
        out.append(_gate(f"rings_2d a={a} b={b} R={R}", 1, e, cf.energy_rings_2d(a, b, R, 1.0, 1.0),
                         TOLERANCES["rings_2d"], scale, "static kernel quadrature vs closed form"))
    # the two zero-temperature 2D branches on the same rings
    ra = Body(RingShell(0.5, (0.0, 0.0)), Constant(1.0))
    rb = Body(RingShell(0.7, (3.0, 0.0)), Constant(1.0))
    q = QuadratureSpec(angular_order=64, radial_order=1)
    static = pair_energy(ra, rb, Scalar(2), ZeroT(), q, branch="static").energy
    bessel = pair_energy(ra, rb, Scalar(2), ZeroT(), q, branch="bessel").energy
    out.append(_info("rings_2d bessel/static ratio", 1, bessel / static, math.pi ** 2 * 3.0,
                     "frequency-integrated K0^2 branch over static 1/r^2 branch; reference pi^2 R holds for point bodies"))
    out.append(_info("zero_t_2d K0^2 prefactor, derived/published", 1, 1.0 / (8.0 * math.pi ** 3),
                     1.0 / (32.0 * math.pi ** 4),
                     "T sum -> (1/2 pi) int dnu applied to -T/(4 pi^2) sum K0^2 gives 1/(8 pi^3); ratio is 4 pi"))
    return out


def _static_shell_energy(a, b, R, quad):
    """Direct shell quadrature of the static 3D kernel ``1/(64 pi^3 r^3)``."""
    ba, bb = _shells(a, b, R)
    xa, wa = quadrature_nodes(ba, quad)
    xb, wb = quadrature_nodes(bb, quad)
    r = np.linalg.norm(xa[:, None, :] - xb[None, :, :], axis=-1)
    return -float(np.sum(np.outer(wa, wb) / r ** 3)) / (64.0 * math.pi ** 3)


def check_spheres_3d(scale=1.0):
    out = []
    quad = QuadratureSpec(angular_order=48, radial_order=32)
    for a, b, R in ((0.5, 0.5, 3.0), (0.3, 0.8, 4.0)):
        geom = cf.SpherePairGeometry(a, b, R)
        quad_e = _static_shell_energy(a, b, R, quad)
        corrected = cf.energy_spheres_3d_scalar(geom, 1.0, 1.0, "corrected")
        printed = cf.energy_spheres_3d_scalar(geom, 1.0, 1.0, "printed")
        out.append(_gate(f"spheres_3d_scalar a={a} b={b} R={R}", 2, quad_e, corrected,
                         TOLERANCES["spheres_3d_scalar"], scale, "shell quadrature vs log formula with 1-(a+b)^2/R^2"))
        out.append(_info(f"spheres_3d_scalar printed sign a={a} b={b} R={R}", 2, printed, quad_e,
                         "log formula with 1+(a+b)^2/R^2 vs shell quadrature; the minus sign is correct"))
    a, b, R = 0.5, 0.5, 3.0
    e = pair_energy(*_shells(a, b, R), Scalar(3), ZeroT(), QuadratureSpec(32, 16)).energy
    out.append(_gate(f"spheres_3d_scalar engine a={a} b={b} R={R}", 2, e,
                     cf.energy_spheres_3d_scalar(cf.SpherePairGeometry(a, b, R), 1.0, 1.0),
                     TOLERANCES["spheres_3d_scalar"], scale, "frequency-integrated engine vs log formula"))
    return out


def check_em_spheres(scale=1.0):
    a, b, R = 0.25, 0.25, 2.0
    e = pair_energy(*_shells(a, b, R), EM(), ZeroT(), QuadratureSpec(32, 16)).energy
    ref = cf.energy_em_spheres(cf.SpherePairGeometry(a, b, R), 1.0, 1.0, 0.0, p_method="recursion")
    return [_gate(f"em_spheres_zero_t a={a} b={b} R={R}", 3, e, ref, TOLERANCES["em_spheres_zero_t"], scale,
                  "engine vs -23 chi^2 a^2 b^2 P_-7 / (4 pi R^7)")]


def check_p_three_way(scale=1.0):
    out = []
    grid = (0.05, 0.1, 0.2, 0.3)
    for p in range(-2, -8, -1):
        worst = 0.0
        for ah in grid:
            for bh in grid:
                if ah + bh > 0.6:
                    continue
                vals = (cf.legendre_series_P(p, ah, bh), cf.recursion_P(p, ah, bh), cf.quadrature_P(p, ah, bh))
                worst = max(worst, *(_rel(x, y) for i, x in enumerate(vals) for y in vals[i + 1:]))
        status = "PASS" if worst <= TOLERANCES["p_three_way"] * scale else "FAIL"
        out.append(Check(f"p_three_way p={p}", 4, status, worst, 0.0, worst, TOLERANCES["p_three_way"] * scale,
                         "max pairwise deviation of series, recursion and surface quadrature"))
    ah, bh = 0.2, 0.3
    exact6 = cf.recursion_P(-6, ah, bh)
    exact7 = cf.recursion_P(-7, ah, bh)
    out.append(_info("printed P_-6 at (0.2, 0.3)", 4, cf.printed_p_minus_6(ah, bh), exact6,
                     "published P_-6 closed form vs recursion; the bracket is right, the prefactor is 12x too large"))
    out.append(_info("printed P_-7 at (0.2, 0.3)", 4, cf.printed_p_minus_7(ah, bh), exact7,
                     "published P_-7 closed form vs recursion"))
    return out


def check_em_nu_integral(scale=1.0):
    out = []
    for r in (0.5, 1.0, 2.0):
        res = thermal_reduce(_kernel_of_nu(EM(), r), ZeroT(rel_tol=1e-13), decay_scale=2.0 * r)
        out.append(_gate(f"em_nu_integral r={r}", 5, res.value, 23.0 / (64.0 * math.pi ** 3 * r ** 7),
                         TOLERANCES["em_nu_integral"], scale, "(1/2pi) int h dnu vs 23/(64 pi^3 r^7)"))
    return out


def check_force_1d(scale=1.0):
    out = []
    a, b, c, d = 0.0, 1.0, 2.0, 3.5
    T = 0.5
    chi1, chi2 = Lorentz(1.0, 2.0, 0.5), Lorentz(0.8, 3.0, 0.0)
    r = 0.5 * (c + d - a - b)
    r1, r2 = 0.5 * (d - c), 0.5 * (b - a)
    dR = 1e-3 * r

    def energy(shift):
        return energy_1d_intervals(a, b, c + shift, d + shift, chi1, chi2, FiniteT(T)).energy

    f1 = (energy(dR) - energy(-dR)) / (2.0 * dR)
    f2 = (energy(0.5 * dR) - energy(-0.5 * dR)) / dR
    fd = (4.0 * f2 - f1) / 3.0
    analytic = cf.force_1d_finite_t(r, r1, r2, chi1, chi2, T)
    out.append(_gate("force_1d central difference", 6, fd, analytic, TOLERANCES["force_1d_difference"], scale,
                     "Richardson central difference of the interval energy (self terms included) vs analytic sum"))

    Ts = (0.02, 0.01, 0.005)
    vals = [cf.force_1d_finite_t(r, r1, r2, Constant(1.0), Constant(1.0), t) for t in Ts]
    extrap, _ = extrapolate_t2(Ts, vals)
    exact = cf.force_1d_zero_t(a, b, c, d, 1.0, 1.0, "exact")
    out.append(_gate("force_1d zero-T extrapolation", 6, extrap, exact, TOLERANCES["force_1d_zero_t"], scale,
                     "T^2 extrapolation of the Matsubara force vs frequency integral"))
    out.append(_info("force_1d printed incomplete-gamma form", 6, cf.force_1d_zero_t(a, b, c, d, 1.0, 1.0, "printed"),
                     exact, "published E1 expression vs the frequency integral; no rescaling of lengths matches"))

    # point limit and the pair formula
    a2, b2, c2, d2 = 0.0, 0.01, 3.0, 3.01
    pair_point = cf.energy_1d_point_limit(a2, b2, c2, d2, Constant(1.0), Constant(1.0), 1.0, "pair")
    printed_point = cf.energy_1d_point_limit(a2, b2, c2, d2, Constant(1.0), Constant(1.0), 1.0, "printed")
    out.append(_info("energy_1d point limit printed/pair", 6, printed_point / pair_point, 1.0,
                     "published point-limit prefactor (b-a)(d-c)/4 vs the limit of the pair energy"))
    nu = 1.3
    rr, rp, rpp = 0.5 * (c + d - a - b), 0.5 * (d - c), 0.5 * (b - a)
    cross = float(interval_cross_summand(nu, rr, rp, rpp, 1.0))
    pair_summand = math.exp(-2.0 * nu * rr) * math.sinh(2.0 * nu * rp) * math.sinh(2.0 * nu * rpp) / (4.0 * nu ** 4)
    out.append(_info("energy_1d cross/pair summand at nu=1.3", 6, cross / pair_summand, -4.0 * nu * nu,
                     "interval-formula cross summand over the pair double integral; reference -4 nu^2"))
    return out


def check_thermal(scale=1.0):
    out = []
    a = b = 0.25
    R = 1.0
    shells = _shells(a, b, R)
    quad = QuadratureSpec(16, 8)
    zero = pair_energy(*shells, Scalar(3), ZeroT(rel_tol=1e-12), quad)
    Ts = (0.1, 0.05, 0.025)
    finite = [pair_energy(*shells, Scalar(3), FiniteT(t, rel_tol=1e-13), quad) for t in Ts]
    extrap, err = extrapolate_t2(Ts, [f.energy for f in finite])
    bound = err + zero.thermal_tail + sum(f.thermal_tail for f in finite)
    dev = abs(extrap - zero.energy)
    status = "PASS" if dev <= bound * scale else "FAIL"
    out.append(Check("thermal T^2 extrapolation 3D scalar", 7, status, extrap, zero.energy, _rel(extrap, zero.energy),
                     bound * scale / abs(zero.energy), "Neville extrapolation in T^2 vs zero-T value, bound from estimates"))
    worst = 0.0
    for r in (0.3, 1.0, 2.5):
        for T in (0.05, 0.2, 1.0):
            res = thermal_reduce(lambda nu, r=r: np.exp(-2.0 * np.asarray(nu) * r), FiniteT(T, "half", rel_tol=1e-15),
                                 decay_scale=2.0 * r)
            worst = max(worst, _rel(res.value, 0.5 * T / math.tanh(2.0 * math.pi * T * r)))
            k = thermal_reduce(_kernel_of_nu(Scalar(3), r), FiniteT(T, "half", rel_tol=1e-15), decay_scale=2.0 * r)
            worst = max(worst, _rel(k.value, cf.coth_kernel_3d(r, T)))
    status = "PASS" if worst <= TOLERANCES["coth_sum"] * scale else "FAIL"
    out.append(Check("thermal half-weight sum vs coth", 7, status, worst, 0.0, worst, TOLERANCES["coth_sum"] * scale,
                     "T coth(2 pi T r)/(32 pi^2 r^2) form; the 1/r printed variant differs by a factor r"))

    r, T = 2.5, 0.2
    summed = thermal_reduce(_kernel_of_nu(Scalar(3), r), FiniteT(T, "half", rel_tol=1e-15), decay_scale=2.0 * r).value
    printed = T / (32.0 * math.pi ** 2 * r * math.tanh(2.0 * math.pi * T * r))
    out.append(_info("thermal coth form with 1/r, r=2.5 T=0.2", 7, printed, summed,
                     "published 1/r coth kernel over the half-weight Matsubara sum; the ratio equals r"))

    # weight of the static term in the first EM thermal correction
    a, b, R, T = 0.25, 0.25, 2.0, 0.02
    shells = _shells(a, b, R)
    q = QuadratureSpec(16, 8)
    e0 = pair_energy(*shells, EM(), ZeroT(rel_tol=1e-12), q).energy
    corr = -6.0 * T * a * a * b * b / R ** 6 * cf.recursion_P(-6, a / R, b / R)
    for mode in ("full", "half"):
        e = pair_energy(*shells, EM(), FiniteT(T, mode, rel_tol=1e-13), q).energy
        out.append(_info(f"em first thermal correction, {mode} static weight", 7, (e - e0) / corr, 1.0,
                         "(E(T) - E(0)) over -6 T chi^2 a^2 b^2 P_-6 / R^6 at T=0.02; the published term is the bare static term"))
    return out


def _cloud_pair(a, R, chi):
    x, w = quadrature_nodes(Body(SphereShell(a), Constant(chi)), QuadratureSpec(angular_order=5, radial_order=4))
    return (Body(PointCloud(x, w), Constant(chi)), Body(PointCloud(x + np.array([0.0, 0.0, R]), w), Constant(chi)))


def check_series_logdet(scale=1.0):
    out = []
    a = 0.05
    bodies = _cloud_pair(a, 8.0 * a, 0.05)
    orders = [r.energy for r in series_energy(list(bodies), 4, Scalar(3), ZeroT())]
    ld = logdet_energy(list(bodies), Scalar(3), ZeroT()).energy
    out.append(_gate("series vs logdet 3D scalar, 20-node shells", 8, math.fsum(orders), ld,
                     TOLERANCES["series_logdet"], scale, "sum of orders 1..4 vs log-determinant, chi=0.05, R=4(a+b)"))
    ratios = [abs(orders[k + 1] / orders[k]) for k in (1, 2)]
    status = "PASS" if max(ratios) < 1.0 and orders[0] == 0.0 else "FAIL"
    out.append(Check("series orders decrease geometrically", 8, status, max(ratios), 1.0, max(ratios), 1.0,
                     "largest |order n+1 / order n| for n = 2, 3"))
    a = 1.0
    bodies = _cloud_pair(a, 8.0 * a, 0.05)
    orders = [r.energy for r in series_energy(list(bodies), 4, EM(), ZeroT())]
    ld = logdet_energy(list(bodies), EM(), ZeroT()).energy
    out.append(_info("series vs logdet EM, 20-node shells a=1", 8, math.fsum(orders), ld,
                     "vector field: order 4 exceeds order 3 on coarse clouds, so the truncation error is larger"))
    return out


def check_slopes(scale=1.0):
    out = []
    a = b = 0.25
    s = a + b
    Rs = np.geomspace(8.0 * s, 32.0 * s, 7)
    quad = QuadratureSpec(16, 8)
    em = [pair_energy(*_shells(a, b, R), EM(), ZeroT(), quad).energy for R in Rs]
    slope = loglog_slope(Rs, em)
    out.append(_abs_gate("slope EM energy", 9, slope, -7.0, TOLERANCES["slope_em_energy"], scale,
                         "least-squares log-log slope over R in [8, 32](a+b)"))
    oracle = [cf.energy_em_spheres(cf.SpherePairGeometry(a, b, R), 1.0, 1.0) for R in Rs]
    out.append(_info("slope EM energy, closed form", 9, loglog_slope(Rs, oracle), slope,
                     "same fit on -23 a^2 b^2 P_-7/(4 pi R^7); finite-size terms 7(a^2+b^2)/R^2 set the offset"))
    rings = []
    for R in Rs:
        ra = Body(RingShell(a, (0.0, 0.0)), Constant(1.0))
        rb = Body(RingShell(b, (float(R), 0.0)), Constant(1.0))
        rings.append(pair_energy(ra, rb, Scalar(2), ZeroT(), QuadratureSpec(64, 1)).energy)
    out.append(_abs_gate("slope 2D scalar energy", 9, loglog_slope(Rs, rings), -2.0, TOLERANCES["slope_2d_energy"], scale,
                         "least-squares log-log slope over R in [8, 32](a+b)"))
    forces = []
    for R in Rs:
        scene = Scene(*_shells(a, b, 4.0 * s), EM(), ZeroT(), quad)
        forces.append(force(scene, float(R), 1e-2 * float(R), richardson=True))
    fslope = loglog_slope(Rs, forces)
    out.append(_abs_gate("slope EM force", 9, fslope, -8.0, TOLERANCES["slope_em_force"], scale,
                         "finite-difference force, log-log slope over R in [8, 32](a+b)"))
    return out


def check_proca(scale=1.0):
    out = []
    worst = 0.0
    for nu in np.geomspace(0.1, 10.0, 9):
        r = np.geomspace(0.1, 10.0, 9)
        em = kernel_array(EM(), float(nu), r)
        for m in (0.0, 1e-9):
            worst = max(worst, float(np.max(np.abs(kernel_array(Proca(m), float(nu), r) / em - 1.0))))
    status = "PASS" if worst <= TOLERANCES["proca_kernel"] * scale else "FAIL"
    out.append(Check("proca kernel m->0 equals EM", 10, status, worst, 0.0, worst, TOLERANCES["proca_kernel"] * scale,
                     "max relative difference on a 9x9 (nu, r) grid for m = 0 and 1e-9"))
    V1, V2, R = 0.1, 0.2, 1.5
    series0 = cf.proca_smallvolume_series(V1, V2, R, 1.0, 1.0, 0.0)
    point = -V1 * V2 * 23.0 / (64.0 * math.pi ** 3 * R ** 7)
    status = "PASS" if series0 == point else "FAIL"
    out.append(Check("proca series m=0 equals point dipole", 10, status, series0, point, _rel(series0, point), 0.0,
                     "exact equality"))
    m = 0.01
    first = cf.proca_smallvolume_series(V1, V2, R, 1.0, 1.0, m, n_terms=2) - series0
    status = "PASS" if first > 0 else "FAIL"
    out.append(Check("proca first mass correction is positive", 10, status, first, 0.0, math.nan, 0.0,
                     "energy change from the linear mass term; positive means weaker attraction"))
    m = 0.1 / R
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", cf.SeriesWarning)
        series = cf.proca_smallvolume_series(V1, V2, R, 1.0, 1.0, m)
    numeric = cf.proca_point_energy(V1, V2, R, 1.0, 1.0, m)
    out.append(_info("proca series vs frequency integral at mR=0.1", 10, series, numeric,
                     "integral over nu >= m; the series has a linear term the integral does not"))
    return out


CHECKS: dict[str, Callable] = {
    "rings": check_rings,
    "spheres_3d": check_spheres_3d,
    "em_spheres": check_em_spheres,
    "p_three_way": check_p_three_way,
    "em_nu_integral": check_em_nu_integral,
    "force_1d": check_force_1d,
    "thermal": check_thermal,
    "series_logdet": check_series_logdet,
    "slopes": check_slopes,
    "proca": check_proca,
}


def validate_all(tolerance_scale: float = 1.0) -> list[Check]:
    """Run every check; ``tolerance_scale`` multiplies all gated tolerances."""
    rows = []
    for fn in CHECKS.values():
        rows.extend(fn(tolerance_scale))
    return rows


def all_passed(rows) -> bool:
    return all(r.status in ("PASS", "INFO") for r in rows)


def _fmt(x) -> str:
    return "" if x is None else f"{float(x):.16e}"


def report_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "criterion", "status", "value", "reference", "rel_deviation", "tolerance", "note"])
    for r in rows:
        writer.writerow([r.name, r.criterion, r.status, _fmt(r.value), _fmt(r.reference), _fmt(r.rel_dev),
                         _fmt(r.tolerance), r.note])
    return buf.getvalue()
