"""Analytic interaction energies and forces used as oracles.

Everything here is evaluated independently of the quadrature engine in
``casimir.perturbation``: explicit Matsubara loops, closed forms, and
``scipy.integrate`` where an integral is unavoidable.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import mpmath
import numpy as np
import sympy
from scipy import integrate

from .errors import ConvergenceError, DomainError, OverlapError
from .geometry import sphere_point_distance
from .special import EULER_GAMMA, exp_integral_e1
from .susceptibility import SusceptibilityModel, eval_chi_imag

__all__ = [
    "SpherePairGeometry",
    "SeriesWarning",
    "force_1d_finite_t",
    "force_1d_zero_t",
    "energy_1d_point_limit",
    "energy_rings_2d",
    "energy_spheres_3d_scalar",
    "coth_kernel_3d",
    "legendre_series_P",
    "recursion_P",
    "shell_average_P",
    "quadrature_P",
    "printed_p_minus_6",
    "printed_p_minus_7",
    "energy_em_spheres",
    "proca_smallvolume_terms",
    "proca_smallvolume_series",
    "proca_point_energy",
]


class SeriesWarning(RuntimeWarning):
    """A truncated series whose terms had not started decreasing."""


@dataclass(frozen=True)
class SpherePairGeometry:
    """Two spheres of radii ``a`` and ``b`` whose centres are ``R`` apart."""

    a: float
    b: float
    R: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"radii must be > 0, got a={self.a!r}, b={self.b!r}")
        if not self.R > self.a + self.b:
            raise OverlapError(f"spheres overlap: R = {self.R} <= a + b = {self.a + self.b}")

    @property
    def a_hat(self) -> float:
        return self.a / self.R

    @property
    def b_hat(self) -> float:
        return self.b / self.R


# ---------------------------------------------------------------------------
# one dimension


def force_1d_finite_t(r: float, r1: float, r2: float, chi1: SusceptibilityModel,
                      chi2: SusceptibilityModel, T: float, rel_tol: float = 1e-15,
                      l_max: int = 10_000_000) -> float:
    """Force between two intervals at temperature ``T``.

    ``F = -T sum_{l>=1} (2 chi1 chi2 / nu_l) e^{-2 nu_l r} sinh(2 nu_l r') sinh(2 nu_l r'')``
    with ``r`` the centre distance and ``r'``, ``r''`` the half widths.
    """
    if not T > 0:
        raise DomainError(f"T must be > 0, got {T!r}")
    if not (r1 >= 0 and r2 >= 0 and r > r1 + r2):
        raise DomainError("need r > r' + r'' and non-negative half widths")
    terms = []
    gaps = (r - r1 - r2, r - r1 + r2, r + r1 - r2, r + r1 + r2)
    for l in range(1, l_max + 1):
        nu = 2.0 * math.pi * T * l
        ex = (math.exp(-2.0 * nu * gaps[0]) - math.exp(-2.0 * nu * gaps[1])
              - math.exp(-2.0 * nu * gaps[2]) + math.exp(-2.0 * nu * gaps[3]))
        term = 2.0 * eval_chi_imag(chi1, nu) * eval_chi_imag(chi2, nu) / nu * 0.25 * ex
        terms.append(term)
        if abs(term) <= rel_tol * abs(math.fsum(terms)) * (1.0 - math.exp(-4.0 * math.pi * T * gaps[0])):
            return -T * math.fsum(terms)
    raise ConvergenceError("interval force sum did not converge")


def _ordered(a, b, c, d):
    if not (a < b < c < d):
        raise DomainError(f"intervals need a < b < c < d, got {a}, {b}, {c}, {d}")


def force_1d_zero_t(a: float, b: float, c: float, d: float, chi1: float, chi2: float,
                    variant: Literal["exact", "printed"] = "exact") -> float:
    """Zero-temperature force between intervals ``[a, b]`` and ``[c, d]``.

    ``variant="exact"`` is the frequency integral of the finite-temperature
    summand, ``-(chi1 chi2 / 4 pi) ln[(c-a)(d-b) / ((c-b)(d-a))]``.
    ``variant="printed"`` is the incomplete-gamma expression
    ``-(chi1 chi2 / 2 pi)(E1(d-a) + E1(c-b) - E1(d-b) - E1(c-a))``; it does
    not equal the integral for any rescaling of the arguments and is kept for
    comparison only.
    """
    _ordered(a, b, c, d)
    if variant == "exact":
        return -chi1 * chi2 / (4.0 * math.pi) * math.log((c - a) * (d - b) / ((c - b) * (d - a)))
    if variant == "printed":
        e = exp_integral_e1(np.array([d - a, c - b, d - b, c - a]))
        return -chi1 * chi2 / (2.0 * math.pi) * math.fsum([e[0], e[1], -e[2], -e[3]])
    raise DomainError(f"unknown variant {variant!r}")


def energy_1d_point_limit(a: float, b: float, c: float, d: float, chi1: SusceptibilityModel,
                          chi2: SusceptibilityModel, T: float,
                          variant: Literal["pair", "printed"] = "pair") -> float:
    """Energy of two short intervals treated as points at their centres.

    ``variant="pair"`` is the small-width limit of the pair energy,
    ``-T (b-a)(d-c) sum_{l>=1} chi1 chi2 e^{-2 nu_l r} / (2 nu_l)^2``;
    ``variant="printed"`` carries an extra factor ``1/4``.
    """
    _ordered(a, b, c, d)
    if not T > 0:
        raise DomainError(f"T must be > 0, got {T!r}")
    r = 0.5 * (c + d - a - b)
    terms = []
    for l in range(1, 10_000_000):
        nu = 2.0 * math.pi * T * l
        terms.append(eval_chi_imag(chi1, nu) * eval_chi_imag(chi2, nu) * math.exp(-2.0 * nu * r) / (2.0 * nu) ** 2)
        if terms[-1] <= 1e-17 * math.fsum(terms):
            break
    scale = (b - a) * (d - c) * (0.25 if variant == "printed" else 1.0)
    return -T * scale * math.fsum(terms)


# ---------------------------------------------------------------------------
# rings and scalar spheres


def energy_rings_2d(a: float, b: float, R: float, chi1: float, chi2: float) -> float:
    """Static 2D energy of two ring shells, ``-chi1 chi2 a b / (8 pi sqrt((R^2-(a-b)^2)(R^2-(a+b)^2)))``."""
    if not (a > 0 and b > 0):
        raise DomainError("ring radii must be > 0")
    rad = (R * R - (a - b) ** 2) * (R * R - (a + b) ** 2)
    if not (R > a + b and rad > 0):
        raise OverlapError(f"rings overlap: R = {R} <= a + b = {a + b}")
    return -chi1 * chi2 * a * b / (8.0 * math.pi * math.sqrt(rad))


def energy_spheres_3d_scalar(geom: SpherePairGeometry, chi1: float, chi2: float,
                             variant: Literal["corrected", "printed"] = "corrected") -> float:
    """Zero-temperature 3D scalar energy of two sphere shells.

    ``-chi1 chi2 a b / (16 pi R) ln[(1 - (a-b)^2/R^2) / (1 -/+ (a+b)^2/R^2)]``;
    ``"corrected"`` takes the minus sign in the denominator (the value of the
    surface integral), ``"printed"`` the plus sign.
    """
    a, b, R = geom.a, geom.b, geom.R
    num = 1.0 - (a - b) ** 2 / R ** 2
    if variant == "corrected":
        den = 1.0 - (a + b) ** 2 / R ** 2
    elif variant == "printed":
        den = 1.0 + (a + b) ** 2 / R ** 2
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return -chi1 * chi2 * a * b / (16.0 * math.pi * R) * math.log(num / den)


def coth_kernel_3d(r: float, T: float) -> float:
    """Thermal 3D scalar kernel ``T coth(2 pi T r) / (32 pi^2 r^2)``."""
    if not (r > 0 and T > 0):
        raise DomainError("need r > 0 and T > 0")
    return T / (32.0 * math.pi ** 2 * r * r * math.tanh(2.0 * math.pi * T * r))


# ---------------------------------------------------------------------------
# sphere averages P_p


def _check_hats(a_hat, b_hat):
    if not (a_hat >= 0 and b_hat >= 0 and a_hat + b_hat < 1):
        raise DomainError(f"need a_hat, b_hat >= 0 and a_hat + b_hat < 1, got {a_hat}, {b_hat}")


def legendre_series_P(p: int, a_hat: float, b_hat: float, n_terms: int | None = None) -> float:
    """``P_p`` from its power series in ``a_hat``, ``b_hat``.

    ``P_p = sum_n [2 (-p-1)_{2n} / (2n+2)!] Q_n`` with
    ``Q_n = (1/2) sum_{m=0}^{n} C(2n+2, 2m+1) a_hat^{2(n-m)} b_hat^{2m}``.
    With ``n_terms=None`` terms are added until they drop below ``1e-17`` of the
    sum; a fixed ``n_terms`` whose last terms still grow emits ``SeriesWarning``.
    """
    _check_hats(a_hat, b_hat)
    if p > -1:
        raise DomainError("the series is used for p <= -1")
    coeff = 1.0
    terms = []
    limit = n_terms if n_terms is not None else 5000
    s = -p - 1
    for n in range(0, limit + 1):
        if n > 0:
            coeff *= (s + 2 * n - 2) * (s + 2 * n - 1) / ((2 * n + 1) * (2 * n + 2))
        if coeff == 0.0:
            break
        q = 0.5 * math.fsum(math.comb(2 * n + 2, 2 * m + 1) * a_hat ** (2 * (n - m)) * b_hat ** (2 * m)
                            for m in range(n + 1))
        terms.append(coeff * q)
        if n_terms is None and n > 2 and terms[-1] <= 1e-17 * math.fsum(terms):
            break
    else:
        if n_terms is None:
            raise ConvergenceError("sphere-average series did not converge")
    if n_terms is not None and len(terms) > 2 and terms[-1] > terms[-2]:
        warnings.warn("series terms still increasing at n_terms", SeriesWarning, stacklevel=2)
    return math.fsum(terms)


_X = sympy.symbols("X", positive=True)
_SIGNS = ((1, 1, 1), (-1, 1, -1), (-1, -1, 1), (1, -1, -1))


@lru_cache(maxsize=None)
def _recursion_expr(p: int):
    """Profile ``F_p(X)`` with ``P_p = sum_s s F_p(1 + s_a a_hat + s_b b_hat) / (4 a_hat b_hat)``.

    On such sums the operator ``a_hat d/da_hat + b_hat d/db_hat`` acts as
    ``(X - 1) d/dX`` on ``F`` and as ``-2`` on the prefactor, so the
    recursion becomes a one-variable map on ``F``.
    """
    if p == -2:
        # seed: the p -> -2 limit of the shell average
        return _X * sympy.log(_X)
    prev = _recursion_expr(p + 1)
    q = p + 1
    euler = (_X - 1) * sympy.diff(prev, _X) - 2 * prev
    return sympy.expand(prev - euler / (1 + q))


@lru_cache(maxsize=None)
def _recursion_func(p: int):
    return sympy.lambdify(_X, _recursion_expr(p), modules="mpmath")


def recursion_P(p_target: int, a_hat: float, b_hat: float) -> float:
    """``P_p`` from the downward recursion in ``p``.

    ``P_{p-1} = P_p - (a_hat d/da_hat + b_hat d/db_hat) P_p / (1 + p)``, the
    derivative ``R^{-p}/(1+p) d/dR [R^{p+1} P_p]`` at fixed radii. The step
    out of ``P_{-1} = 1`` is ``0/0``, so the chain starts from the closed
    ``P_{-2}`` and is carried out symbolically; the result is evaluated in
    extended precision to absorb the cancellation at small radii. On the axes
    (``a_hat b_hat = 0``) the power series is used.
    """
    _check_hats(a_hat, b_hat)
    if p_target > -1:
        raise DomainError("recursion_P needs p_target <= -1")
    if p_target == -1:
        return 1.0
    if a_hat * b_hat == 0:
        return legendre_series_P(p_target, a_hat, b_hat)
    F = _recursion_func(p_target)
    with mpmath.workdps(30 + int(max(0.0, -math.log10(a_hat * b_hat)))):
        A, B = mpmath.mpf(a_hat), mpmath.mpf(b_hat)
        total = sum(s * F(1 + sa * A + sb * B) for s, sa, sb in _SIGNS)
        return float(total / (4 * A * B))


def shell_average_P(p: int, a_hat: float, b_hat: float) -> float:
    """Closed form of ``P_p`` from averaging ``|x - x'|^p`` shell by shell.

    ``[sum_s s X_s^{p+3}] / (4 a_hat b_hat (p+2)(p+3))`` over
    ``X = 1 +/- a_hat +/- b_hat`` with sign ``s`` the product of the two
    signs; ``p = -2`` and ``p = -3`` are the logarithmic limits.
    """
    _check_hats(a_hat, b_hat)
    if a_hat * b_hat == 0:
        return legendre_series_P(p, a_hat, b_hat)
    with mpmath.workdps(40):
        A, B = mpmath.mpf(a_hat), mpmath.mpf(b_hat)
        xs = ((1, 1 + A + B), (-1, 1 + A - B), (-1, 1 - A + B), (1, 1 - A - B))
        if p == -2:
            val = sum(s * x * mpmath.log(x) for s, x in xs) / (4 * A * B)
        elif p == -3:
            val = -sum(s * mpmath.log(x) for s, x in xs) / (4 * A * B)
        else:
            val = sum(s * x ** (p + 3) for s, x in xs) / (4 * A * B * (p + 2) * (p + 3))
        return float(val)


def quadrature_P(p: int, a_hat: float, b_hat: float, n_theta: int = 64, n_phi: int = 64) -> float:
    """``P_p`` by direct surface quadrature, ``(1/16 pi^2) int dOmega dOmega' |x - x'|^p`` at ``R = 1``.

    Gauss-Legendre in both polar cosines and the trapezoid rule in the
    azimuth difference (the integrand depends only on ``phi - phi'``).
    """
    _check_hats(a_hat, b_hat)
    ct, wt = np.polynomial.legendre.leggauss(n_theta)
    dphi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    th = np.arccos(ct)
    t1, t2, ph = np.meshgrid(th, th, dphi, indexing="ij")
    dist = sphere_point_distance(1.0, a_hat, b_hat, t1, t2, ph, 0.0)
    w = wt[:, None, None] * wt[None, :, None] * (2.0 * np.pi / n_phi)
    # one azimuth integrates out to 2 pi
    total = 2.0 * np.pi * float(np.sum(w * dist ** p))
    return total / (16.0 * math.pi ** 2)


def printed_p_minus_6(a_hat: float, b_hat: float) -> float:
    """Literal transcription of the published ``P_{-6}`` closed form."""
    a, b = a_hat, b_hat
    return (1.0 / (4.0 * a * b)) * (1.0 / (a - b - 1) ** 3 - 1.0 / (a + b - 1) ** 3
                                    - 1.0 / (a - b + 1) ** 3 + 1.0 / (a + b + 1) ** 3)


def printed_p_minus_7(a_hat: float, b_hat: float) -> float:
    """Literal transcription of the published ``P_{-7}`` closed form."""
    s = a_hat ** 2 + b_hat ** 2
    d = a_hat ** 2 - b_hat ** 2
    den = 10.0 * (a_hat ** 4 + (b_hat ** 2 - 1) ** 2 - 2 * a_hat ** 2 * (b_hat ** 2 + 1)) ** 4
    first = -2 * d ** 4 * (s - 5) + d ** 2 * (52 * (s - 44) - 24 * s ** 2)
    second = 2 * (5 - 5 * s + 8 * s ** 2 - 4 * s ** 3)
    return (first + second) / den


_P_METHODS = {"recursion": recursion_P, "series": legendre_series_P, "shell": shell_average_P}


def energy_em_spheres(geom: SpherePairGeometry, chi1: float, chi2: float, T: float = 0.0,
                      p_method: Literal["recursion", "series", "shell"] = "recursion") -> float:
    """EM energy of two sphere shells with constant susceptibilities.

    ``T = 0``: ``-23 chi1 chi2 a^2 b^2 P_{-7} / (4 pi R^7)``. ``T > 0`` adds
    the first thermal correction ``-6 T chi1 chi2 a^2 b^2 P_{-6} / R^6``,
    which equals the full static Matsubara term. Measured against the engine,
    ``E(T) - E(0)`` is half of it with a full-weight zero mode and O(T^4)
    with a half-weight one; the term is kept as published.
    """
    if not T >= 0:
        raise DomainError(f"T must be >= 0, got {T!r}")
    P = _P_METHODS[p_method]
    a, b, R = geom.a, geom.b, geom.R
    ah, bh = geom.a_hat, geom.b_hat
    energy = -23.0 * chi1 * chi2 * a * a * b * b / (4.0 * math.pi * R ** 7) * P(-7, ah, bh)
    if T > 0:
        energy += -6.0 * T * chi1 * chi2 * a * a * b * b / R ** 6 * P(-6, ah, bh)
    return energy


# ---------------------------------------------------------------------------
# Proca


def proca_smallvolume_terms(R: float, m: float, n_terms: int = 5) -> list[float]:
    """Bracketed terms of the small-volume Proca series (without the prefactor)."""
    if not (R > 0 and m >= 0):
        raise DomainError("need R > 0 and m >= 0")
    if not 1 <= n_terms <= 5:
        raise DomainError("n_terms must be between 1 and 5")
    lnR = math.log(R)
    g = EULER_GAMMA
    terms = [
        23.0 / (64.0 * R ** 7),
        -m * 3.0 / (16.0 * R ** 6),
        m ** 2 * 3.0 / (64.0 * R ** 5) * (-3.0 + 2.0 * g + 2.0 * lnR),
        m ** 3 / (48.0 * R ** 4),
        m ** 4 * 6.0 / R ** 3 * (-1.0 + 4.0 * g + 4.0 * lnR),
    ]
    return terms[:n_terms]


def proca_smallvolume_series(V1: float, V2: float, R: float, chi1: float, chi2: float, m: float,
                             n_terms: int = 5) -> float:
    """Small-volume Proca energy ``-chi1 chi2 V1 V2 / pi^3 * sum(terms)``.

    Emits ``SeriesWarning`` when the magnitudes of the included terms are not
    decreasing.
    """
    terms = proca_smallvolume_terms(R, m, n_terms)
    mags = [abs(t) for t in terms if t != 0]
    if any(later > earlier for earlier, later in zip(mags, mags[1:])):
        warnings.warn("Proca mass series is not decreasing at this m R", SeriesWarning, stacklevel=2)
    return -chi1 * chi2 * V1 * V2 / math.pi ** 3 * math.fsum(terms)


def proca_point_energy(V1: float, V2: float, R: float, chi1: float, chi2: float, m: float) -> float:
    """Point-volume Proca energy by frequency integration over ``nu >= m``.

    ``-chi1 chi2 V1 V2 (1/2 pi) int_m^inf h(zeta(nu), R) dnu`` with
    ``zeta = sqrt(nu^2 - m^2)``; the band below the mass gap is excluded.
    """
    if not (R > 0 and m >= 0):
        raise DomainError("need R > 0 and m >= 0")

    def h_of_zeta(z):
        x = z * R
        poly = (((x + 2.0) * x + 5.0) * x + 6.0) * x + 3.0
        return math.exp(-2.0 * x) / (8.0 * math.pi ** 2) * poly / R ** 6

    # nu d nu = zeta d zeta
    def integrand(z):
        if m == 0:
            return h_of_zeta(z)
        return h_of_zeta(z) * z / math.hypot(z, m)

    value, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    return -chi1 * chi2 * V1 * V2 * value / (2.0 * math.pi)
