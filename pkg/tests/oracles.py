"""Independent reference computations for the test suite.

Nothing here imports the library's numerical code; each function rebuilds its
quantity from a definition with scipy or mpmath.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy import integrate


def k0_integral(x: float) -> float:
    """K0 from ``int_0^inf cos(x y) / sqrt(y^2 + 1) dy`` (Fourier-weighted quad)."""
    value, _ = integrate.quad(lambda y: 1.0 / math.sqrt(y * y + 1.0), 0.0, np.inf, weight="cos", wvar=x,
                              limlst=200)
    return value


def e1_integral(x: float) -> float:
    """``Gamma(0, x) = int_x^inf e^{-t}/t dt``."""
    value, _ = integrate.quad(lambda t: math.exp(-t) / t, x, np.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def em_frequency_integral(r) -> Fraction:
    """``int_0^inf h(nu, r) dnu * 8 pi^2 r^6`` as an exact rational times ``1/r``.

    ``h = e^{-2 nu r}/(8 pi^2 r^6) sum c_k (nu r)^k`` with ``c = (3, 6, 5, 2, 1)``
    and ``int_0^inf nu^k e^{-2 nu r} dnu = k!/(2r)^{k+1}``; returns the rational
    factor ``q`` in ``int h dnu = q / (8 pi^2 r^7)``.
    """
    c = (3, 6, 5, 2, 1)
    return sum(Fraction(ck * math.factorial(k), 2 ** (k + 1)) for k, ck in enumerate(c))


def matsubara_exponential_half(T: float, r: float) -> float:
    """``T (1/2 + sum_{l>=1} e^{-4 pi T l r})`` from the geometric series."""
    q = math.exp(-4.0 * math.pi * T * r)
    return T * (0.5 + q / (1.0 - q))


def cartesian_sphere_distance(R, a, b, th, thp, ph, php):
    x = a * np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    y = np.array([0.0, 0.0, R]) + b * np.array([np.sin(thp) * np.cos(php), np.sin(thp) * np.sin(php), np.cos(thp)])
    return float(np.linalg.norm(x - y))


def p_exact(p: int, a_hat: float, b_hat: float, dps: int = 40) -> float:
    """Shell average of ``|x - x'|^p / R^p`` from the antiderivative over the chord length.

    With ``X = 1 +- a_hat +- b_hat`` and ``s`` the product of the two signs,
    ``P_p = sum_s s X^{p+3} / (4 a_hat b_hat (p+2)(p+3))``; ``p = -2, -3`` are
    the logarithmic limits.
    """
    with mp.workdps(dps):
        a, b = mp.mpf(a_hat), mp.mpf(b_hat)
        terms = [(1, 1 + a + b), (-1, 1 + a - b), (-1, 1 - a + b), (1, 1 - a - b)]
        if p == -2:
            s = sum(sg * X * mp.log(X) for sg, X in terms)
            return float(s / (4 * a * b))
        if p == -3:
            s = sum(sg * mp.log(X) for sg, X in terms)
            return float(-s / (4 * a * b))
        s = sum(sg * X ** (p + 3) for sg, X in terms)
        return float(s / (4 * a * b * (p + 2) * (p + 3)))


def ring_static_energy(a, b, R, chi1=1.0, chi2=1.0):
    """``-chi1 chi2/(32 pi^3) int int a b dtheta dtheta' / r^2`` by nested adaptive quadrature."""
    def inner(t1):
        f = lambda t2: 1.0 / ((R + b * math.cos(t2) - a * math.cos(t1)) ** 2
                              + (b * math.sin(t2) - a * math.sin(t1)) ** 2)
        return integrate.quad(f, 0.0, 2.0 * math.pi, epsabs=0.0, epsrel=1e-13, limit=200)[0]

    outer = integrate.quad(inner, 0.0, 2.0 * math.pi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    return -chi1 * chi2 * a * b * outer / (32.0 * math.pi ** 3)


def force_1d_quadrature(a, b, c, d, chi1=1.0, chi2=1.0):
    """Zero-T interval force ``-(1/2 pi) int (2 chi^2/nu) e^{-2 nu r} sinh sinh dnu`` by scipy quad."""
    r = 0.5 * (c + d - a - b)
    r1, r2 = 0.5 * (d - c), 0.5 * (b - a)
    g = (r - r1 - r2, r - r1 + r2, r + r1 - r2, r + r1 + r2)

    def f(nu):
        ex = math.exp(-2 * nu * g[0]) - math.exp(-2 * nu * g[1]) - math.exp(-2 * nu * g[2]) + math.exp(-2 * nu * g[3])
        return 2.0 * chi1 * chi2 / nu * 0.25 * ex

    val = integrate.quad(f, 0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=400)[0]
    return -val / (2.0 * math.pi)


def naive_dyadic(nu, rvec):
    """Free EM dyadic without the contact term: ``nu^2 e^{-x}/(4 pi r)[a I - c n n]``, ``x = nu r``."""
    r = float(np.linalg.norm(rvec))
    n = np.asarray(rvec, dtype=float) / r
    x = nu * r
    e = math.exp(-x) / (4.0 * math.pi * r)
    a = 1.0 + 1.0 / x + 1.0 / x ** 2
    c = 1.0 + 3.0 / x + 3.0 / x ** 2
    return nu * nu * e * (a * np.eye(3) - c * np.outer(n, n))


def naive_logdet_integrand(nodes_a, w_a, nodes_b, w_b, chi, nu):
    """``ln det(1+M) - ln det(1+M_a) - ln det(1+M_b)`` for the 3D scalar field, by numpy slogdet."""
    x = np.vstack([nodes_a, nodes_b])
    w = np.concatenate([w_a, w_b])
    d = np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)
    np.fill_diagonal(d, 1.0)
    g = np.exp(-nu * d) / (4.0 * math.pi * d)
    np.fill_diagonal(g, 0.0)
    m = g * (chi * w)[None, :]
    na = len(w_a)
    full = np.linalg.slogdet(np.eye(len(w)) + m)[1]
    sa = np.linalg.slogdet(np.eye(na) + m[:na, :na])[1]
    sb = np.linalg.slogdet(np.eye(len(w) - na) + m[na:, na:])[1]
    return full - sa - sb
