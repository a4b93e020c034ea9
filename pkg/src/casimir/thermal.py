"""Matsubara sums and zero-temperature frequency integrals.

``thermal_reduce`` maps a frequency integrand ``f(nu)`` to

* finite T:  ``T [w0 f(0) + sum_{l>=1} f(2 pi l T)]``
* zero T:    ``(1/2pi) int_{nu_min}^inf f(nu) dnu``

and returns the value with a tail (truncation) bound. ``f`` is vectorised: it
receives a 1-D array of frequencies and returns an array of shape ``(n,)`` or
``(n, k)`` for ``k`` integrands reduced together.
"""
from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal, NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .kernels import FieldKind, Scalar

__all__ = [
    "ZeroT",
    "FiniteT",
    "ThermalSpec",
    "ThermalResult",
    "CappedSumWarning",
    "matsubara_frequency",
    "default_zero_mode",
    "thermal_reduce",
    "gauss_kronrod",
    "extrapolate_t2",
]

ZeroMode = Literal["full", "half", "skip"]
_ZERO_WEIGHT = {"full": 1.0, "half": 0.5, "skip": 0.0}


@dataclass(frozen=True)
class ZeroT:
    nu_min: float = 0.0
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not self.nu_min >= 0:
            raise DomainError("nu_min must be >= 0")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")


@dataclass(frozen=True)
class FiniteT:
    """Matsubara summation at temperature ``T``.

    ``zero_mode=None`` picks the field default (see ``default_zero_mode``).
    """

    T: float
    zero_mode: ZeroMode | None = None
    rel_tol: float = 1e-12
    l_max_cap: int = 100_000

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T > 0):
            raise DomainError(f"temperature must be > 0, got {self.T!r}")
        if self.zero_mode not in (None, "full", "half", "skip"):
            raise DomainError(f"zero_mode must be full, half or skip, got {self.zero_mode!r}")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if self.l_max_cap < 1:
            raise DomainError("l_max_cap must be >= 1")


ThermalSpec = ZeroT | FiniteT


class ThermalResult(NamedTuple):
    value: np.ndarray | float
    tail_bound: np.ndarray | float
    evaluations: int
    capped: bool


class CappedSumWarning(RuntimeWarning):
    """The Matsubara sum hit ``l_max_cap`` before meeting its tolerance."""


def matsubara_frequency(T: float, l: int) -> float:
    """Bosonic Matsubara frequency ``2 pi l T``."""
    if not T > 0 or l < 0:
        raise DomainError("need T > 0 and l >= 0")
    return 2.0 * math.pi * l * T


def default_zero_mode(kind: FieldKind) -> ZeroMode:
    # 1D and 2D scalar kernels diverge at nu = 0
    if isinstance(kind, Scalar) and kind.dim in (1, 2):
        return "skip"
    return "half"


# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[1:7:2] = _WG[:3]
_GW[7] = _WG[3]
_GW[9:15:2] = _WG[2::-1]


_EPS = np.finfo(float).eps


def _gk_interval(g, lo, hi):
    half = 0.5 * (hi - lo)
    vals = np.asarray(g(0.5 * (lo + hi) + half * _NODES), dtype=float)
    vals2 = vals.reshape(15, -1)
    k = half * (_KW @ vals2)
    gauss = half * (_GW @ vals2)
    resabs = abs(half) * (_KW @ np.abs(vals2))
    # roundoff floor, as in QUADPACK
    floor = 50.0 * _EPS * resabs
    return k, np.maximum(np.abs(k - gauss), floor), floor


def gauss_kronrod(g: Callable, lo: float, hi: float, rel_tol: float, abs_tol: float = 0.0,
                  max_intervals: int = 5000, initial: int = 4):
    """Globally adaptive G7/K15 quadrature of a vectorised, possibly vector-valued ``g``.

    Returns ``(value, error, evaluations)``; ``error`` is the summed
    ``|K15 - G7|`` estimate and is conservative for smooth integrands. It never
    drops below the accumulated roundoff floor, and reaching that floor counts
    as convergence even when ``rel_tol`` asks for more.
    """
    edges = np.linspace(lo, hi, initial + 1)
    pieces = {}
    heap = []
    counter = 0
    for a, b in zip(edges[:-1], edges[1:]):
        pieces[counter] = (a, b, *_gk_interval(g, a, b))
        counter += 1
    evals = 15 * initial

    def totals():
        ordered = sorted(pieces.values(), key=lambda p: p[0])
        ks = np.array([p[2] for p in ordered])
        es = np.array([p[3] for p in ordered])
        value = np.array([math.fsum(col) for col in ks.T])
        error = np.array([math.fsum(col) for col in es.T])
        excess = np.array([math.fsum(col) for col in (es - np.array([p[4] for p in ordered])).T])
        return value, error, excess

    while True:
        value, error, excess = totals()
        target = np.maximum(rel_tol * np.abs(value), abs_tol)
        if np.all(excess <= target):
            return value, error, evals
        if len(pieces) >= max_intervals:
            raise ConvergenceError(
                f"adaptive quadrature did not converge: error {error.max():.3e} "
                f"> target {target.min():.3e} after {len(pieces)} intervals")
        scale = np.where(target > 0, target, np.finfo(float).tiny)
        heap = [(-float(np.max((p[3] - p[4]) / scale)), idx) for idx, p in pieces.items()]
        heapq.heapify(heap)
        # bisect the worst intervals, a batch at a time
        for _ in range(max(1, len(pieces) // 8)):
            if not heap:
                break
            _, idx = heapq.heappop(heap)
            a, b = pieces.pop(idx)[:2]
            mid = 0.5 * (a + b)
            for lo_, hi_ in ((a, mid), (mid, b)):
                pieces[counter] = (lo_, hi_, *_gk_interval(g, lo_, hi_))
                counter += 1
            evals += 30


def _zero_t(f, spec: ZeroT, decay_scale, nu_floor):
    lo = max(spec.nu_min, nu_floor)
    # nu = lo + L t/(1-t) with L the decay length of the integrand
    L = 1.0 / float(decay_scale) if decay_scale is not None and decay_scale > 0 else 1.0

    def g(t):
        # keep nu finite on bisected intervals that reach t = 1 in floating point
        t = np.minimum(t, 1.0 - _EPS)
        nu = lo + L * t / (1.0 - t)
        vals = np.asarray(f(nu), dtype=float)
        jac = L / (1.0 - t) ** 2
        out = vals * (jac[:, None] if vals.ndim == 2 else jac)
        if not np.all(np.isfinite(out)):
            raise ConvergenceError("frequency integrand is not finite; it must decay as nu -> infinity")
        return out

    value, error, evals = gauss_kronrod(g, 0.0, 1.0, spec.rel_tol)
    # the part beyond t = 1 - 1e-8 is dropped; it must be negligible
    t_end = 1.0 - 1e-8
    tail = np.abs(np.atleast_2d(g(np.array([t_end])).T)[:, 0]) * (1.0 - t_end)
    if np.any(tail > np.maximum(spec.rel_tol * np.abs(value), 1e-300)):
        raise ConvergenceError("frequency integrand does not decay fast enough for the zero-temperature integral")
    return value / (2.0 * math.pi), error / (2.0 * math.pi), evals


def _finite_t(f, spec: FiniteT, decay_scale, zero_mode, nu_floor):
    T = spec.T
    w0 = _ZERO_WEIGHT[zero_mode]
    terms = []
    evals = 0
    if w0 > 0 and nu_floor <= 0:
        f0 = np.atleast_1d(np.asarray(f(np.array([0.0])), dtype=float)[0])
        terms.append(w0 * f0)
        evals += 1
    q_geo = math.exp(-2.0 * math.pi * T * decay_scale) if decay_scale and decay_scale > 0 else 0.0
    l_first = max(1, math.ceil(nu_floor / (2.0 * math.pi * T) - 1e-12))
    partial = np.zeros_like(terms[0]) if terms else None
    prev = None
    seen = 0
    l = l_first
    chunk = 16
    bound = None
    while True:
        hi = min(l + chunk, spec.l_max_cap + 1)
        nus = 2.0 * math.pi * T * np.arange(l, hi)
        block = np.asarray(f(nus), dtype=float)
        evals += len(nus)
        if block.ndim == 1:
            block = block[:, None]
        for row in block:
            terms.append(row)
            partial = row.copy() if partial is None else partial + row
            seen += 1
            mag = np.abs(row)
            if prev is not None and seen >= 2:
                with np.errstate(divide="ignore", invalid="ignore"):
                    ratio = np.where(mag == 0, 0.0, mag / np.abs(prev))
                q = max(q_geo, float(np.max(ratio)))
                bound = mag * q / (1.0 - q) if q < 1 else np.full_like(mag, np.inf)
                if np.all(bound <= spec.rel_tol * np.abs(partial)):
                    return _finish(terms, T, bound, evals, capped=False)
            prev = mag
        l = hi
        if l > spec.l_max_cap:
            break
        chunk = min(2 * chunk, 1024)
    if bound is None or not np.all(np.isfinite(bound)) or np.any(bound > np.abs(partial)):
        raise ConvergenceError(
            f"Matsubara sum does not converge within l_max_cap = {spec.l_max_cap}")
    warnings.warn(f"Matsubara sum capped at l = {spec.l_max_cap}", CappedSumWarning, stacklevel=3)
    return _finish(terms, T, bound, evals, capped=True)


def _finish(terms, T, bound, evals, capped):
    arr = np.array(terms)
    value = np.array([math.fsum(col) for col in arr.T]) * T
    return value, np.asarray(bound) * T, evals, capped


def thermal_reduce(f: Callable, spec: ThermalSpec, decay_scale: float | None = None,
                   zero_mode: ZeroMode | None = None, nu_floor: float = 0.0) -> ThermalResult:
    """Reduce ``f`` over frequencies per ``spec``.

    Parameters
    ----------
    f : callable
        Vectorised integrand, array of frequencies -> array ``(n,)`` or ``(n, k)``.
    spec : ZeroT or FiniteT
    decay_scale : float, optional
        Length ``s`` with ``f ~ exp(-nu s)`` at large ``nu``, typically twice
        the minimal separation. Sets the length of the rational map
        ``nu = t s^-1 / (1 - t)`` at zero temperature and the geometric tail ratio ``exp(-2 pi T s)`` at
        finite temperature.
    zero_mode : {"full", "half", "skip"}, optional
        Overrides ``spec.zero_mode``; defaults to ``"half"``.
    nu_floor : float
        Frequencies below this are excluded (the Proca mass gap).

    Returns
    -------
    ThermalResult
        ``value`` and ``tail_bound`` are scalars when ``f`` is scalar-valued.
    """
    shape = {}

    def recorded(nu):
        out = np.asarray(f(nu), dtype=float)
        shape.setdefault("ndim", out.ndim)
        return out

    if isinstance(spec, ZeroT):
        value, tail, evals = _zero_t(recorded, spec, decay_scale, nu_floor)
        capped = False
    elif isinstance(spec, FiniteT):
        mode = zero_mode or spec.zero_mode or "half"
        value, tail, evals, capped = _finite_t(recorded, spec, decay_scale, mode, nu_floor)
    else:
        raise TypeError(f"unknown thermal spec {spec!r}")
    value = np.asarray(value, dtype=float)
    tail = np.asarray(tail, dtype=float)
    if shape.get("ndim", 1) == 1:
        return ThermalResult(float(value[0]), float(tail[0]), evals, capped)
    return ThermalResult(value, tail, evals, capped)


def extrapolate_t2(temperatures, values):
    """Polynomial extrapolation in ``T^2`` to ``T = 0``.

    Uses all points (exact interpolation through them) and returns
    ``(estimate, error)`` where ``error`` is the change relative to the
    extrapolation that drops the highest temperature.
    """
    t2 = np.asarray(temperatures, dtype=float) ** 2
    vals = np.asarray(values, dtype=float)
    order = np.argsort(t2)
    t2, vals = t2[order], vals[order]

    def neville(x, y):
        p = list(y)
        n = len(x)
        for k in range(1, n):
            for i in range(n - k):
                p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i])
        return p[0]

    full = neville(t2, vals)
    if len(t2) < 2:
        return float(full), math.inf
    reduced = neville(t2[:-1], vals[:-1])
    return float(full), float(abs(full - reduced))
