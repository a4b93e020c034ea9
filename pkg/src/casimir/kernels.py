"""Free Green's functions and pair-interaction kernels on the imaginary axis.

The pair kernel ``K(nu, r)`` is the per-frequency integrand of the first
order interaction energy,

    E = - thermal_reduce_nu [ sum_{i in A, j in B} w_i w_j chi_A chi_B K(nu, r_ij) ],

and equals the contraction ``tr G(r) G(-r)`` of the free propagator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import DomainError, SingularityError
from .special import bessel_k0
from .susceptibility import SusceptibilityModel, eval_chi_imag

__all__ = [
    "Scalar",
    "EM",
    "Proca",
    "FieldKind",
    "PairKernelValue",
    "spatial_dim",
    "green_scalar",
    "dressed_propagator_k",
    "pair_kernel",
    "kernel_array",
    "green_dyadic",
    "dyadic_blocks",
    "em_polynomial",
]

FOUR_PI = 4.0 * math.pi
EIGHT_PI_SQ = 8.0 * math.pi ** 2


@dataclass(frozen=True)
class Scalar:
    """Massless scalar field in ``dim`` spatial dimensions."""

    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise DomainError(f"scalar field dimension must be 1, 2 or 3, got {self.dim!r}")


@dataclass(frozen=True)
class EM:
    """Transverse electromagnetic field in three dimensions."""


@dataclass(frozen=True)
class Proca:
    """Massive vector field; ``mass`` is an inverse length."""

    mass: float

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass >= 0):
            raise DomainError(f"Proca mass must be >= 0, got {self.mass!r}")


FieldKind = Union[Scalar, EM, Proca]


@dataclass(frozen=True)
class PairKernelValue:
    value: float
    domain_flag: Literal["ok", "below-mass-gap"] = "ok"


def spatial_dim(kind: FieldKind) -> int:
    return kind.dim if isinstance(kind, Scalar) else 3


def _mass(kind: FieldKind) -> float:
    return kind.mass if isinstance(kind, Proca) else 0.0


def green_scalar(dim: int, nu: float, r: float) -> float:
    """Free scalar propagator at imaginary frequency ``nu`` and distance ``r``."""
    if not nu > 0:
        raise DomainError(f"green_scalar needs nu > 0, got {nu!r}")
    if not r > 0:
        raise DomainError(f"green_scalar needs r > 0, got {r!r}")
    if dim == 1:
        return math.exp(-nu * r) / (2.0 * nu)
    if dim == 2:
        return bessel_k0(nu * r) / (2.0 * math.pi)
    if dim == 3:
        return math.exp(-nu * r) / (FOUR_PI * r)
    raise DomainError(f"dimension must be 1, 2 or 3, got {dim!r}")


def dressed_propagator_k(nu: float, k: float, model: SusceptibilityModel) -> float:
    """Propagator of a homogeneous medium in reciprocal space, ``1/(k^2 + nu^2 eps(i nu))``."""
    denom = k * k + nu * nu * (1.0 + eval_chi_imag(model, abs(nu)))
    if denom == 0:
        raise SingularityError("dressed propagator is singular at k = nu = 0")
    return 1.0 / denom


def em_polynomial(zeta, r):
    """Bracket of the EM kernel, ``z^4/r^2 + 2 z^3/r^3 + 5 z^2/r^4 + 6 z/r^5 + 3/r^6``."""
    x = zeta * r
    return ((((x + 2.0) * x + 5.0) * x + 6.0) * x + 3.0) / r ** 6


def kernel_array(kind: FieldKind, nu: float, r):
    """Vectorised pair kernel at one frequency over an array of distances.

    ``nu = 0`` is accepted where the static limit is finite (3D scalar, EM,
    Proca at zero mass). For Proca below the mass gap the result is all-NaN;
    callers test ``nu < mass`` before calling.
    """
    r = np.asarray(r, dtype=float)
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu!r}")
    if np.any(~(r > 0)):
        raise SingularityError("pair kernel evaluated at r <= 0")
    if isinstance(kind, Scalar):
        if kind.dim == 1:
            if nu == 0:
                raise DomainError("1D scalar kernel diverges at nu = 0")
            return np.exp(-2.0 * nu * r) / (2.0 * nu) ** 2
        if kind.dim == 2:
            if nu == 0:
                raise DomainError("2D scalar kernel diverges at nu = 0")
            k0 = bessel_k0(nu * r)
            return k0 * k0 / (4.0 * math.pi ** 2)
        return np.exp(-2.0 * nu * r) / (16.0 * math.pi ** 2 * r * r)
    m = _mass(kind)
    if nu < m:
        return np.full_like(r, np.nan)
    zeta = math.sqrt(nu * nu - m * m) if m > 0 else nu
    return np.exp(-2.0 * zeta * r) / EIGHT_PI_SQ * em_polynomial(zeta, r)


def pair_kernel(kind: FieldKind, nu: float, r: float) -> PairKernelValue:
    """Pair kernel ``K(nu, r)`` for a single distance."""
    if not nu > 0:
        raise DomainError(f"pair_kernel needs nu > 0, got {nu!r}")
    if not r > 0:
        raise DomainError(f"pair_kernel needs r > 0, got {r!r}")
    if isinstance(kind, Proca) and nu < kind.mass:
        return PairKernelValue(math.nan, "below-mass-gap")
    return PairKernelValue(float(kernel_array(kind, nu, r)))


def _dyadic_coefficients(zeta, r):
    # G = e^{-zeta r}/(4 pi r) [alpha I - beta rhat rhat^T], finite as zeta -> 0
    pref = np.exp(-zeta * r) / (FOUR_PI * r)
    inv = 1.0 / r
    alpha = zeta * zeta + zeta * inv + inv * inv
    beta = zeta * zeta + 3.0 * zeta * inv + 3.0 * inv * inv
    return pref * alpha, pref * beta


def _zeta(kind: FieldKind, nu: float) -> float:
    if not isinstance(kind, (EM, Proca)):
        raise DomainError(f"dyadic Green's function needs an EM or Proca field, got {kind!r}")
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu!r}")
    m = _mass(kind)
    if nu < m:
        raise DomainError(f"nu = {nu} lies below the Proca mass gap m = {m}")
    return math.sqrt(nu * nu - m * m) if m > 0 else nu


def green_dyadic(kind: FieldKind, nu: float, r_vec, exclude_contact: bool = True) -> np.ndarray:
    """Transverse free dyadic Green's function as a 3x3 matrix.

    The contact term ``delta_ij delta^3(r) / 3`` has no support at ``r != 0``,
    so ``exclude_contact`` only documents intent; ``r = 0`` always raises.
    """
    zeta = _zeta(kind, nu)
    r_vec = np.asarray(r_vec, dtype=float).reshape(3)
    r = float(np.linalg.norm(r_vec))
    if r == 0:
        raise SingularityError("dyadic Green's function is singular at r = 0")
    a, b = _dyadic_coefficients(zeta, r)
    rhat = r_vec / r
    return a * np.eye(3) - b * np.outer(rhat, rhat)


def dyadic_blocks(kind: FieldKind, nu: float, diff: np.ndarray) -> np.ndarray:
    """Dyadic Green's functions for an array of separation vectors.

    ``diff`` has shape (..., 3); the result has shape (..., 3, 3).
    """
    zeta = _zeta(kind, nu)
    r = np.linalg.norm(diff, axis=-1)
    if np.any(r == 0):
        raise SingularityError("coincident nodes in dyadic Green's function")
    a, b = _dyadic_coefficients(zeta, r)
    rhat = diff / r[..., None]
    eye = np.broadcast_to(np.eye(3), r.shape + (3, 3))
    return a[..., None, None] * eye - b[..., None, None] * rhat[..., :, None] * rhat[..., None, :]
