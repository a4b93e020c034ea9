"""Susceptibility models on the imaginary frequency axis.

All quantities use natural units (hbar = c = k_B = eps_0 = 1), so frequencies
and temperatures are inverse lengths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "Constant",
    "Lorentz",
    "SusceptibilityModel",
    "eval_chi_imag",
    "dielectric_imag",
    "coupling_squared",
    "is_zero",
]


@dataclass(frozen=True)
class Constant:
    """Frequency independent susceptibility."""

    chi0: float

    def __post_init__(self):
        if not (math.isfinite(self.chi0) and self.chi0 >= 0):
            raise DomainError(f"chi0 must be finite and >= 0, got {self.chi0!r}")


@dataclass(frozen=True)
class Lorentz:
    """Single damped oscillator, chi(w) = chi0 w0^2 / (w0^2 - w^2 - i gamma w)."""

    chi0: float
    omega0: float
    gamma: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.chi0) and self.chi0 >= 0):
            raise DomainError(f"chi0 must be finite and >= 0, got {self.chi0!r}")
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise DomainError(f"omega0 must be > 0, got {self.omega0!r}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(f"gamma must be >= 0, got {self.gamma!r}")


SusceptibilityModel = Union[Constant, Lorentz]


def is_zero(model: SusceptibilityModel) -> bool:
    """True when the model vanishes at every frequency."""
    return model.chi0 == 0


def _check_nonneg(nu):
    arr = np.asarray(nu, dtype=float)
    if np.any(~(arr >= 0)):
        raise DomainError("imaginary frequency nu must be >= 0")
    return arr


def eval_chi_imag(model: SusceptibilityModel, nu):
    """Susceptibility at imaginary frequency ``omega = i nu``.

    Accepts a scalar or an array of frequencies and returns the same shape.
    The result is real, non-negative and non-increasing in ``nu``.
    """
    arr = _check_nonneg(nu)
    if isinstance(model, Constant):
        out = np.full_like(arr, model.chi0)
    elif isinstance(model, Lorentz):
        w0sq = model.omega0 ** 2
        out = model.chi0 * w0sq / (w0sq + model.gamma * arr + arr * arr)
    else:
        raise TypeError(f"unknown susceptibility model {model!r}")
    return float(out) if out.ndim == 0 else out


def dielectric_imag(model: SusceptibilityModel, nu):
    """Relative permittivity ``1 + chi(i nu)``."""
    return 1.0 + eval_chi_imag(model, nu)


def coupling_squared(model: SusceptibilityModel, omega: float) -> float:
    """Squared field-medium coupling ``(omega/pi) Im chi(omega)`` at real frequency."""
    if not omega > 0:
        raise DomainError(f"real frequency must be > 0, got {omega!r}")
    if isinstance(model, Constant):
        return 0.0
    if isinstance(model, Lorentz):
        g = model.gamma
        if g == 0:
            return 0.0
        w0sq = model.omega0 ** 2
        im = model.chi0 * w0sq * g * omega / ((w0sq - omega ** 2) ** 2 + (g * omega) ** 2)
        return omega / math.pi * im
    raise TypeError(f"unknown susceptibility model {model!r}")
