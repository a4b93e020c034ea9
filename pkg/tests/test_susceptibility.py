import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir.errors import DomainError
from casimir.susceptibility import Constant, Lorentz, coupling_squared, dielectric_imag, eval_chi_imag, is_zero

pos = st.floats(0.01, 100.0)


def test_constant_is_frequency_independent():
    assert eval_chi_imag(Constant(2.0), 17.3) == 2.0


def test_lorentz_static_and_unit_frequency():
    m = Lorentz(1.0, 1.0, 0.0)
    assert eval_chi_imag(m, 0.0) == 1.0
    assert eval_chi_imag(m, 1.0) == pytest.approx(0.5, rel=1e-15)


def test_dielectric_examples():
    assert dielectric_imag(Constant(0.0), 3.0) == 1.0
    assert dielectric_imag(Constant(0.3), 5.0) == pytest.approx(1.3, rel=1e-15)
    assert dielectric_imag(Lorentz(1.0, 1.0, 0.0), 1.0) == pytest.approx(1.5, rel=1e-15)


def test_coupling_examples():
    assert coupling_squared(Constant(5.0), 2.0) == 0.0
    assert coupling_squared(Lorentz(1.0, 1.0, 0.0), 2.0) == 0.0
    assert coupling_squared(Lorentz(1.0, 1.0, 0.1), 1.0) == pytest.approx(10.0 / math.pi, rel=1e-13)


def test_array_input_keeps_shape():
    nu = np.linspace(0.0, 3.0, 7).reshape(7, 1)
    out = eval_chi_imag(Lorentz(2.0, 1.5, 0.2), nu)
    assert out.shape == nu.shape


@pytest.mark.parametrize("bad", [-1.0, -1e-300, math.nan])
def test_negative_frequency_rejected(bad):
    with pytest.raises(DomainError):
        eval_chi_imag(Constant(1.0), bad)
    with pytest.raises(DomainError):
        dielectric_imag(Constant(1.0), bad)


def test_coupling_needs_positive_frequency():
    with pytest.raises(DomainError):
        coupling_squared(Constant(1.0), 0.0)


@pytest.mark.parametrize("args", [(-1.0,), (math.inf,)])
def test_constant_invariants(args):
    with pytest.raises(DomainError):
        Constant(*args)


@pytest.mark.parametrize("args", [(1.0, 0.0, 0.0), (1.0, 1.0, -0.1), (-1.0, 1.0, 0.0)])
def test_lorentz_invariants(args):
    with pytest.raises(DomainError):
        Lorentz(*args)


def test_is_zero():
    assert is_zero(Constant(0.0)) and is_zero(Lorentz(0.0, 1.0))
    assert not is_zero(Constant(1e-30))


@given(chi0=pos, w0=pos, gamma=st.floats(0.0, 50.0), nu1=st.floats(0.0, 1e3), nu2=st.floats(0.0, 1e3))
def test_lorentz_real_nonnegative_nonincreasing(chi0, w0, gamma, nu1, nu2):
    m = Lorentz(chi0, w0, gamma)
    lo, hi = sorted((nu1, nu2))
    a, b = eval_chi_imag(m, lo), eval_chi_imag(m, hi)
    assert a >= 0 and b >= 0
    assert b <= a * (1 + 1e-15)
    assert eval_chi_imag(m, 0.0) == pytest.approx(chi0, rel=1e-15)
