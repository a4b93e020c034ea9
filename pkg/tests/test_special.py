import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir.errors import DomainError
from casimir.special import EULER_GAMMA, bessel_k0, bessel_k0e, exp_integral_e1, exp_integral_e1e
from oracles import e1_integral, k0_integral

# high-precision reference values, frozen from mpmath (besselk, e1)
K0_1 = 0.42102443824070833
E1_1 = 0.21938393439552027


def test_k0_at_one_against_integral_definition():
    assert k0_integral(1.0) == pytest.approx(K0_1, rel=1e-9)
    assert bessel_k0(1.0) == pytest.approx(K0_1, rel=1e-14)


@pytest.mark.parametrize("x", [1e-3, 0.3, 2.0, 7.5, 30.0])
def test_k0_matches_scipy_oracle(x):
    from scipy.special import k0

    assert bessel_k0(x) == pytest.approx(float(k0(x)), rel=1e-13)


def test_k0_small_x_logarithm():
    x = 1e-8
    assert bessel_k0(x) / (-math.log(x / 2.0) - EULER_GAMMA) == pytest.approx(1.0, rel=1e-12)


def test_k0_large_x_asymptote():
    x = 400.0
    assert bessel_k0e(x) * math.sqrt(2.0 * x / math.pi) == pytest.approx(1.0, rel=1e-3)


def test_e1_at_one_against_quadrature():
    assert e1_integral(1.0) == pytest.approx(E1_1, rel=1e-13)
    assert exp_integral_e1(1.0) == pytest.approx(E1_1, rel=1e-14)


@pytest.mark.parametrize("x", [1e-6, 0.5, 3.0, 12.0, 80.0])
def test_e1_matches_quadrature(x):
    assert exp_integral_e1(x) == pytest.approx(e1_integral(x), rel=1e-12)


def test_e1_large_x_asymptote():
    x = 500.0
    assert exp_integral_e1e(x) * x == pytest.approx(1.0, rel=3e-3)


def test_arrays():
    x = np.array([0.1, 1.0, 10.0])
    assert bessel_k0(x).shape == (3,)
    assert exp_integral_e1(x).shape == (3,)


@pytest.mark.parametrize("fn", [bessel_k0, bessel_k0e, exp_integral_e1, exp_integral_e1e])
@pytest.mark.parametrize("x", [0.0, -1.0])
def test_domain(fn, x):
    with pytest.raises(DomainError):
        fn(x)


@given(x1=st.floats(1e-4, 50.0), x2=st.floats(1e-4, 50.0))
def test_monotone_decreasing(x1, x2):
    lo, hi = sorted((x1, x2))
    if lo == hi:
        return
    assert exp_integral_e1(lo) > exp_integral_e1(hi)
    assert bessel_k0(lo) > bessel_k0(hi)


def test_euler_gamma_full_precision():
    assert EULER_GAMMA == 0.5772156649015329
