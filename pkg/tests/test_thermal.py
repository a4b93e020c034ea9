import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from casimir.errors import ConvergenceError, DomainError
from casimir.kernels import EM, Proca, Scalar
from casimir.thermal import (
    CappedSumWarning,
    FiniteT,
    ZeroT,
    default_zero_mode,
    extrapolate_t2,
    gauss_kronrod,
    matsubara_frequency,
    thermal_reduce,
)
from oracles import matsubara_exponential_half


def expo(r):
    return lambda nu: np.exp(-2.0 * np.asarray(nu) * r)


def test_matsubara_frequency():
    assert matsubara_frequency(1.0, 0) == 0.0
    assert matsubara_frequency(1.0, 2) == pytest.approx(4 * math.pi, rel=1e-15)
    assert matsubara_frequency(0.5, 3) == pytest.approx(3 * math.pi, rel=1e-15)


def test_zero_t_exponential():
    res = thermal_reduce(expo(1.0), ZeroT())
    assert res.value == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-12)
    assert res.tail_bound >= 0


def test_finite_t_half_weight_geometric_series():
    res = thermal_reduce(expo(1.0), FiniteT(1.0, "half"))
    expected = 1.0 * (0.5 + math.exp(-4 * math.pi) / (1 - math.exp(-4 * math.pi)))
    assert res.value == pytest.approx(expected, rel=1e-13)
    assert matsubara_exponential_half(1.0, 1.0) == pytest.approx(expected, rel=1e-15)


def test_zero_function():
    for spec in (ZeroT(), FiniteT(0.3)):
        res = thermal_reduce(lambda nu: np.zeros_like(np.asarray(nu, float)), spec, zero_mode="full")
        assert (res.value, res.tail_bound) == (0.0, 0.0)


@pytest.mark.parametrize("mode,w0", [("full", 1.0), ("half", 0.5), ("skip", 0.0)])
def test_zero_mode_weights(mode, w0):
    T, r = 0.2, 0.7
    res = thermal_reduce(expo(r), FiniteT(T, mode))
    q = math.exp(-4 * math.pi * T * r)
    assert res.value == pytest.approx(T * (w0 + q / (1 - q)), rel=1e-12)


def test_default_zero_modes():
    assert default_zero_mode(Scalar(1)) == "skip"
    assert default_zero_mode(Scalar(2)) == "skip"
    assert [default_zero_mode(k) for k in (Scalar(3), EM(), Proca(0.5))] == ["half"] * 3


def test_nu_floor_excludes_band():
    res = thermal_reduce(expo(1.0), ZeroT(), nu_floor=0.5)
    assert res.value == pytest.approx(math.exp(-1.0) / (4 * math.pi), rel=1e-12)
    # Matsubara terms below the floor are dropped, including l = 0
    T = 0.1
    res = thermal_reduce(expo(1.0), FiniteT(T, "full"), nu_floor=1.0)
    l0 = math.ceil(1.0 / (2 * math.pi * T))
    expected = T * sum(math.exp(-2 * 2 * math.pi * T * l) for l in range(l0, 400))
    assert res.value == pytest.approx(expected, rel=1e-12)


def test_vector_valued_integrand():
    res = thermal_reduce(lambda nu: np.stack([np.exp(-2 * nu), np.exp(-4 * nu)], axis=-1), ZeroT())
    np.testing.assert_allclose(res.value, [1 / (4 * math.pi), 1 / (8 * math.pi)], rtol=1e-12)


def test_non_decaying_raises():
    with pytest.raises(ConvergenceError):
        thermal_reduce(lambda nu: np.ones_like(np.asarray(nu, float)), FiniteT(1.0, l_max_cap=200))
    with pytest.raises(ConvergenceError):
        thermal_reduce(lambda nu: np.ones_like(np.asarray(nu, float)), ZeroT())


def test_cap_reached_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = thermal_reduce(lambda nu: np.exp(-np.asarray(nu)), FiniteT(0.01, "half", l_max_cap=50))
    assert res.capped
    assert any(issubclass(w.category, CappedSumWarning) for w in caught)


def test_spec_invariants():
    for make in (lambda: FiniteT(0.0), lambda: FiniteT(1.0, "double"), lambda: ZeroT(rel_tol=0.0),
                 lambda: FiniteT(1.0, l_max_cap=0)):
        with pytest.raises(DomainError):
            make()


@pytest.mark.parametrize("f,lo,hi", [(np.sin, 0.0, 3.0), (lambda x: 1 / (1 + x * x), -5.0, 7.0),
                                     (lambda x: np.sqrt(x), 0.0, 2.0)])
def test_gauss_kronrod_against_scipy(f, lo, hi):
    value, err, _ = gauss_kronrod(f, lo, hi, rel_tol=1e-12)
    ref = integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-13)[0]
    assert value == pytest.approx(ref, rel=1e-11)
    assert err <= 1e-10 * abs(ref)


def test_gauss_kronrod_polynomial_exact():
    value, _, _ = gauss_kronrod(lambda x: x ** 20, 0.0, 1.0, rel_tol=1e-14)
    assert value == pytest.approx(1.0 / 21.0, rel=1e-14)


def test_extrapolate_t2_exact_on_quadratic_polynomial():
    f = lambda T: 3.0 - 2.0 * T ** 2 + 5.0 * T ** 4
    est, err = extrapolate_t2([0.1, 0.05, 0.025], [f(0.1), f(0.05), f(0.025)])
    assert est == pytest.approx(3.0, rel=1e-13)
    assert err >= 0


@given(T=st.floats(0.01, 2.0), r=st.floats(0.1, 5.0))
def test_half_weight_sum_is_coth(T, r):
    res = thermal_reduce(expo(r), FiniteT(T, "half", rel_tol=1e-15), decay_scale=2 * r)
    assert res.value == pytest.approx(0.5 * T / math.tanh(2 * math.pi * T * r), rel=1e-11)


def test_finite_t_approaches_zero_t():
    f = expo(0.5)
    zero = thermal_reduce(f, ZeroT()).value
    Ts = [0.04, 0.02, 0.01]
    vals = [thermal_reduce(f, FiniteT(T, "half")).value for T in Ts]
    est, _ = extrapolate_t2(Ts, vals)
    assert est == pytest.approx(zero, rel=1e-6)
