import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from casimir.errors import DomainError, SingularityError
from casimir.kernels import (
    EM,
    Proca,
    Scalar,
    dressed_propagator_k,
    dyadic_blocks,
    em_polynomial,
    green_dyadic,
    green_scalar,
    kernel_array,
    pair_kernel,
    spatial_dim,
)
from casimir.special import bessel_k0
from casimir.susceptibility import Constant
from oracles import em_frequency_integral, naive_dyadic

NU = np.geomspace(0.05, 20.0, 9)
R = np.geomspace(0.05, 20.0, 9)


def test_green_scalar_examples():
    assert green_scalar(3, 2.0, 1.0) == pytest.approx(math.exp(-2.0) / (4.0 * math.pi), rel=1e-15)
    assert green_scalar(2, 1.0, 1.0) == pytest.approx(bessel_k0(1.0) / (2.0 * math.pi), rel=1e-15)
    assert green_scalar(1, 1.0, 1e3) == 0.0


@pytest.mark.parametrize("args", [(3, 0.0, 1.0), (3, 1.0, 0.0), (1, -1.0, 1.0), (4, 1.0, 1.0)])
def test_green_scalar_domain(args):
    with pytest.raises(DomainError):
        green_scalar(*args)


def test_dressed_propagator_examples():
    assert dressed_propagator_k(0.0, 1.0, Constant(0.0)) == 1.0
    assert dressed_propagator_k(1.0, 1.0, Constant(0.0)) == 0.5
    assert dressed_propagator_k(1.0, 1.0, Constant(1.0)) == pytest.approx(1.0 / 3.0, rel=1e-15)
    with pytest.raises(SingularityError):
        dressed_propagator_k(0.0, 0.0, Constant(0.0))


def test_pair_kernels_match_their_forms():
    nu, r = 0.8, 1.7
    assert pair_kernel(Scalar(1), nu, r).value == pytest.approx(math.exp(-2 * nu * r) / (2 * nu) ** 2, rel=1e-15)
    assert pair_kernel(Scalar(2), nu, r).value == pytest.approx(bessel_k0(nu * r) ** 2 / (4 * math.pi ** 2), rel=1e-15)
    assert pair_kernel(Scalar(3), nu, r).value == pytest.approx(green_scalar(3, nu, r) ** 2, rel=1e-14)


def test_em_frequency_integral_exact():
    q = em_frequency_integral(1.0)
    assert q == 23 / 4  # so int h dnu = 23/(32 pi^2 r^7)
    from casimir.thermal import ZeroT, thermal_reduce

    for r in (0.5, 1.0, 2.0):
        res = thermal_reduce(lambda nu, r=r: np.array([kernel_array(EM(), float(v), [r])[0] for v in nu]),
                             ZeroT(rel_tol=1e-13), decay_scale=2 * r)
        assert res.value * 2 * math.pi == pytest.approx(23.0 / (32.0 * math.pi ** 2 * r ** 7), rel=1e-12)


def test_em_decays():
    assert pair_kernel(EM(), 1.0, 500.0).value == 0.0


def test_proca_massless_equals_em():
    assert pair_kernel(Proca(0.0), 1.0, 1.0).value == pair_kernel(EM(), 1.0, 1.0).value
    for nu in NU:
        np.testing.assert_allclose(kernel_array(Proca(1e-9), nu, R), kernel_array(EM(), nu, R), rtol=1e-12)


def test_proca_below_gap_flagged():
    v = pair_kernel(Proca(2.0), 1.0, 1.0)
    assert math.isnan(v.value) and v.domain_flag == "below-mass-gap"
    with pytest.raises(DomainError):
        green_dyadic(Proca(2.0), 1.0, [1.0, 0.0, 0.0])


def test_spatial_dim():
    assert [spatial_dim(k) for k in (Scalar(1), Scalar(2), Scalar(3), EM(), Proca(1.0))] == [1, 2, 3, 3, 3]


def test_dyadic_matches_naive_form():
    rng = np.random.default_rng(3)
    for _ in range(20):
        rv = rng.normal(size=3)
        nu = float(rng.uniform(0.1, 5.0))
        np.testing.assert_allclose(green_dyadic(EM(), nu, rv), naive_dyadic(nu, rv), rtol=1e-12, atol=1e-15)


def test_dyadic_contraction_equals_em_kernel():
    # sum_ij G_ij(r) G_ji(-r) over the (nu, r) grid; G is even in r
    for nu in NU:
        for r in R:
            g = green_dyadic(EM(), float(nu), [0.0, 0.0, float(r)])
            h = kernel_array(EM(), float(nu), [float(r)])[0]
            if h == 0:
                continue
            assert np.sum(g * g.T) == pytest.approx(h, rel=1e-10)


def test_dyadic_zero_distance():
    with pytest.raises(SingularityError):
        green_dyadic(EM(), 1.0, [0.0, 0.0, 0.0])


def test_dyadic_static_limit_finite():
    g = green_dyadic(EM(), 0.0, [0.0, 0.0, 2.0])
    np.testing.assert_allclose(g, np.diag([1.0, 1.0, -2.0]) / (4 * math.pi * 8.0), rtol=1e-15)


def test_dyadic_blocks_vectorised():
    diff = np.random.default_rng(0).normal(size=(4, 5, 3))
    blocks = dyadic_blocks(EM(), 0.9, diff)
    assert blocks.shape == (4, 5, 3, 3)
    np.testing.assert_allclose(blocks[2, 3], green_dyadic(EM(), 0.9, diff[2, 3]), rtol=1e-14)


vec = st.lists(st.floats(-3, 3), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 1e-2)


@given(rv=vec, nu=st.floats(0.0, 10.0), seed=st.integers(0, 2 ** 32 - 1))
def test_dyadic_symmetric_and_rotation_covariant(rv, nu, seed):
    rot = Rotation.random(random_state=seed).as_matrix()
    g = green_dyadic(EM(), nu, rv)
    np.testing.assert_allclose(g, g.T, rtol=0, atol=1e-15 * np.abs(g).max())
    np.testing.assert_allclose(rot @ g @ rot.T, green_dyadic(EM(), nu, rot @ np.array(rv)),
                               rtol=1e-9, atol=1e-12 * np.abs(g).max())


@given(nu=st.floats(1e-3, 20.0), r1=st.floats(0.05, 10.0), r2=st.floats(0.05, 10.0),
       kind=st.sampled_from([Scalar(1), Scalar(2), Scalar(3), EM()]))
def test_kernels_positive_and_decreasing_in_r(nu, r1, r2, kind):
    lo, hi = sorted((r1, r2))
    k = kernel_array(kind, nu, [lo, hi])
    assert np.all(k >= 0)
    assert k[1] <= k[0]


def test_em_polynomial_horner():
    z, r = 1.3, 0.7
    expected = z ** 4 / r ** 2 + 2 * z ** 3 / r ** 3 + 5 * z ** 2 / r ** 4 + 6 * z / r ** 5 + 3 / r ** 6
    assert em_polynomial(z, r) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("kind", [Scalar(1), Scalar(2)])
def test_static_divergent_kernels_reject_zero(kind):
    with pytest.raises(DomainError):
        kernel_array(kind, 0.0, [1.0])


def test_kernel_rejects_nonpositive_distance():
    with pytest.raises(SingularityError):
        kernel_array(EM(), 1.0, [1.0, 0.0])
