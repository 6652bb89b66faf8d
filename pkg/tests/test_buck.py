import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lidstone.basis import eval_lambda1
from lidstone.buck import (buck_coefficients, buck_expand, default_radius,
                           even_derivative_violations, g_t_eval, gk_kernel, hk_kernel,
                           schoenberg_decompose, sine_correction, sine_sum)
from lidstone.contour import ContourConfig, circle_quadrature
from lidstone.errors import (HypothesisViolation, InputError, NotEvenVanishing, PoleGuard,
                             RadiusOutOfRange)
from lidstone.expansion import derivative_data, lidstone_partial_sum
from lidstone.models import (exp_model, polynomial_model, sin_kpi_model, sine_mix_model,
                             taylor_model)
from lidstone.polynomial import RationalPolynomial

Z = RationalPolynomial.z()

# Taylor coefficients of G_K(., z) at 0 from 30-digit numerical differentiation
# of the closed-form kernel (independent of the g_t formula).
G_TAYLOR = {
    (1, 0.3): [-0.21503621480048387, 0.0066840789022543486, -0.00018376930832822358,
               4.8098557653681226e-6, -1.2345502550033027e-7],
    (1, 1.7): [2.2150362148004839, 0.48331592109774565, 0.020192102641661557,
               0.00032199292201240966, 2.9829793310558858e-6],
    (2, 0.3): [0.087694476655778927, -0.00098417909354862552, 1.046993582417095e-5,
               -1.1028176646028972e-7, 1.1735141016559972e-9],
    (2, 1.7): [1.9123055233442211, 0.49098417909354863, 0.019997863397509162,
               0.00032691305954423807, 2.8583507914538996e-6],
}


# -- g_t ------------------------------------------------------------------------------


@pytest.mark.parametrize("key", sorted(G_TAYLOR))
def test_g_t_matches_frozen_taylor_coefficients(key):
    K, z = key
    for n, want in enumerate(G_TAYLOR[key]):
        assert g_t_eval(2 * n, K, z) == pytest.approx(want, rel=1e-13, abs=1e-17)


@pytest.mark.parametrize("K", [1, 2, 3])
@pytest.mark.parametrize("t", [0, 2, 4, 6, 8])
def test_g_t_is_taylor_coefficient_of_kernel(K, t):
    z = 0.3 + 0.2j
    q = circle_quadrature(lambda w: gk_kernel(w, z, K) * w ** (-t - 1), ContourConfig(1.0)).value
    assert abs(q - g_t_eval(t, K, z)) < 1e-13


def test_g_t_examples():
    assert g_t_eval(0, 1, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert g_t_eval(2, 1, 0.5) == pytest.approx(-1 / 16 + 2 / math.pi**3, abs=1e-16)


@pytest.mark.parametrize("t", [0, 2, 8, 20])
@pytest.mark.parametrize("K", [1, 3])
def test_g_t_odd_and_correction_exact(t, K):
    for z in (0.3, 1.1 - 0.4j):
        assert abs(g_t_eval(t, K, -z) + g_t_eval(t, K, z)) < 1e-13
        want = 2 * (-1) ** (t // 2) * sum(
            (-1) ** k * (k * math.pi) ** (-t - 1) * cmath.sin(k * math.pi * z)
            for k in range(1, K + 1)
        )
        assert abs(g_t_eval(t, K, z) - eval_lambda1(t, z) - want) < 1e-13
        assert abs(sine_correction(t, K, z) - want) < 1e-15


@pytest.mark.parametrize("bad", [dict(t=3, K=1), dict(t=2, K=0), dict(t=-2, K=1)])
def test_g_t_input_errors(bad):
    with pytest.raises(InputError):
        g_t_eval(bad["t"], bad["K"], 0.3)


# -- kernels ------------------------------------------------------------------------------


def _plain_gk(zeta, z, K):
    s = sum((-1) ** (k + 1) * k * cmath.sin(k * math.pi * z) / (zeta**2 + (k * math.pi) ** 2)
            for k in range(1, K + 1))
    return cmath.sinh(zeta * z) / cmath.sinh(zeta) - 2 * math.pi * s


def _pole_avoiding_grid(K):
    rs = np.linspace(0.3, (K + 1) * math.pi - 0.3, 6)
    angles = np.linspace(0.1, 2 * math.pi, 7, endpoint=False)
    pts = [r * cmath.exp(1j * a) for r in rs for a in angles]
    return [w for w in pts if min(abs(w - m * math.pi * 1j) for m in range(-K, K + 1) if m) > 0.2]


@pytest.mark.parametrize("K", [1, 2, 3])
def test_kernel_decomposition(K):
    for w in _pole_avoiding_grid(K):
        for z in (0.3, 1.4 - 0.2j):
            assert abs(gk_kernel(w, z, K) - _plain_gk(w, z, K)) < 1e-12


@pytest.mark.parametrize("K", [1, 2])
def test_hk_identity(K):
    for w in _pole_avoiding_grid(K):
        for z in (0.3, 0.8 + 0.3j):
            lhs = hk_kernel(w, z, K)
            assert abs(lhs - cmath.cosh(w * z) + gk_kernel(w, 1 - z, K)) < 1e-12


def test_kernel_special_points():
    for K in (1, 2):
        assert gk_kernel(0, 0.3, K) == pytest.approx(g_t_eval(0, K, 0.3), abs=1e-15)
        assert hk_kernel(1.3 - 0.4j, 0, K) == 0
        for w in (0.5, 2j, -1 + 1j):
            assert gk_kernel(w, 1.0, K) == pytest.approx(1.0, abs=1e-14)


def test_hk_small_zeta_limit():
    # cosh(0) - G_K(0, 1 - z) = 1 - g_0(1 - z)
    z = 0.3
    want = 1 - g_t_eval(0, 1, 1 - z)
    for w in (0, 1e-6, 1e-3):
        assert hk_kernel(w, z, 1) == pytest.approx(want, abs=1e-6 if w else 1e-15)


@pytest.mark.parametrize("m", [1, -1, 2])
@pytest.mark.parametrize("eps", [0, 1e-9, 1e-6, -5e-4j, 9.9e-4, 1.01e-3])
def test_kernels_continuous_at_removed_poles(m, eps):
    K, z = 2, 0.3
    w = m * math.pi * 1j + eps
    # reference: Cauchy formula over a ring where the plain formula is well-conditioned
    c = m * math.pi * 1j
    ring = [c + 0.05 * cmath.exp(2j * math.pi * j / 64) for j in range(64)]
    weight = [(v - c) / (v - w) for v in ring]
    ref_g = np.mean([_plain_gk(v, z, K) * q for v, q in zip(ring, weight)])
    ref_h = np.mean([hk_kernel(v, z, K) * q for v, q in zip(ring, weight)])
    assert abs(gk_kernel(w, z, K) - ref_g) < 1e-5
    assert abs(hk_kernel(w, z, K) - ref_h) < 1e-5
    assert np.isfinite(gk_kernel(w, z, K))


def test_kernel_near_pole_matches_taylor_series():
    # G_K is analytic in |zeta| < (K+1)pi, so its Taylor series reproduces it at pi*i
    K, z = 1, 0.3
    series = sum(g_t_eval(t, K, z) * (math.pi * 1j) ** t for t in range(0, 120, 2))
    assert abs(gk_kernel(math.pi * 1j, z, K) - series) < 1e-12


@pytest.mark.parametrize("w", [2 * math.pi, 7j, -6.5])
def test_pole_guard(w):
    with pytest.raises(PoleGuard):
        gk_kernel(w, 0.3, 1)
    with pytest.raises(PoleGuard):
        hk_kernel(w, 0.3, 1)


def test_kernel_array_input():
    ws = np.array([0.1, 1j, 2 + 0.5j])
    vals = gk_kernel(ws, 0.4, 1)
    assert vals.shape == (3,)
    assert all(vals[i] == gk_kernel(ws[i], 0.4, 1) for i in range(3))


# -- coefficients -------------------------------------------------------------------------


@pytest.mark.parametrize("r", [4.0, 5.0])
def test_sine_coefficient_example(r):
    (c1,) = buck_coefficients(sin_kpi_model(1), 1, ContourConfig(r))
    assert abs(c1 - 1) < 1e-8


def test_second_harmonic():
    c1, c2 = buck_coefficients(sin_kpi_model(2), 2)
    assert abs(c1) < 1e-8 and abs(c2 - 1) < 1e-8


def test_half_exponential_coefficient_closed_form():
    # residues at zeta = 1/2 and zeta = -+pi i of the C_1 integrand
    (c1,) = buck_coefficients(exp_model(0.5), 1)
    assert c1 == pytest.approx(2 * math.pi * (1 + math.exp(0.5)) / (math.pi**2 + 0.25), rel=1e-13)
    assert c1 == pytest.approx(1.6445708657430879, rel=1e-13)


def test_identity_coefficient_closed_form():
    (c1,) = buck_coefficients(polynomial_model(Z), 1)
    assert c1 == pytest.approx(2 / math.pi, rel=1e-13)


@pytest.mark.parametrize("r", [2.0, math.pi + 1e-8, 6.5, 1.0])
def test_radius_out_of_range(r):
    with pytest.raises((RadiusOutOfRange, InputError)):
        buck_coefficients(exp_model(2.0), 1, ContourConfig(r))


def test_radius_near_inner_pole_shell():
    with pytest.raises(RadiusOutOfRange):
        buck_coefficients(exp_model(0.5), 2, ContourConfig(math.pi + 1e-7))


def test_default_radius():
    assert default_radius(0.0, 1) == pytest.approx(1.5 * math.pi)
    assert default_radius(5.0, 1) == pytest.approx((5.0 + 2 * math.pi) / 2)


# -- expansion ----------------------------------------------------------------------------


def test_expand_exponential_at_point():
    res = buck_expand(exp_model(2.0), 1, 0.4, t_max=60)
    assert abs(res.value - math.exp(0.8)) < 1e-6
    assert len(res.C) == 1 and res.t_max == 60
    assert 2.0 < res.contour.radius < 2 * math.pi
    assert res.tail_estimate < 1e-10


def test_expand_exponential_grid():
    zs = np.linspace(-1, 2, 10)
    res = buck_expand(exp_model(2.0), 1, zs)
    assert res.residual < 1e-6
    assert np.max(np.abs(res.value - np.exp(2 * zs))) < 1e-6


@pytest.mark.parametrize("t_max", [0, 10, 60])
def test_expand_sine_is_pure_correction(t_max):
    res = buck_expand(sin_kpi_model(1), 1, 0.37, t_max=t_max)
    assert abs(res.value - math.sin(0.37 * math.pi)) < 1e-8


def test_expand_identity_is_exact():
    res = buck_expand(polynomial_model(Z), 1, np.array([0.2, 1.5, -0.7 + 0.3j]))
    assert res.residual < 1e-10


def test_buck_agrees_with_plain_expansion_below_pi():
    f = exp_model(0.5)
    z = 0.3
    plain = lidstone_partial_sum(derivative_data(f, 40), z)
    res = buck_expand(f, 1, z, t_max=40)
    assert abs(res.value - plain) < 1e-12


def test_expand_beyond_first_threshold():
    f = exp_model(4.0 + 1.0j)
    res = buck_expand(f, 1, 0.25, t_max=60)
    assert res.residual < 1e-5


def test_expand_rejects_large_type():
    with pytest.raises(RadiusOutOfRange):
        buck_expand(exp_model(7.0), 1, 0.3)


# -- Schoenberg -----------------------------------------------------------------------------


def test_schoenberg_two_terms():
    res = schoenberg_decompose(sine_mix_model([(1, 2.0), (2, -3.0)]))
    assert res.K == 2
    assert abs(res.C[0] - 2) < 1e-7 and abs(res.C[1] + 3) < 1e-7


def test_schoenberg_single_sine():
    res = schoenberg_decompose(sin_kpi_model(1))
    assert res.K == 1 and abs(res.C[0] - 1) < 1e-8


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(-5, 5).filter(lambda c: abs(c) > 0.1), min_size=1, max_size=3))
def test_schoenberg_resynthesis(coeffs):
    terms = list(enumerate(coeffs, start=1))
    f = sine_mix_model(terms)
    res = schoenberg_decompose(f)
    assert res.K == len(coeffs)
    grid = np.linspace(-1, 2, 41)
    fz = f(grid)
    assert np.max(np.abs(fz - sine_sum(res.C, grid))) < 1e-7 * np.max(np.abs(fz))
    for c, want in zip(res.C, coeffs):
        assert abs(c - want) < 1e-7 * max(1, abs(want))


def test_schoenberg_rejects_exponential():
    with pytest.raises(NotEvenVanishing) as info:
        schoenberg_decompose(exp_model(1.0))
    assert (info.value.t, info.value.point) == (0, 0)
    assert info.value.violations


def test_schoenberg_first_violation_at_endpoint_one():
    # f(z) = z(1 - z) sin-free: f(0) = 0, f(1) = 0, f''(0) = -2
    f = polynomial_model(Z - Z**2, n_terms=40)
    with pytest.raises(NotEvenVanishing) as info:
        schoenberg_decompose(f)
    assert (info.value.t, info.value.point) == (2, 0)


def test_schoenberg_rejects_non_integer_type():
    # sin(pi z) * cos(pi z / 2)-like data: even derivatives vanish at 0 but not 1,
    # so build data that vanishes but has type 1.5 pi through an odd Taylor series
    w = 1.5 * math.pi
    derivs = [0.0 if k % 2 == 0 else (-1) ** (k // 2) * w**k for k in range(200)]
    f = taylor_model(derivs)
    assert even_derivative_violations(f, 4, 1e-9)  # sin(1.5 pi) != 0 at z = 1
    with pytest.raises(NotEvenVanishing):
        schoenberg_decompose(f)


def test_schoenberg_type_check(monkeypatch):
    import lidstone.buck as buck

    monkeypatch.setattr(buck, "even_derivative_violations", lambda f, t, tol: [])
    with pytest.raises(HypothesisViolation):
        buck.schoenberg_decompose(exp_model(1.5 * math.pi))


def test_vanishing_tolerance_scales_with_magnitude():
    f = sine_mix_model([(3, 1.0)])
    assert even_derivative_violations(f, 40, 1e-9) == []
