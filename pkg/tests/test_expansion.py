import cmath
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lidstone.errors import (DivergenceDetected, InputError, InsufficientTaylorData,
                             PoleAtZeta)
from lidstone.expansion import (CounterexampleSpec, derivative_data, estimate_type,
                                exp_identity_residual, expand_polynomial,
                                generating_partial_sum, lidstone_partial_sum, m0_closed,
                                m1_closed, polynomial_derivative_data, reconstruct,
                                sparse_counterexample, whittaker_interpolate)
from lidstone.models import (DerivativeData, EntireFunctionModel, exp_model, polynomial_model,
                             sin_kpi_model, sine_mix_model, taylor_model)
from lidstone.polynomial import RationalPolynomial

Z = RationalPolynomial.z()


# -- models ------------------------------------------------------------------------


def test_model_validation():
    with pytest.raises(ValueError):
        EntireFunctionModel([])
    with pytest.raises(ValueError):
        EntireFunctionModel([1.0, float("nan")])
    with pytest.raises(ValueError):
        EntireFunctionModel([1.0], declared_type=-1.0)


def test_model_data_is_read_only():
    f = exp_model(0.5, 20)
    with pytest.raises(ValueError):
        f.derivs_at_0[0] = 2


def test_taylor_model_evaluates_without_direct():
    f = taylor_model([0.5**k for k in range(80)])
    assert f(0.7) == pytest.approx(math.exp(0.35), rel=1e-14)


def test_derivative_data_keys_validated():
    with pytest.raises(ValueError):
        DerivativeData({1: 1.0}, {}, 4)
    with pytest.raises(ValueError):
        DerivativeData({}, {6: 1.0}, 4)
    d = DerivativeData.from_sequences([1, 2], [3])
    assert (d.t_max, d.a_at(2), d.b_at(0), d.b_at(2)) == (2, 2, 3, 0)


# -- derivative data and type ----------------------------------------------------------


def test_derivative_data_exponential():
    d = derivative_data(exp_model(0.5), 20)
    for t in range(0, 21, 2):
        assert d.a_at(t) == pytest.approx(0.5**t, rel=1e-15)
        assert d.b_at(t) == pytest.approx(math.exp(0.5) * 0.5**t, rel=1e-14)


def test_derivative_data_sine_vanishes():
    d = derivative_data(sin_kpi_model(1), 20)
    for t in range(0, 21, 2):
        assert d.a_at(t) == 0
        # rounding scales like pi^t e^pi
        assert abs(d.b_at(t)) < 1e-13 * math.pi**t


def test_derivative_data_polynomial_exact():
    d = derivative_data(polynomial_model(Z**3), 4)
    assert d.b_at(2) == 6 and d.b_at(0) == 1 and d.a_at(2) == 0


def test_insufficient_taylor_data():
    with pytest.raises(InsufficientTaylorData):
        derivative_data(exp_model(2.0, 40), 60)


@pytest.mark.parametrize(
    "model, expected, rel",
    [
        (exp_model(2.0), 2.0, 0.05),
        (sin_kpi_model(1), math.pi, 0.05),
        (sine_mix_model([(1, 2.0), (2, -3.0)]), 2 * math.pi, 0.05),
    ],
)
def test_estimate_type(model, expected, rel):
    assert estimate_type(model, 20) == pytest.approx(expected, rel=rel)


def test_estimate_type_window_50_to_100():
    f = exp_model(2.0, 101)
    assert estimate_type(f, 51) == pytest.approx(2.0, rel=0.05)


def test_estimate_type_polynomial_is_zero():
    f = polynomial_model(Z**3 + 1, n_terms=30)
    assert estimate_type(f, 10) == 0.0


# -- polynomials -------------------------------------------------------------------


def test_expand_z():
    res = expand_polynomial(Z)
    assert res.exact
    assert res.data.b_at(0) == 1 and res.data.a_at(0) == 0
    assert res.reconstruction == Z


@pytest.mark.parametrize("t", [0, 2, 4, 8])
def test_monomial_data(t):
    d = polynomial_derivative_data(Z ** (t + 1))
    for tau in range(0, t + 1, 2):
        assert d.a_at(tau) == 0
        assert d.b_at(tau) == F(math.factorial(t + 1), math.factorial(t - tau + 1))


def test_expand_z4():
    assert expand_polynomial(Z**4).exact


def test_unicity_by_differencing():
    p = RationalPolynomial([1, F(2, 3), 0, -5, F(1, 7)])
    q = p + (Z**2 - Z) * Z**3  # differs, so its data must differ
    dp, dq = polynomial_derivative_data(p), polynomial_derivative_data(q)
    assert (dp.a, dp.b) != (dq.a, dq.b)
    assert reconstruct(dp) - reconstruct(dq) == p - q


rational_polys = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9),
                          max_size=22).map(RationalPolynomial)


@settings(max_examples=80, deadline=None)
@given(rational_polys)
def test_round_trip_property(p):
    assert expand_polynomial(p).exact


# -- partial sums ------------------------------------------------------------------


def test_partial_sum_exponential():
    d = derivative_data(exp_model(0.5), 40)
    assert lidstone_partial_sum(d, 0.3, 40) == pytest.approx(math.exp(0.15), abs=1e-10)


def test_partial_sum_zero_and_cubic():
    zero = DerivativeData({}, {}, 10)
    assert lidstone_partial_sum(zero, 0.4 + 1j) == 0
    d = polynomial_derivative_data(Z**3)
    assert lidstone_partial_sum(d, 1.3, 2) == pytest.approx(1.3**3, abs=1e-14)


def test_partial_sum_T_too_large():
    d = derivative_data(exp_model(0.5), 10)
    with pytest.raises(InputError):
        lidstone_partial_sum(d, 0.3, 12)


def test_partial_sum_rate_matches_type():
    f = exp_model(2.0)
    d = derivative_data(f, 60)
    z = 0.3
    errs = [abs(lidstone_partial_sum(d, z, T) - f(z)) for T in range(20, 61, 2)]
    q = (2 / math.pi) ** 2
    ratios = [b / a for a, b in zip(errs, errs[1:]) if a > 1e-12 and b > 1e-12]
    assert ratios
    assert all(q / 3 <= r <= 3 * q for r in ratios)


# -- generating series ----------------------------------------------------------------


def test_generating_closed_forms_special_values():
    for zeta in (0.5, 2 + 1j, -1.3j):
        assert m1_closed(zeta, 1) == pytest.approx(1, abs=1e-15)
    assert m1_closed(0, 0.37) == pytest.approx(0.37)
    assert m0_closed(0, 0.37) == pytest.approx(0.63)


def test_generating_against_series():
    assert abs(m1_closed(1.0, 0.7) - generating_partial_sum(1.0, 0.7, 40)) < 1e-12


@pytest.mark.parametrize("zeta", [1e-6, 1e-5 + 3e-5j, 2e-4])
def test_small_zeta_branch_continuous(zeta):
    z = 0.8
    series = generating_partial_sum(zeta, z, 10, 1)
    assert abs(m1_closed(zeta, z) - series) < 1e-15
    assert abs(m0_closed(zeta, z) - generating_partial_sum(zeta, z, 10, 0)) < 1e-15


@pytest.mark.parametrize("zeta", [math.pi * 1j, -2j * math.pi, math.pi * 1j + 1e-14])
def test_pole_guard(zeta):
    with pytest.raises(PoleAtZeta):
        m1_closed(zeta, 0.3)
    with pytest.raises(PoleAtZeta):
        m0_closed(zeta, 0.3)


@pytest.mark.parametrize("zeta", [0.4, 2.4, 1.7 + 1.7j])
def test_series_tolerance_ladder(zeta):
    tol = 1e-12 if abs(zeta) <= 1.5 else 1e-6
    for z in (0.2, 1.5, -0.7 + 0.4j):
        assert abs(m1_closed(zeta, z) - generating_partial_sum(zeta, z, 60)) <= tol


@settings(max_examples=50, deadline=None)
@given(st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_reflection_property(zeta, z):
    if abs(cmath.sinh(zeta)) < 1e-3:
        return
    assert abs(m0_closed(zeta, z) - m1_closed(zeta, 1 - z)) < 1e-12 * max(1, abs(m1_closed(zeta, 1 - z)))


@pytest.mark.parametrize(
    "zeta, z, T, bound",
    [(0, 0.4, 0, 1e-15), (2, 0.5, 60, 1e-8), (1.5j, 1.2, 60, 1e-8)],
)
def test_exp_identity_residual(zeta, z, T, bound):
    assert exp_identity_residual(zeta, z, T) < bound


def test_exp_identity_requires_small_zeta():
    with pytest.raises(InputError):
        exp_identity_residual(3.5, 0.3, 10)


# -- interpolation ---------------------------------------------------------------------


def test_interpolation_exponential_data():
    T = 60
    seq = [1.0] * (T // 2 + 1)  # a_t = b_t = 1^t
    z = 0.35
    res = whittaker_interpolate(seq, seq, z, T)
    assert res.report.converged
    assert res.value == pytest.approx(m0_closed(1.0, z) + m1_closed(1.0, z), abs=1e-12)


def test_interpolation_zero_data():
    res = whittaker_interpolate([0] * 5, [0] * 5, 0.7, 8)
    assert res.value == 0 and res.report.converged


def test_interpolation_mapping_input():
    a = {t: 0.5**t for t in range(0, 41, 2)}
    b = {t: math.exp(0.5) * 0.5**t for t in range(0, 41, 2)}
    res = whittaker_interpolate(a, b, 0.3)
    assert res.value == pytest.approx(math.exp(0.15), abs=1e-12)


def test_interpolation_divergence_carries_result():
    T = 60
    a = [(-1) ** (t // 2) * math.pi**t for t in range(0, T + 1, 2)]
    with pytest.raises(DivergenceDetected) as info:
        whittaker_interpolate(a, [0], 0.5, T)
    assert info.value.result is not None
    assert not info.value.result.report.a_converged
    assert info.value.result.report.b_converged
    res = whittaker_interpolate(a, [0], 0.5, T, strict=False)
    assert not res.report.converged


def test_interpolation_convergent_geometric():
    T = 60
    seq = [0.5**t for t in range(0, T + 1, 2)]
    assert whittaker_interpolate(seq, seq, 0.5, T).report.converged


# -- counterexample ------------------------------------------------------------------


def test_counterexample_single():
    ce = sparse_counterexample(CounterexampleSpec(((0, 1),), 1))
    assert ce.polynomial == Z
    assert ce.terms[0].u == 1 and ce.terms[0].c == 1 and ce.terms[0].degree == 1


def test_counterexample_two_terms():
    ce = sparse_counterexample(CounterexampleSpec(((4, 1), (2, 1)), 2))
    assert [t.u for t in ce.terms] == [F(1, 12), F(1, 800)]
    assert ce.report.ok and not ce.report.failures
    assert ce.polynomial.evaluate(0) == ce.polynomial.evaluate(1) == 0
    assert ce.polynomial.differentiate(2).evaluate(1) == F(1, 12)
    assert ce.polynomial.differentiate(4).evaluate(1) == F(1, 800)


def test_counterexample_mixed_endpoints_truncated():
    spec = CounterexampleSpec(((0, 0), (2, 1), (6, 0)), M=2)
    ce = sparse_counterexample(spec)
    assert len(ce.terms) == 2 and ce.report.ok
    assert ce.polynomial.evaluate(0) == ce.terms[0].u


@pytest.mark.parametrize(
    "indices, M",
    [(((2, 1), (2, 0)), None), (((2, 2),), None), (((3, 1),), None), (((2, 1),), 3),
     (((2, 1), (2, 1)), None)],
)
def test_counterexample_spec_validation(indices, M):
    with pytest.raises(InputError):
        CounterexampleSpec(indices, M)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8).map(lambda k: 2 * k), st.integers(0, 1)),
                min_size=1, max_size=4, unique_by=lambda p: p[0]))
def test_counterexample_conditions_property(indices):
    ce = sparse_counterexample(CounterexampleSpec(tuple(indices)))
    assert ce.report.ok
    for term in ce.terms:
        q = ce.polynomial.differentiate(term.t)
        assert q.evaluate(term.i) == term.u
