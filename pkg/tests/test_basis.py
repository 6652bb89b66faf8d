import math
import threading
from fractions import Fraction as F

import numpy as np
import pytest

from lidstone.basis import (basis_table, eval_lambda0, eval_lambda1, lambda0, lambda1,
                            lambda_bernoulli, lambda_ode, lambda_recurrence, lidstone)
from lidstone.errors import InputError
from lidstone.polynomial import RationalPolynomial

Z = RationalPolynomial.z()
GENERATORS = [lambda_recurrence, lambda_ode, lambda_bernoulli]

L1 = {
    0: RationalPolynomial([0, 1]),
    2: RationalPolynomial([0, F(-1, 6), 0, F(1, 6)]),
    4: RationalPolynomial([0, F(7, 360), 0, F(-1, 36), 0, F(1, 120)]),
}


@pytest.mark.parametrize("gen", GENERATORS)
@pytest.mark.parametrize("t", sorted(L1))
def test_generators_reproduce_displays(gen, t):
    assert gen(t) == L1[t]


def test_factored_display_of_lambda2():
    # (1/6) z (z-1)(z+1)
    assert lambda1(2) == (Z * (Z - 1) * (Z + 1)).scale(F(1, 6))


@pytest.mark.parametrize(
    "t, expected",
    [
        (0, 1 - Z),
        (2, RationalPolynomial([0, F(-1, 3), F(1, 2), F(-1, 6)])),
        (4, RationalPolynomial([0, F(1, 45), 0, F(-1, 18), F(1, 24), F(-1, 120)])),
    ],
)
def test_lambda0_displays(t, expected):
    assert lambda0(t) == expected


@pytest.mark.parametrize("gen", GENERATORS + [lambda0, lambda1])
@pytest.mark.parametrize("bad", [-2, 1, 3, 2.0, "4", True])
def test_rejects_bad_index(gen, bad):
    with pytest.raises(InputError):
        gen(bad)


def test_unknown_method():
    with pytest.raises(InputError):
        lambda1(2, method="taylor")


def test_exact_values_at_half():
    assert lambda_ode(4).evaluate(F(1, 2)) == F(5, 768)
    assert lambda1(2).evaluate(F(1, 2)) == F(-1, 16)
    # 1 - 1/2 = 1/2, so both families agree at the midpoint
    assert lambda0(2).evaluate(F(1, 2)) == F(-1, 16)


@pytest.mark.parametrize("t", range(0, 62, 2))
def test_three_way_agreement(t):
    assert lambda_recurrence(t) == lambda_ode(t) == lambda_bernoulli(t)


def test_basis_table_small():
    table = basis_table(4)
    assert [e.t for e in table] == [0, 2, 4]
    assert all(e.method == "recurrence" for e in table)
    assert [e.lambda1 for e in table] == [L1[0], L1[2], L1[4]]
    assert basis_table(0)[0].lambda1 == Z


def test_basis_table_rejects_odd():
    with pytest.raises(InputError):
        basis_table(5)


def test_entry_is_immutable():
    entry = basis_table(2)[1]
    with pytest.raises(AttributeError):
        entry.t = 4


@pytest.mark.parametrize("t", range(0, 61, 2))
def test_oddness_degree_leading(t):
    p = lambda1(t)
    assert p.is_odd()
    assert p.compose(-Z) == -p
    assert p.degree == t + 1
    assert p.leading_coefficient == F(1, math.factorial(t + 1))
    assert lambda0(t) == p.compose(1 - Z)


@pytest.mark.parametrize("t", range(0, 41, 2))
def test_kronecker_duality(t):
    for tau in range(0, t + 4, 2):
        d1 = lambda1(t).differentiate(tau)
        d0 = lambda0(t).differentiate(tau)
        delta = int(tau == t)
        assert (d1.evaluate(0), d1.evaluate(1)) == (0, delta)
        assert (d0.evaluate(0), d0.evaluate(1)) == (delta, 0)


@pytest.mark.parametrize("t", range(2, 61, 2))
def test_second_derivative_steps_down(t):
    assert lambda1(t).differentiate(2) == lambda1(t - 2)


@pytest.mark.parametrize("t", range(0, 41, 2))
def test_monomial_identities(t):
    lhs = RationalPolynomial.monomial(t + 1)
    rhs = sum((lambda1(s).scale(F(math.factorial(t + 1), math.factorial(t - s + 1)))
               for s in range(0, t + 1, 2)), RationalPolynomial())
    assert lhs == rhs
    rhs0 = lambda0(t) + sum((lambda1(s).scale(F(1, math.factorial(t - s)))
                             for s in range(0, t + 1, 2)), RationalPolynomial())
    assert rhs0 == RationalPolynomial.monomial(t, F(1, math.factorial(t)))


@pytest.mark.parametrize("t", range(0, 41, 2))
def test_translation_identity(t):
    p = lambda1(t)
    assert p.shift(1) - p.shift(-1) == RationalPolynomial.monomial(t, F(2, math.factorial(t)))


def test_lidstone_selector():
    assert lidstone(4, 1) == lambda1(4)
    assert lidstone(4, 0) == lambda0(4)
    with pytest.raises(InputError):
        lidstone(4, 2)


@pytest.mark.parametrize("t", [0, 2, 10, 30])
def test_float_evaluators_match_exact(t):
    zs = np.array([0.3, -1.2, 0.5 + 0.5j, 2.0])
    for z in zs:
        assert eval_lambda1(t, z) == pytest.approx(complex(lambda1(t).evaluate(z)), abs=1e-15)
        assert eval_lambda0(t, z) == pytest.approx(complex(lambda0(t).evaluate(z)), abs=1e-15)


def test_concurrent_generation_is_consistent():
    results = {}

    def work(n):
        results[n] = [lambda_ode(t) for t in range(0, 40, 2)]

    threads = [threading.Thread(target=work, args=(n,)) for n in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(results[n] == results[0] for n in results)
    assert results[0] == [lambda_recurrence(t) for t in range(0, 40, 2)]
