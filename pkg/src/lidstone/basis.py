"""Lidstone basis polynomials.

``Λ_{t,1}`` is the polynomial whose even derivatives vanish at 0 and, at 1,
equal the Kronecker delta at order ``t``; ``Λ_{t,0}(z) = Λ_{t,1}(1 - z)``.
Three independent generators are provided (the additive recurrence, the
second-order ODE, and the Bernoulli relation); :func:`basis_table` checks
them against each other exactly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import CrossMethodMismatch, InputError
from .polynomial import RationalPolynomial, bernoulli_polynomial

METHODS = ("recurrence", "ode", "bernoulli")

_Z = RationalPolynomial.z()


def _check_index(t) -> int:
    if isinstance(t, bool) or not isinstance(t, int):
        raise InputError(f"basis index must be an integer, got {t!r}")
    if t < 0 or t % 2:
        raise InputError(f"basis index must be even and nonnegative, got {t}")
    return t


class _Cache:
    """Monotone cache: computing index T stores every even index below it."""

    def __init__(self, step):
        self._step = step
        self._items: list[RationalPolynomial] = []
        self._lock = threading.Lock()

    def get(self, t: int) -> RationalPolynomial:
        i = t // 2
        with self._lock:
            while len(self._items) <= i:
                self._items.append(self._step(self._items))
            return self._items[i]


def _recurrence_step(prev: list[RationalPolynomial]) -> RationalPolynomial:
    t = 2 * len(prev)
    p = RationalPolynomial.monomial(t + 1, Fraction(1, factorial(t + 1)))
    for i, lam in enumerate(prev):
        p = p - lam.scale(Fraction(1, factorial(t - 2 * i + 1)))
    return p


def _ode_step(prev: list[RationalPolynomial]) -> RationalPolynomial:
    if not prev:
        return _Z
    q = prev[-1].antiderivative().antiderivative()
    # q(0) = 0 already; subtract q(1) z to pin q(1) = 0.
    return q - _Z.scale(q.evaluate(1))


_recurrence_cache = _Cache(_recurrence_step)
_ode_cache = _Cache(_ode_step)


def lambda_recurrence(t: int) -> RationalPolynomial:
    """``Λ_{t,1}`` from ``z^{t+1}/(t+1)!`` minus lower basis terms."""
    return _recurrence_cache.get(_check_index(t))


def lambda_ode(t: int) -> RationalPolynomial:
    """``Λ_{t,1}`` by integrating ``Λ_{t-2,1}`` twice with zero boundary values."""
    return _ode_cache.get(_check_index(t))


def lambda_bernoulli(t: int) -> RationalPolynomial:
    """``Λ_{t,1}(z) = 2^{t+1}/(t+1)! · B_{t+1}((1+z)/2)``."""
    t = _check_index(t)
    half = RationalPolynomial((Fraction(1, 2), Fraction(1, 2)))
    b = bernoulli_polynomial(t + 1).compose(half)
    return b.scale(Fraction(2 ** (t + 1), factorial(t + 1)))


_GENERATORS = {
    "recurrence": lambda_recurrence,
    "ode": lambda_ode,
    "bernoulli": lambda_bernoulli,
}


def lambda1(t: int, method: str = "recurrence") -> RationalPolynomial:
    try:
        gen = _GENERATORS[method]
    except KeyError:
        raise InputError(f"unknown method {method!r}") from None
    return gen(t)


def lambda0(t: int, method: str = "recurrence") -> RationalPolynomial:
    """``Λ_{t,0}(z) = Λ_{t,1}(1 - z)``."""
    return lambda1(t, method).reflect()


def lidstone(t: int, i: int) -> RationalPolynomial:
    """``Λ_{t,i}`` for ``i`` in ``{0, 1}``."""
    if i == 1:
        return lambda1(t)
    if i == 0:
        return lambda0(t)
    raise InputError(f"endpoint index must be 0 or 1, got {i!r}")


@dataclass(frozen=True)
class LidstoneBasisEntry:
    t: int
    lambda1: RationalPolynomial
    lambda0: RationalPolynomial
    method: str = "recurrence"


def basis_table(T: int) -> list[LidstoneBasisEntry]:
    """Entries for ``t = 0, 2, ..., T``, each verified by all three generators.

    Raises
    ------
    CrossMethodMismatch
        If two generators disagree at some index.
    """
    T = _check_index(T)
    table = []
    for t in range(0, T + 1, 2):
        polys = {m: _GENERATORS[m](t) for m in METHODS}
        ref = polys["recurrence"]
        bad = [m for m in METHODS if polys[m] != ref]
        if bad:
            raise CrossMethodMismatch(t, ["recurrence", *bad])
        table.append(LidstoneBasisEntry(t, ref, ref.reflect(), "recurrence"))
    return table


_lambda0_store: dict[int, RationalPolynomial] = {}


def _lambda0_cached(t: int) -> RationalPolynomial:
    p = _lambda0_store.get(t)
    if p is None:
        p = lambda0(t)
        _lambda0_store[t] = p
    return p


def eval_lambda1(t: int, z):
    """Floating-point ``Λ_{t,1}(z)`` (complex, float or ndarray ``z``)."""
    return lambda_recurrence(t).evaluate(z)


def eval_lambda0(t: int, z):
    return _lambda0_cached(_check_index(t)).evaluate(z)
