"""Finite Taylor models of entire functions and their even-derivative data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .polynomial import RationalPolynomial

DEFAULT_TERMS = 300


def safe_terms(growth: float, n_terms: Optional[int] = None) -> int:
    """Cap the Taylor length so that ``growth**n`` stays below ~1e300."""
    cap = DEFAULT_TERMS if growth <= 1 else int(300 / math.log10(growth))
    return min(cap, DEFAULT_TERMS) if n_terms is None else n_terms


@dataclass(frozen=True)
class EntireFunctionModel:
    """Entire function known through ``derivs_at_0[k] = f^{(k)}(0)``.

    ``declared_type`` is the exponential type when known (``None`` means
    unknown).  ``direct`` optionally evaluates ``f`` in closed form; it is
    only ever used as an oracle, never inside an expansion.
    """

    derivs_at_0: np.ndarray
    declared_type: Optional[float] = None
    name: str = "taylor"
    direct: Optional[Callable] = field(default=None, compare=False, repr=False)
    polynomial: Optional[RationalPolynomial] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        d = np.asarray(self.derivs_at_0, dtype=complex)
        if d.ndim != 1 or d.size == 0:
            raise ValueError("Taylor data must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(d)):
            raise ValueError("Taylor data must be finite")
        d.setflags(write=False)
        object.__setattr__(self, "derivs_at_0", d)
        if self.declared_type is not None and not self.declared_type >= 0:
            raise ValueError("declared type must be nonnegative")

    @property
    def n_terms(self) -> int:
        return self.derivs_at_0.size

    @property
    def is_polynomial(self) -> bool:
        return self.polynomial is not None

    def type_bound(self) -> float:
        """Declared type, or the trailing-window estimate if undeclared."""
        if self.declared_type is not None:
            return float(self.declared_type)
        from .expansion import estimate_type

        return estimate_type(self, window=min(20, self.n_terms))

    def __call__(self, z):
        if self.direct is not None:
            return self.direct(z)
        return taylor_eval(self.derivs_at_0, z)


def taylor_eval(derivs: np.ndarray, z):
    """Sum ``Σ derivs[k] z^k / k!`` by a scaled Horner scheme."""
    acc = 0.0 * z
    n = len(derivs)
    for k in range(n - 1, -1, -1):
        acc = derivs[k] + acc * z / (k + 1)
    return acc


@dataclass(frozen=True)
class DerivativeData:
    """Even-order derivatives ``a[t] = f^{(t)}(0)`` and ``b[t] = f^{(t)}(1)``."""

    a: Mapping[int, complex]
    b: Mapping[int, complex]
    t_max: int

    def __post_init__(self):
        if self.t_max < 0 or self.t_max % 2:
            raise ValueError("t_max must be even and nonnegative")
        for key in (*self.a, *self.b):
            if key % 2 or key < 0 or key > self.t_max:
                raise ValueError(f"derivative index {key} not even or beyond t_max")

    def a_at(self, t: int):
        return self.a.get(t, 0)

    def b_at(self, t: int):
        return self.b.get(t, 0)

    @classmethod
    def from_sequences(cls, a: Sequence, b: Sequence) -> "DerivativeData":
        """Build from dense lists indexed by ``t/2``."""
        n = max(len(a), len(b))
        t_max = 2 * (n - 1) if n else 0
        return cls(
            {2 * i: complex(v) for i, v in enumerate(a)},
            {2 * i: complex(v) for i, v in enumerate(b)},
            t_max,
        )


# -- concrete models ---------------------------------------------------------


def exp_model(zeta0: complex, n_terms: Optional[int] = None) -> EntireFunctionModel:
    zeta0 = complex(zeta0)
    n_terms = safe_terms(abs(zeta0), n_terms)
    derivs = zeta0 ** np.arange(n_terms)
    return EntireFunctionModel(
        derivs, abs(zeta0), name=f"exp({_fmt(zeta0)} z)", direct=lambda z: np.exp(zeta0 * z)
    )


def _sin_derivs(k: int, coeff: complex, n_terms: int) -> np.ndarray:
    w = k * math.pi
    pattern = np.array([0.0, 1.0, 0.0, -1.0])[np.arange(n_terms) % 4]
    return coeff * pattern * w ** np.arange(n_terms, dtype=float)


def sin_kpi_model(k: int = 1, n_terms: Optional[int] = None) -> EntireFunctionModel:
    if k < 1:
        raise ValueError("sine frequency index must be >= 1")
    n_terms = safe_terms(k * math.pi, n_terms)
    return EntireFunctionModel(
        _sin_derivs(k, 1.0, n_terms),
        k * math.pi,
        name=_sine_name(k),
        direct=lambda z: np.sin(k * math.pi * z),
    )


def sine_mix_model(terms: Sequence[tuple[int, complex]], n_terms: Optional[int] = None
                   ) -> EntireFunctionModel:
    """``Σ c_k sin(kπz)`` for the given ``(k, c_k)`` pairs."""
    terms = [(int(k), complex(c)) for k, c in terms]
    if any(k < 1 for k, _ in terms):
        raise ValueError("sine frequency index must be >= 1")
    n_terms = safe_terms(max((k for k, _ in terms), default=1) * math.pi, n_terms)
    derivs = np.zeros(n_terms, dtype=complex)
    for k, c in terms:
        derivs = derivs + _sin_derivs(k, c, n_terms)
    tau = max((k * math.pi for k, c in terms if c != 0), default=0.0)

    def direct(z):
        return sum(c * np.sin(k * math.pi * z) for k, c in terms) + 0.0 * z

    name = " + ".join(f"{_fmt(c)}·{_sine_name(k)}" for k, c in terms) or "0"
    return EntireFunctionModel(derivs, tau, name=name, direct=direct)


def polynomial_model(p: RationalPolynomial, n_terms: Optional[int] = None) -> EntireFunctionModel:
    n = max(p.degree + 1, 1) if n_terms is None else n_terms
    derivs = np.zeros(n, dtype=complex)
    for k, c in enumerate(p.coeffs[:n]):
        derivs[k] = float(c * math.factorial(k))
    return EntireFunctionModel(
        derivs, 0.0, name=f"poly({p})", direct=lambda z: p.evaluate(z), polynomial=p
    )


def taylor_model(derivs: Sequence, declared_type: Optional[float] = None) -> EntireFunctionModel:
    return EntireFunctionModel(np.asarray(derivs, dtype=complex), declared_type)


def _sine_name(k: int) -> str:
    return "sin(πz)" if k == 1 else f"sin({k}πz)"


def _fmt(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:g}"
    if c.real == 0:
        return f"{c.imag:g}i"
    return f"({c.real:g}{c.imag:+g}i)"
