"""Lidstone expansions of polynomials and of entire functions of type < π.

Floating-point work evaluates the exact basis polynomials after a single
rounding of their coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .basis import eval_lambda0, eval_lambda1, lambda0, lambda1, lidstone
from .errors import DivergenceDetected, InputError, InsufficientTaylorData, PoleAtZeta
from .models import DerivativeData, EntireFunctionModel
from .polynomial import RationalPolynomial

POLE_GUARD = 1e-12
SMALL_ZETA = 1e-4
WHITTAKER_TOL = 1e-9
WHITTAKER_WINDOW = 10


def _even(t, name="t"):
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or t < 0 or t % 2:
        raise InputError(f"{name} must be an even nonnegative integer, got {t!r}")
    return int(t)


# -- derivative data ---------------------------------------------------------


def estimate_type(f: EntireFunctionModel, window: int) -> float:
    """``max |f^{(n)}(0)|^{1/n}`` over the last ``window`` Taylor entries.

    Vanishing entries contribute nothing, so a polynomial stored past its
    degree estimates to 0.
    """
    d = f.derivs_at_0
    if window < 1 or window > d.size:
        raise InputError(f"window must lie in [1, {d.size}], got {window}")
    best = 0.0
    for n in range(d.size - window, d.size):
        if n == 0:
            continue
        m = abs(d[n])
        if m > 0:
            best = max(best, math.exp(math.log(m) / n))
    return best


def derivative_data(f: EntireFunctionModel, t_max: int, rtol: float = 1e-14) -> DerivativeData:
    """``a_t = f^{(t)}(0)`` and ``b_t = f^{(t)}(1) = Σ_j f^{(t+j)}(0)/j!`` for even ``t``.

    Raises
    ------
    InsufficientTaylorData
        When the stored prefix cannot bound the tail of the shift series
        below ``rtol * max(1, |b_t|)``.
    """
    t_max = _even(t_max, "t_max")
    d = f.derivs_at_0
    n = d.size
    if f.is_polynomial:
        deg = f.polynomial.degree
        if n <= deg:
            raise InsufficientTaylorData("polynomial model is missing coefficients")
        a, b = {}, {}
        for t in range(0, t_max + 1, 2):
            a[t] = complex(d[t]) if t < n else 0j
            b[t] = _shift_sum(d, t) if t < n else 0j
        return DerivativeData(a, b, t_max)

    if t_max >= n:
        raise InsufficientTaylorData(f"need Taylor data beyond index {t_max}, have {n}")
    rho = f.type_bound()
    a, b = {}, {}
    for t in range(0, t_max + 1, 2):
        a[t] = complex(d[t])
        b[t] = _shift_sum(d, t)
        tail = _shift_tail_bound(d, t, rho)
        if not tail <= rtol * max(1.0, abs(b[t])):
            raise InsufficientTaylorData(
                f"shift series for f^({t})(1) has tail ≈ {tail:.3g}; "
                f"supply more than {n} Taylor terms"
            )
    return DerivativeData(a, b, t_max)


def _shift_sum(d: np.ndarray, t: int) -> complex:
    acc = 0j
    for j in range(d.size - t - 1, -1, -1):
        acc = d[t + j] + acc / (j + 1)
    return complex(acc)


def _shift_tail_bound(d: np.ndarray, t: int, rho: float) -> float:
    """Bound for ``Σ_{j ≥ J} |f^{(t+j)}(0)|/j!`` with ``J = n - t``.

    Assumes ``|f^{(k)}(0)| ≤ A ρ^k`` with ``A`` fitted on the last stored
    entries.
    """
    n = d.size
    J = n - t
    tail_window = d[max(t, n - 8):]
    if not np.any(tail_window):
        return 0.0
    if rho <= 0:
        return math.inf
    ks = np.arange(n - tail_window.size, n)
    with np.errstate(divide="ignore", over="ignore"):
        log_a = np.log(np.abs(tail_window)) - ks * math.log(rho)
    log_a = np.max(log_a[np.isfinite(log_a)])
    q = rho / (J + 1)
    if q >= 1:
        return math.inf
    log_first = log_a + (t + J) * math.log(rho) - math.lgamma(J + 1)
    return math.exp(log_first) / (1 - q)


# -- polynomials ---------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialExpansion:
    polynomial: RationalPolynomial
    data: DerivativeData
    reconstruction: RationalPolynomial

    @property
    def exact(self) -> bool:
        return self.reconstruction == self.polynomial


def polynomial_derivative_data(p: RationalPolynomial) -> DerivativeData:
    t_max = max(p.degree, 0)
    t_max -= t_max % 2
    a, b = {}, {}
    for t in range(0, t_max + 1, 2):
        q = p.differentiate(t)
        a[t] = q.evaluate(0)
        b[t] = q.evaluate(1)
    return DerivativeData(a, b, t_max)


def reconstruct(data: DerivativeData) -> RationalPolynomial:
    """Exact finite sum ``Σ a_t Λ_{t,0} + Σ b_t Λ_{t,1}`` for rational data."""
    out = RationalPolynomial()
    for t in range(0, data.t_max + 1, 2):
        at, bt = Fraction(data.a_at(t)), Fraction(data.b_at(t))
        if at:
            out = out + lambda0(t).scale(at)
        if bt:
            out = out + lambda1(t).scale(bt)
    return out


def expand_polynomial(p: RationalPolynomial) -> PolynomialExpansion:
    data = polynomial_derivative_data(p)
    return PolynomialExpansion(p, data, reconstruct(data))


# -- floating expansions ---------------------------------------------------------


def lidstone_partial_sum(d: DerivativeData, z, T: Optional[int] = None):
    """``Σ_{t ≤ T} a_t Λ_{t,0}(z) + b_t Λ_{t,1}(z)`` in double precision."""
    T = d.t_max if T is None else _even(T, "T")
    if T > d.t_max:
        raise InputError(f"T={T} exceeds the available data (t_max={d.t_max})")
    z = _as_float_arg(z)
    acc = 0.0 * z
    for t in range(0, T + 1, 2):
        at, bt = complex(d.a_at(t)), complex(d.b_at(t))
        if at:
            acc = acc + at * eval_lambda0(t, z)
        if bt:
            acc = acc + bt * eval_lambda1(t, z)
    return acc


def _as_float_arg(z):
    if isinstance(z, np.ndarray):
        return z.astype(complex)
    return complex(z)


def _small_zeta_series(zeta, z, i):
    zz = zeta * zeta
    ev = eval_lambda1 if i == 1 else eval_lambda0
    return ev(0, z) + zz * (ev(2, z) + zz * ev(4, z))


def _guard_sinh(zeta: complex) -> complex:
    s = cmath.sinh(zeta)
    if abs(s) < POLE_GUARD:
        raise PoleAtZeta(f"ζ={zeta!r} lies on a pole of the generating series (ζ ∈ πiℤ)")
    return s


def m1_closed(zeta, z):
    """``Σ_t Λ_{t,1}(z) ζ^t = sinh(ζz)/sinh(ζ)``, filled in at ``ζ = 0``."""
    zeta, z = complex(zeta), complex(z)
    if abs(zeta) < SMALL_ZETA:
        return _small_zeta_series(zeta, z, 1)
    return cmath.sinh(zeta * z) / _guard_sinh(zeta)


def m0_closed(zeta, z):
    """``Σ_t Λ_{t,0}(z) ζ^t = cosh(ζz) − sinh(ζz) coth(ζ)``, filled in at ``ζ = 0``."""
    zeta, z = complex(zeta), complex(z)
    if abs(zeta) < SMALL_ZETA:
        return _small_zeta_series(zeta, z, 0)
    s = _guard_sinh(zeta)
    return cmath.cosh(zeta * z) - cmath.sinh(zeta * z) * cmath.cosh(zeta) / s


def generating_partial_sum(zeta, z, T: int, i: int = 1) -> complex:
    """Truncated generating series ``Σ_{t ≤ T} Λ_{t,i}(z) ζ^t``."""
    T = _even(T, "T")
    zeta, z = complex(zeta), complex(z)
    ev = eval_lambda1 if i == 1 else eval_lambda0
    acc, zp = 0j, 1 + 0j
    zz = zeta * zeta
    for t in range(0, T + 1, 2):
        acc += ev(t, z) * zp
        zp *= zz
    return acc


def exp_identity_residual(zeta, z, T: int) -> float:
    """``|e^{ζz} − Σ_{t≤T} Λ_{t,0}(z)ζ^t − e^ζ Σ_{t≤T} Λ_{t,1}(z)ζ^t|``."""
    zeta, z = complex(zeta), complex(z)
    if abs(zeta) >= math.pi:
        raise InputError(f"|ζ| must be below π, got {abs(zeta)}")
    s0 = generating_partial_sum(zeta, z, T, 0)
    s1 = generating_partial_sum(zeta, z, T, 1)
    return abs(cmath.exp(zeta * z) - s0 - cmath.exp(zeta) * s1)


# -- interpolation -----------------------------------------------------------------


@dataclass
class ConvergenceReport:
    converged: bool
    a_converged: bool
    b_converged: bool
    a_fluctuation: float
    b_fluctuation: float
    a_sum: complex
    b_sum: complex
    window: int
    tol: float

    def to_json_obj(self) -> dict:
        from .jsonio import complex_to_json

        return {
            "converged": self.converged,
            "a_converged": self.a_converged,
            "b_converged": self.b_converged,
            "a_fluctuation": self.a_fluctuation,
            "b_fluctuation": self.b_fluctuation,
            "a_test_sum": complex_to_json(self.a_sum),
            "b_test_sum": complex_to_json(self.b_sum),
            "window": self.window,
            "tol": self.tol,
        }


@dataclass
class InterpolationResult:
    value: complex
    report: ConvergenceReport


def _dense(seq: Union[Sequence, Mapping], T: int) -> list[complex]:
    """Values at ``t = 0, 2, ..., T``; sequences are indexed by ``t/2``."""
    if isinstance(seq, Mapping):
        for key in seq:
            _even(int(key), "sequence index")
        return [complex(seq.get(t, seq.get(str(t), 0))) for t in range(0, T + 1, 2)]
    vals = [complex(v) for v in seq]
    vals += [0j] * (T // 2 + 1 - len(vals))
    return vals[: T // 2 + 1]


def _default_T(seq) -> int:
    if isinstance(seq, Mapping):
        return max((int(k) for k in seq), default=0)
    return 2 * max(len(seq) - 1, 0)


def cauchy_fluctuation(terms: Sequence[complex], window: int) -> tuple[float, complex, float]:
    """Max spread of the last ``window`` partial sums, last sum, max |partial sum|."""
    partial = np.cumsum(np.asarray(terms, dtype=complex))
    tail = partial[-window:] if window < partial.size else partial
    spread = float(np.max(np.abs(tail[:, None] - tail[None, :]))) if tail.size else 0.0
    return spread, complex(partial[-1]) if partial.size else 0j, float(np.max(np.abs(partial), initial=0.0))


def whittaker_interpolate(a, b, z, T: Optional[int] = None, *, tol: float = WHITTAKER_TOL,
                          window: int = WHITTAKER_WINDOW, strict: bool = True) -> InterpolationResult:
    """Evaluate the Lidstone interpolant with prescribed even derivatives.

    ``a`` and ``b`` give ``f^{(t)}(0)`` and ``f^{(t)}(1)``; a plain sequence
    is indexed by ``t/2``, a mapping by ``t`` itself.  The interpolant
    converges exactly when ``Σ (−1)^{t/2} a_t/π^t`` and the same series for
    ``b`` converge; this is tested numerically by requiring the last
    ``window`` partial sums to agree within ``tol · (1 + max |partial sum|)``.

    Raises
    ------
    DivergenceDetected
        If ``strict`` and either test series fails; the exception carries
        the computed :class:`InterpolationResult` as ``.result``.
    """
    if T is None:
        T = max(_default_T(a), _default_T(b))
    T = _even(T, "T")
    av, bv = _dense(a, T), _dense(b, T)
    data = DerivativeData(
        {2 * i: v for i, v in enumerate(av)}, {2 * i: v for i, v in enumerate(bv)}, T
    )
    value = lidstone_partial_sum(data, z, T)

    signs = [(-1) ** i / math.pi ** (2 * i) for i in range(T // 2 + 1)]
    a_spread, a_sum, a_max = cauchy_fluctuation([s * v for s, v in zip(signs, av)], window)
    b_spread, b_sum, b_max = cauchy_fluctuation([s * v for s, v in zip(signs, bv)], window)
    a_ok = a_spread < tol * (1 + a_max)
    b_ok = b_spread < tol * (1 + b_max)
    report = ConvergenceReport(a_ok and b_ok, a_ok, b_ok, a_spread, b_spread,
                               a_sum, b_sum, window, tol)
    result = InterpolationResult(value, report)
    if strict and not report.converged:
        which = [n for n, ok in (("a", a_ok), ("b", b_ok)) if not ok]
        raise DivergenceDetected(
            f"test series Σ(−1)^(t/2) x_t/π^t fails the Cauchy criterion for {', '.join(which)}",
            result,
        )
    return result


# -- sparse counterexample -------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleSpec:
    """Exceptional conditions ``(t, i)``; the first ``M`` (by degree) are used."""

    indices: tuple[tuple[int, int], ...]
    M: Optional[int] = None

    def __post_init__(self):
        idx = tuple(sorted((_even(t), int(i)) for t, i in self.indices))
        if any(i not in (0, 1) for _, i in idx):
            raise InputError("endpoint index must be 0 or 1")
        if len(set(idx)) != len(idx):
            raise InputError("exceptional indices must be distinct")
        degrees = [t + 1 for t, _ in idx]
        if any(d1 >= d2 for d1, d2 in zip(degrees, degrees[1:])):
            raise InputError("degrees t+1 must be strictly increasing (one endpoint per t)")
        object.__setattr__(self, "indices", idx)
        M = len(idx) if self.M is None else self.M
        if not 0 <= M <= len(idx):
            raise InputError(f"M must lie in [0, {len(idx)}]")
        object.__setattr__(self, "M", M)


@dataclass(frozen=True)
class CounterexampleTerm:
    t: int
    i: int
    degree: int
    c: Fraction
    u: Fraction
    polynomial: RationalPolynomial


@dataclass
class VanishingReport:
    ok: bool
    checked: int
    values: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)


@dataclass
class Counterexample:
    polynomial: RationalPolynomial
    terms: list
    report: VanishingReport


def sparse_counterexample(spec: CounterexampleSpec) -> Counterexample:
    """Truncation of ``Σ_m u_m P_m`` with ``P_m = Λ_{t_m, i_m}``.

    ``c_m`` is the coefficient ℓ¹ norm of ``P_m`` (so ``|P_m|_r ≤ c_m r^{d_m}``
    for ``r ≥ 1``) and ``u_m = 1/(c_m (d_m!)²)``.
    """
    terms = []
    f = RationalPolynomial()
    for t, i in spec.indices[: spec.M]:
        p = lidstone(t, i)
        d = p.degree
        c = p.l1_norm()
        u = Fraction(1) / (c * math.factorial(d) ** 2)
        terms.append(CounterexampleTerm(t, i, d, c, u, p))
        f = f + p.scale(u)

    expected = {(term.t, term.i): term.u for term in terms}
    values, failures = {}, []
    top = max(f.degree + 1, 0)
    for t in range(0, top + 1, 2):
        q = f.differentiate(t)
        for i in (0, 1):
            v = q.evaluate(i)
            values[(t, i)] = v
            want = expected.get((t, i), Fraction(0))
            if v != want:
                failures.append((t, i, v, want))
    report = VanishingReport(not failures, len(values), values, failures)
    return Counterexample(f, terms, report)
