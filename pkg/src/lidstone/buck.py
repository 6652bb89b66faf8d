"""Kernel expansion for entire functions of type below ``(K+1)π``.

Subtracting the first ``K`` pole pairs of ``sinh(ζz)/sinh ζ`` gives a kernel
``G_K`` analytic in ``|ζ| < (K+1)π``.  Its Taylor coefficients ``g_t`` in ζ
replace the Lidstone polynomials; what the kernel removed comes back as a
finite sine sum ``Σ C_k sin(kπz)``.  When every even derivative at 0 and 1
vanishes only the sine sum survives.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .basis import eval_lambda1
from .contour import ContourConfig, circle_quadrature, laplace_eval
from .errors import (HypothesisViolation, InputError, NotEvenVanishing, PoleGuard,
                     RadiusOutOfRange)
from .expansion import derivative_data, estimate_type
from .models import DerivativeData, EntireFunctionModel

NEAR_POLE = 1e-3
SMALL_ZETA = 1e-4
DEFAULT_T_MAX = 60


def _check_t(t):
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or t < 0 or t % 2:
        raise InputError(f"t must be an even nonnegative integer, got {t!r}")
    return int(t)


def _check_K(K, minimum=1):
    if isinstance(K, bool) or not isinstance(K, (int, np.integer)) or K < minimum:
        raise InputError(f"K must be an integer >= {minimum}, got {K!r}")
    return int(K)


def sine_correction(t: int, K: int, z):
    """``2(−1)^{t/2} Σ_{k=1}^{K} (−1)^k (kπ)^{−t−1} sin(kπz)``."""
    acc = 0.0 * np.asarray(z, dtype=complex)
    for k in range(1, K + 1):
        acc = acc + (-1) ** k * (k * math.pi) ** (-t - 1) * np.sin(k * math.pi * np.asarray(z, dtype=complex))
    out = 2 * (-1) ** (t // 2) * acc
    return complex(out) if np.ndim(out) == 0 else out


def g_t_eval(t: int, K: int, z):
    """``g_t(z) = Λ_{t,1}(z) + 2(−1)^{t/2} Σ_{k≤K} (−1)^k (kπ)^{−t−1} sin(kπz)``."""
    t, K = _check_t(t), _check_K(K)
    zz = np.asarray(z, dtype=complex)
    out = eval_lambda1(t, zz) + sine_correction(t, K, zz)
    return complex(out) if np.ndim(out) == 0 else out


# -- kernels ---------------------------------------------------------------------------


def _sinh_ratio_regular(eps, z):
    """``cosh(εz)/sinh ε − 1/ε`` and ``sinh(εz)/sinh ε`` for small ``ε``."""
    if eps == 0:
        return 0j, z
    e2 = eps * eps
    z2 = z * z
    a = eps * (z2 / 2 - 1 / 6) + eps * e2 * (z2 * z2 / 24 - z2 / 12 + 7 / 360)
    b = cmath.sinh(eps * z) / cmath.sinh(eps)
    return a, b


def _coth_regular(eps, z):
    """``cosh(εz) coth ε − 1/ε`` and ``sinh(εz) coth ε`` for small ``ε``."""
    if eps == 0:
        return 0j, z
    e2 = eps * eps
    z2 = z * z
    a = eps * (z2 / 2 + 1 / 3) + eps * e2 * (z2 * z2 / 24 + z2 / 6 - 1 / 45)
    b = cmath.sinh(eps * z) * cmath.cosh(eps) / cmath.sinh(eps)
    return a, b


def _near_pole(zeta: complex, K: int) -> Optional[int]:
    m = round(zeta.imag / math.pi)
    if 1 <= abs(m) <= K and abs(zeta - m * math.pi * 1j) < NEAR_POLE:
        return m
    return None


def _pole_sum(zeta, z, K, residue, skip=None):
    """``Σ_{0<|m|≤K, m≠skip} residue(m, z)/(ζ − mπi)``."""
    acc = 0j
    for k in range(1, K + 1):
        for m in (k, -k):
            if m != skip:
                acc += residue(m, z) / (zeta - m * math.pi * 1j)
    return acc


def _gk_residue(m, z):
    return (-1) ** m * 1j * cmath.sin(m * math.pi * z)


def _hk_residue(m, z):
    return 1j * cmath.sin(m * math.pi * z)


def _gk_scalar(zeta: complex, z: complex, K: int) -> complex:
    m = _near_pole(zeta, K)
    if m is not None:
        eps = zeta - m * math.pi * 1j
        a, b = _sinh_ratio_regular(eps, z)
        regular = (-1) ** m * (1j * cmath.sin(m * math.pi * z) * a + cmath.cos(m * math.pi * z) * b)
        return regular - _pole_sum(zeta, z, K, _gk_residue, skip=m)
    if abs(zeta) < SMALL_ZETA:
        zz = zeta * zeta
        main = z + zz * (eval_lambda1(2, z) + zz * eval_lambda1(4, z))
    else:
        main = cmath.sinh(zeta * z) / cmath.sinh(zeta)
    sub = 0j
    for k in range(1, K + 1):
        sub += (-1) ** (k + 1) * k * cmath.sin(k * math.pi * z) / (zeta * zeta + (k * math.pi) ** 2)
    return main - 2 * math.pi * sub


def _hk_scalar(zeta: complex, z: complex, K: int) -> complex:
    m = _near_pole(zeta, K)
    if m is not None:
        eps = zeta - m * math.pi * 1j
        a, b = _coth_regular(eps, z)
        regular = 1j * cmath.sin(m * math.pi * z) * a + cmath.cos(m * math.pi * z) * b
        return regular - _pole_sum(zeta, z, K, _hk_residue, skip=m)
    if abs(zeta) < SMALL_ZETA:
        # sinh(ζz) coth ζ = z + ζ²(z³/6 + z/3) + ζ⁴(z⁵/120 + z³/18 − z/45) + ...
        zz = zeta * zeta
        z2 = z * z
        main = z + zz * (z * z2 / 6 + z / 3) + zz * zz * (z * z2 * z2 / 120 + z * z2 / 18 - z / 45)
    else:
        main = cmath.sinh(zeta * z) * cmath.cosh(zeta) / cmath.sinh(zeta)
    add = 0j
    for k in range(1, K + 1):
        add += k * cmath.sin(k * math.pi * z) / (zeta * zeta + (k * math.pi) ** 2)
    return main + 2 * math.pi * add


def _kernel(scalar_fn, zeta, z, K):
    K = _check_K(K)
    zeta_a = np.asarray(zeta, dtype=complex)
    z_a = np.asarray(z, dtype=complex)
    limit = (K + 1) * math.pi
    if np.any(np.abs(zeta_a) >= limit):
        raise PoleGuard(f"|ζ| must be below (K+1)π = {limit:.6g}")
    zeta_b, z_b = np.broadcast_arrays(zeta_a, z_a)
    out = np.empty(zeta_b.shape, dtype=complex)
    for idx in np.ndindex(zeta_b.shape):
        out[idx] = scalar_fn(complex(zeta_b[idx]), complex(z_b[idx]), K)
    return complex(out) if out.ndim == 0 else out


def gk_kernel(zeta, z, K: int):
    """``G_K(ζ,z) = sinh(ζz)/sinh ζ − 2π Σ_{k≤K} (−1)^{k+1} k sin(kπz)/(ζ²+k²π²)``.

    Near a removed pole ``ζ ≈ ±kπi`` (``k ≤ K``) the two singular pieces
    are combined analytically before evaluation.

    Raises
    ------
    PoleGuard
        If ``|ζ| ≥ (K+1)π``.
    """
    return _kernel(_gk_scalar, zeta, z, K)


def hk_kernel(zeta, z, K: int):
    """``H_K(ζ,z) = sinh(ζz) coth ζ + 2π Σ_{k≤K} k sin(kπz)/(ζ²+k²π²)``."""
    return _kernel(_hk_scalar, zeta, z, K)


# -- coefficients and expansion ----------------------------------------------------------


def default_radius(tau: float, K: int) -> float:
    """``(K+½)π`` when it clears τ, otherwise midway between τ and ``(K+1)π``."""
    half = (K + 0.5) * math.pi
    if tau < half - 0.05:
        return half
    return 0.5 * (tau + (K + 1) * math.pi)


def _check_radius(radius: float, tau: float, K: int):
    if not tau < radius < (K + 1) * math.pi:
        raise RadiusOutOfRange(
            f"radius {radius} must lie in (τ, (K+1)π) = ({tau:.6g}, {(K + 1) * math.pi:.6g})"
        )
    for k in range(1, K + 1):
        if abs(radius - k * math.pi) < 1e-6:
            raise RadiusOutOfRange(f"radius {radius} is within 1e-6 of {k}π")


def buck_coefficients(f: EntireFunctionModel, K: int, cfg: Optional[ContourConfig] = None,
                      tol: Optional[float] = 1e-13) -> list[complex]:
    """``C_k = −k i ∮_{|ζ|=r} (1 + (−1)^{k+1} e^ζ)/(ζ² + k²π²) F(ζ) dζ`` for ``k ≤ K``.

    The contour integral carries no ``1/2πi`` factor.
    """
    K = _check_K(K)
    tau = f.type_bound()
    if cfg is None:
        cfg = ContourConfig(default_radius(tau, K))
    _check_radius(cfg.radius, tau, K)
    coeffs = []
    for k in range(1, K + 1):
        sign = (-1) ** (k + 1)
        w2 = (k * math.pi) ** 2

        def integrand(zeta, sign=sign, w2=w2):
            return (1 + sign * np.exp(zeta)) / (zeta * zeta + w2) * laplace_eval(f, zeta)

        q = circle_quadrature(integrand, cfg, tol).value
        # −k i ∮ h dζ = −k i (2πi) (1/2πi ∮ h dζ) = 2πk · q
        coeffs.append(complex(2 * math.pi * k * q))
    return coeffs


@dataclass
class BuckExpansion:
    K: int
    C: list
    gt_data: DerivativeData
    contour: ContourConfig
    t_max: int
    value: object = None
    direct: object = None
    residual: Optional[float] = None
    tail_estimate: Optional[float] = None


def buck_series(data: DerivativeData, K: int, z, t_max: Optional[int] = None):
    """``Σ_{t≤t_max} f^{(t)}(0) g_t(1−z) + f^{(t)}(1) g_t(z)``."""
    t_max = data.t_max if t_max is None else t_max
    zz = np.asarray(z, dtype=complex)
    acc = 0.0 * zz
    for t in range(0, t_max + 1, 2):
        at, bt = complex(data.a_at(t)), complex(data.b_at(t))
        if at:
            acc = acc + at * g_t_eval(t, K, 1 - zz)
        if bt:
            acc = acc + bt * g_t_eval(t, K, zz)
    return complex(acc) if np.ndim(acc) == 0 else acc


def sine_sum(C: Sequence[complex], z):
    zz = np.asarray(z, dtype=complex)
    acc = 0.0 * zz
    for k, c in enumerate(C, start=1):
        acc = acc + c * np.sin(k * math.pi * zz)
    return complex(acc) if np.ndim(acc) == 0 else acc


def buck_expand(f: EntireFunctionModel, K: int, z, t_max: int = DEFAULT_T_MAX,
                cfg: Optional[ContourConfig] = None) -> BuckExpansion:
    """Evaluate the kernel expansion of ``f`` at ``z`` (scalar or array).

    The residual against direct evaluation of ``f`` and a geometric tail
    estimate for the truncated series are reported alongside.
    """
    K = _check_K(K)
    tau = f.type_bound()
    if not tau < (K + 1) * math.pi:
        raise RadiusOutOfRange(f"type {tau:.6g} is not below (K+1)π for K={K}")
    if cfg is None:
        cfg = ContourConfig(default_radius(tau, K))
    C = buck_coefficients(f, K, cfg)
    data = derivative_data(f, t_max)
    value = buck_series(data, K, z, t_max)
    value = value + sine_sum(C, z)
    direct = f(np.asarray(z, dtype=complex))
    residual = float(np.max(np.abs(np.asarray(value) - direct)))
    q = (tau / ((K + 1) * math.pi)) ** 2
    last = max(abs(complex(data.a_at(t_max))), abs(complex(data.b_at(t_max))))
    tail = last * ((K + 1) * math.pi) ** (-t_max - 1) * q / (1 - q)
    return BuckExpansion(K, C, data, cfg, t_max, value,
                         complex(direct) if np.ndim(direct) == 0 else direct, residual, tail)


# -- Schoenberg --------------------------------------------------------------------------


@dataclass
class SchoenbergResult:
    K: int
    C: list
    type_estimate: float
    residual: float
    relative_residual: float
    violations: list = field(default_factory=list)
    contour: Optional[ContourConfig] = None


def _magnitude_scale(d: np.ndarray, t: int) -> float:
    """``Σ_j |f^{(t+j)}(0)|/j!``: the size of the terms that make up ``f^{(t)}(1)``."""
    acc = 0.0
    for j in range(d.size - t - 1, -1, -1):
        acc = abs(d[t + j]) + acc / (j + 1)
    return acc


def even_derivative_violations(f: EntireFunctionModel, t_check: int, tol: float) -> list:
    """Even orders ``t ≤ t_check`` where ``f^{(t)}(0)`` or ``f^{(t)}(1)`` is not negligible.

    "Negligible" means at most ``tol · max(1, Σ_j |f^{(t+j)}(0)|/j!)``, a
    scale matched to the rounding error of the shift series.
    """
    data = derivative_data(f, t_check)
    out = []
    for t in range(0, t_check + 1, 2):
        bound = float(tol * max(1.0, _magnitude_scale(f.derivs_at_0, t)))
        for point, val in ((0, data.a_at(t)), (1, data.b_at(t))):
            if abs(val) > bound:
                out.append({"t": t, "point": point, "value": complex(val), "bound": bound})
    return out


def schoenberg_decompose(f: EntireFunctionModel, t_check: int = 20, tol: float = 1e-9,
                         window: int = 20, grid: Optional[Sequence[complex]] = None
                         ) -> SchoenbergResult:
    """Recover ``f = Σ_{k≤K} C_k sin(kπz)`` for ``f`` with vanishing even derivatives.

    Raises
    ------
    NotEvenVanishing
        At the first even order (and endpoint) where the hypothesis fails;
        ``.violations`` lists every failure up to ``t_check``.
    HypothesisViolation
        If the estimated type is not close to an integer multiple of π.
    """
    t_check = _check_t(t_check)
    violations = even_derivative_violations(f, t_check, tol)
    if violations:
        v = violations[0]
        err = NotEvenVanishing(v["t"], v["point"], v["value"], v["bound"])
        err.violations = violations
        raise err

    tau = estimate_type(f, window=min(window, f.n_terms))
    ratio = tau / math.pi
    K = round(ratio)
    if abs(ratio - K) >= 0.25:
        raise HypothesisViolation(
            f"estimated type {tau:.6g} = {ratio:.4g}π is not near an integer multiple of π"
        )
    zs = np.linspace(-1.0, 2.0, 31) if grid is None else np.asarray(grid, dtype=complex)
    fz = f(np.asarray(zs, dtype=complex))
    scale = float(np.max(np.abs(fz), initial=0.0))
    if K == 0:
        residual = scale
        return SchoenbergResult(0, [], tau, residual, residual / scale if scale else 0.0)
    cfg = ContourConfig((K + 0.5) * math.pi)
    C = buck_coefficients(f, K, cfg)
    residual = float(np.max(np.abs(fz - sine_sum(C, zs))))
    return SchoenbergResult(K, C, tau, residual, residual / scale if scale else residual,
                            [], cfg)
