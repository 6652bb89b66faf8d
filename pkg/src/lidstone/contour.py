"""Contour quadrature on circles, Laplace transforms, and the integral formulas.

``circle_quadrature`` applies the equispaced trapezoidal rule to
``(1/2πi) ∮ g(ζ) dζ``; for integrands analytic in an annulus around the
circle the error decays geometrically in the node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .basis import eval_lambda0, eval_lambda1, lambda0, lambda1
from .errors import (BoundViolated, InputError, InsideTypeDisk, NonConverged,
                     TailTooLarge)
from .models import EntireFunctionModel

DEFAULT_NODES = 256
MAX_NODES = 8192
DEFAULT_TOL = 1e-13
ROUNDOFF = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class ContourConfig:
    radius: float
    nodes: int = DEFAULT_NODES
    pole_radii: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise InputError(f"radius must be positive and finite, got {self.radius!r}")
        n = self.nodes
        if n < 16 or n & (n - 1):
            raise InputError(f"nodes must be a power of two >= 16, got {n}")
        for p in self.pole_radii:
            if abs(self.radius - p) < 1e-6:
                raise InputError(f"radius {self.radius} is within 1e-6 of pole radius {p}")


@dataclass(frozen=True)
class TruncationConfig:
    K: int = 1
    T: int = 0

    def __post_init__(self):
        if self.K < 0:
            raise InputError("K must be nonnegative")
        if self.T < 0 or self.T % 2:
            raise InputError("T must be even and nonnegative")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    nodes: int

    def __complex__(self):
        return complex(self.value)


def _trapezoid(g: Callable, radius: float, n: int) -> tuple[complex, float]:
    theta = 2 * math.pi * np.arange(n) / n
    zeta = radius * np.exp(1j * theta)
    vals = np.asarray(g(zeta), dtype=complex) * zeta
    if not np.all(np.isfinite(vals)):
        raise NonConverged(f"integrand is not finite on |ζ| = {radius}")
    # numpy's pairwise summation runs in a fixed order for a fixed n
    return complex(np.sum(vals) / n), float(np.max(np.abs(vals)))


def circle_quadrature(g: Callable, cfg: ContourConfig, tol: Optional[float] = DEFAULT_TOL,
                      max_nodes: int = MAX_NODES) -> QuadratureResult:
    """``(1/2πi) ∮_{|ζ|=r} g(ζ) dζ`` by the trapezoidal rule.

    ``g`` must accept a NumPy array of nodes.  The error estimate is
    ``|I_N − I_{N/2}|``; ``N`` doubles from ``cfg.nodes`` until the estimate
    is below ``tol · max(1, |I_N|)`` (or just ``cfg.nodes`` when ``tol`` is
    ``None``).

    Raises
    ------
    NonConverged
        When ``max_nodes`` is reached without meeting ``tol``.
    """
    n = cfg.nodes
    coarse, _ = _trapezoid(g, cfg.radius, n // 2)
    fine, scale = _trapezoid(g, cfg.radius, n)
    err = abs(fine - coarse)
    if tol is None:
        return QuadratureResult(fine, err, n)
    while err > max(tol * max(1.0, abs(fine)), ROUNDOFF * scale):
        if n >= max_nodes:
            raise NonConverged(
                f"trapezoid estimate {err:.3g} above tolerance at N={n}", fine, err
            )
        n *= 2
        coarse = fine
        fine, scale = _trapezoid(g, cfg.radius, n)
        err = abs(fine - coarse)
    return QuadratureResult(fine, err, n)


# -- Laplace transform -------------------------------------------------------------


def laplace_eval(f: EntireFunctionModel, zeta, margin: float = 0.0, rtol: float = 1e-14):
    """``F(ζ) = Σ_k f^{(k)}(0) ζ^{−k−1}`` for ``|ζ|`` beyond the type.

    Accepts scalar or array ``ζ``.  The truncation tail is bounded by the
    geometric series with ratio ``τ/|ζ|`` started from the largest of the
    last few stored terms.

    Raises
    ------
    InsideTypeDisk
        If ``|ζ| ≤ τ(f)·(1 + margin)``.
    TailTooLarge
        If the stored Taylor prefix cannot meet ``rtol · |F|``.
    """
    scalar = np.ndim(zeta) == 0
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    tau = f.type_bound()
    r = np.abs(zeta)
    if np.any(r <= tau * (1 + margin)):
        raise InsideTypeDisk(f"|ζ| = {r.min():.6g} does not exceed the type {tau:.6g}")
    d = f.derivs_at_0
    w = 1.0 / zeta
    acc = np.zeros_like(zeta)
    for k in range(d.size - 1, -1, -1):
        acc = acc * w + d[k]
    F = acc * w

    if not f.is_polynomial:
        n = d.size
        last = np.arange(max(0, n - 8), n)
        q = tau / r
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            mags = np.abs(d[last])[:, None] * np.exp(-(last[:, None] + 1) * np.log(r)[None, :])
            # extrapolate each stored term to index n, then sum the geometric tail
            extrap = mags * np.exp((n - last)[:, None] * np.log(np.maximum(q, 1e-300))[None, :])
        tail = np.max(extrap, axis=0) / (1 - q)
        bad = tail > rtol * np.maximum(np.abs(F), 1e-300)
        bad &= tail > 0
        if np.any(bad):
            raise TailTooLarge(
                f"Laplace series tail {tail[bad].max():.3g} too large at |ζ| = {r[bad].min():.6g}; "
                f"need more than {n} Taylor terms"
            )
    return complex(F[0]) if scalar else F


def derivative_via_contour(f: EntireFunctionModel, t: int, point: int, cfg: ContourConfig,
                           tol: Optional[float] = 1e-12) -> complex:
    """``f^{(t)}(point) = (1/2πi) ∮ ζ^t e^{ζ·point} F(ζ) dζ`` on ``|ζ| = r > τ(f)``."""
    if point not in (0, 1):
        raise InputError("point must be 0 or 1")
    if t < 0:
        raise InputError("derivative order must be nonnegative")
    tau = f.type_bound()
    if cfg.radius <= tau:
        raise InsideTypeDisk(f"radius {cfg.radius} must exceed the type {tau:.6g}")
    return circle_quadrature(
        lambda zeta: zeta ** t * np.exp(zeta * point) * laplace_eval(f, zeta), cfg, tol
    ).value


# -- integral formulas for the basis -----------------------------------------------------


def _check_t(t):
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)) or t < 0 or t % 2:
        raise InputError(f"t must be an even nonnegative integer, got {t!r}")
    return int(t)


def integral_radius(K: int) -> float:
    return (2 * K + 1) * math.pi / 2


def _quad_cfg(K: int, nodes: int) -> ContourConfig:
    return ContourConfig(integral_radius(K), nodes)


def lambda1_sine_sum(t: int, z, K: int):
    """``(−1)^{t/2} (2/π^{t+1}) Σ_{k≤K} (−1)^{k+1} k^{−t−1} sin(kπz)``."""
    s = 0.0 * complex(z)
    for k in range(1, K + 1):
        s += (-1) ** (k + 1) / k ** (t + 1) * np.sin(k * math.pi * complex(z))
    return (-1) ** (t // 2) * 2 / math.pi ** (t + 1) * s


def lambda0_sine_sum(t: int, z, K: int):
    """``(−1)^{t/2} (2/π^{t+1}) Σ_{k≤K} k^{−t−1} sin(kπz)``."""
    s = 0.0 * complex(z)
    for k in range(1, K + 1):
        s += 1 / k ** (t + 1) * np.sin(k * math.pi * complex(z))
    return (-1) ** (t // 2) * 2 / math.pi ** (t + 1) * s


def lambda1_contour_term(t: int, z, K: int, nodes: int = DEFAULT_NODES,
                         tol: Optional[float] = DEFAULT_TOL) -> complex:
    """``(1/2πi) ∮_{|ζ|=(2K+1)π/2} ζ^{−t−1} sinh(ζz)/sinh(ζ) dζ``."""
    z = complex(z)
    return circle_quadrature(
        lambda zeta: zeta ** (-t - 1) * np.sinh(zeta * z) / np.sinh(zeta),
        _quad_cfg(K, nodes), tol,
    ).value


def lambda0_contour_term(t: int, z, K: int, nodes: int = DEFAULT_NODES,
                         tol: Optional[float] = DEFAULT_TOL, form: str = "auto") -> complex:
    """``(1/2πi) ∮_{|ζ|=(2K+1)π/2} ζ^{−t−1} sinh(ζz) coth(ζ) dζ``.

    For ``|z| > 1`` the integrand grows like ``e^{r|z|}`` on the circle and
    the sum loses digits to cancellation.  ``form="reflected"`` uses
    ``sinh(ζz) coth ζ = cosh(ζz) + sinh(ζ(z−1))/sinh ζ``; the ``cosh`` part
    integrates to ``z^t/t!`` in closed form and the remainder stays small.
    ``"auto"`` picks whichever integrand has the smaller growth rate.
    """
    z = complex(z)
    if form == "auto":
        form = "reflected" if abs(1 - z) - 1 < abs(z) else "direct"
    cfg = _quad_cfg(K, nodes)
    if form == "direct":
        return circle_quadrature(
            lambda zeta: zeta ** (-t - 1) * np.sinh(zeta * z) * np.cosh(zeta) / np.sinh(zeta),
            cfg, tol,
        ).value
    if form == "reflected":
        rest = circle_quadrature(
            lambda zeta: zeta ** (-t - 1) * np.sinh(zeta * (z - 1)) / np.sinh(zeta), cfg, tol
        ).value
        return z ** t / math.factorial(t) + rest
    raise InputError(f"unknown integrand form {form!r}")


def lambda_t1_integral(t: int, z, K: int = 1, nodes: int = DEFAULT_NODES,
                       tol: Optional[float] = DEFAULT_TOL) -> complex:
    """``Λ_{t,1}(z)`` as its first ``K`` residue terms plus a contour remainder."""
    t = _check_t(t)
    if K < 0:
        raise InputError("K must be nonnegative")
    return complex(lambda1_sine_sum(t, z, K) + lambda1_contour_term(t, z, K, nodes, tol))


def lambda_t0_integral(t: int, z, K: int = 1, nodes: int = DEFAULT_NODES,
                       tol: Optional[float] = DEFAULT_TOL, form: str = "auto") -> complex:
    """``Λ_{t,0}(z) = z^t/t! + (residue sines) − (contour remainder)``."""
    t = _check_t(t)
    if K < 0:
        raise InputError("K must be nonnegative")
    z = complex(z)
    return complex(
        z ** t / math.factorial(t) + lambda0_sine_sum(t, z, K)
        - lambda0_contour_term(t, z, K, nodes, tol, form)
    )


@dataclass(frozen=True)
class IntegralCheck:
    t: int
    z: complex
    K: int
    which: int
    exact: complex
    quadrature: complex

    @property
    def abs_error(self) -> float:
        return abs(self.exact - self.quadrature)


def check_integral(t: int, z, K: int = 1, nodes: int = DEFAULT_NODES, which: int = 1) -> IntegralCheck:
    z = complex(z)
    if which == 1:
        exact, quad = eval_lambda1(_check_t(t), z), lambda_t1_integral(t, z, K, nodes)
    elif which == 0:
        exact, quad = eval_lambda0(_check_t(t), z), lambda_t0_integral(t, z, K, nodes)
    else:
        raise InputError("which must be 0 or 1")
    return IntegralCheck(t, z, K, which, complex(exact), quad)


# -- sup-norm bounds -------------------------------------------------------------------


@dataclass
class BoundReport:
    t: int
    r: float
    samples: int
    ok: bool
    min_slack: dict
    worst_point: dict


def _disk_samples(r: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    rad = r * np.sqrt(rng.random(samples))
    ang = 2 * math.pi * rng.random(samples)
    return rad * np.exp(1j * ang)


def bound_check(t: int, r: float, samples: int = 100, seed: int = 0,
                points: Optional[Sequence[complex]] = None, raise_on_violation: bool = True
                ) -> BoundReport:
    """Test the sup-norm estimates for ``Λ_{t,1}`` and ``Λ_{t,0}`` on ``|z| ≤ r``.

    Checked inequalities, for each sample ``z``::

        |Λ_{t,1}(z) − s(z)|  ≤ (2/3π)^t e^{3πr/2}
        |Λ_{t,0}(z) − s(z)|  ≤ e^{3π/2} (2/3π)^t e^{3πr/2}
        |Λ_{t,1}(z)|         ≤ 2 π^{−t} e^{3πr/2}
        |Λ_{t,0}(z)|         ≤ 2 e^{3π/2} π^{−t} e^{3πr/2}

    with ``s(z) = (−1)^{t/2} (2/π^{t+1}) sin(πz)``.  The sample points
    include the origin and points on the boundary circle.  Slack is
    ``rhs − lhs``.
    """
    t = _check_t(t)
    if not r > 0:
        raise InputError("r must be positive")
    if samples < 1:
        raise InputError("samples must be positive")
    rng = np.random.default_rng(seed)
    if points is None:
        zs = _disk_samples(r, samples, rng)
        zs[0] = 0
        if samples > 1:
            zs[1:min(samples, 9)] = r * np.exp(2j * math.pi * np.arange(min(samples, 9) - 1) / 8)
    else:
        zs = np.asarray(points, dtype=complex)
    l1 = lambda1(t).evaluate(zs)
    l0 = lambda0(t).evaluate(zs)
    s = (-1) ** (t // 2) * 2 / math.pi ** (t + 1) * np.sin(math.pi * zs)
    growth = math.exp(3 * math.pi * r / 2)
    e32 = math.exp(3 * math.pi / 2)
    checks = {
        "lambda1_minus_sine": (np.abs(l1 - s), (2 / (3 * math.pi)) ** t * growth),
        "lambda0_minus_sine": (np.abs(l0 - s), e32 * (2 / (3 * math.pi)) ** t * growth),
        "lambda1_norm": (np.abs(l1), 2 * math.pi ** (-t) * growth),
        "lambda0_norm": (np.abs(l0), 2 * e32 * math.pi ** (-t) * growth),
    }
    min_slack, worst = {}, {}
    ok = True
    for name, (lhs, rhs) in checks.items():
        slack = rhs - lhs
        i = int(np.argmin(slack))
        min_slack[name] = float(slack[i])
        worst[name] = complex(zs[i])
        if slack[i] < 0:
            ok = False
            if raise_on_violation:
                raise BoundViolated(name, complex(zs[i]), float(lhs[i]), float(rhs))
    return BoundReport(t, r, int(zs.size), ok, min_slack, worst)
