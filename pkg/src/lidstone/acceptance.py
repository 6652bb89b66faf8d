"""End-to-end acceptance checks.

Each ``criterion_N`` returns a :class:`CriterionResult`; :func:`run_all`
runs them in order.  The same functions back ``lidstone reproduce`` and
``tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .basis import basis_table, lambda0, lambda1, lambda_bernoulli, lambda_ode, lambda_recurrence
from .buck import buck_coefficients, buck_expand, schoenberg_decompose
from .contour import ContourConfig, bound_check, check_integral, circle_quadrature
from .errors import DivergenceDetected, NotEvenVanishing
from .expansion import (CounterexampleSpec, expand_polynomial, exp_identity_residual,
                        generating_partial_sum, m0_closed, m1_closed, sparse_counterexample,
                        whittaker_interpolate)
from .models import exp_model, sin_kpi_model, sine_mix_model
from .polynomial import RationalPolynomial

F = Fraction
Z = RationalPolynomial.z()


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.number:2d}: {self.title} ({self.detail}; {self.seconds:.2f}s)"

    def to_json_obj(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail}


def _timed(number: int, title: str):
    def wrap(fn: Callable[[], tuple[bool, str]]):
        def run() -> CriterionResult:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failure, not an abort
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CriterionResult(number, title, ok, detail, time.perf_counter() - start)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# Published displays of the first basis polynomials.
REFERENCE_LAMBDA1 = {
    0: RationalPolynomial([0, 1]),
    2: RationalPolynomial([0, F(-1, 6), 0, F(1, 6)]),
    4: RationalPolynomial([0, F(7, 360), 0, F(-1, 36), 0, F(1, 120)]),
}
REFERENCE_LAMBDA0 = {
    2: RationalPolynomial([0, F(-1, 3), F(1, 2), F(-1, 6)]),
    4: RationalPolynomial([0, F(1, 45), 0, F(-1, 18), F(1, 24), F(-1, 120)]),
}


@_timed(1, "exact basis reproduction")
def criterion_1():
    bad = []
    for name, gen in (("recurrence", lambda_recurrence), ("ode", lambda_ode),
                      ("bernoulli", lambda_bernoulli)):
        for t, want in REFERENCE_LAMBDA1.items():
            if gen(t) != want:
                bad.append(f"{name} Λ_{t},1")
        for t, want in REFERENCE_LAMBDA0.items():
            if gen(t).reflect() != want:
                bad.append(f"{name} Λ_{t},0")
    return not bad, "all displays match" if not bad else "mismatch: " + ", ".join(bad)


@_timed(2, "three-way generator agreement to t=60")
def criterion_2():
    start = time.perf_counter()
    table = basis_table(60)
    elapsed = time.perf_counter() - start
    ok = len(table) == 31 and elapsed < 10
    return ok, f"{len(table)} entries agree in {elapsed:.2f}s < 10s"


def structural_failures(t_max: int = 40) -> list[str]:
    """Exact structural identities for every even ``t ≤ t_max``; returns failures."""
    bad = []
    for t in range(0, t_max + 1, 2):
        p1, p0 = lambda1(t), lambda0(t)
        if not p1.is_odd():
            bad.append(f"odd t={t}")
        if p1.degree != t + 1 or p1.leading_coefficient != F(1, math.factorial(t + 1)):
            bad.append(f"degree/leading t={t}")
        for s in range(0, t_max + 2, 2):
            d1, d0 = p1.differentiate(s), p0.differentiate(s)
            delta = 1 if s == t else 0
            if d1.evaluate(0) != 0 or d1.evaluate(1) != delta:
                bad.append(f"duality Λ_{t},1 order {s}")
            if d0.evaluate(0) != delta or d0.evaluate(1) != 0:
                bad.append(f"duality Λ_{t},0 order {s}")
        if t >= 2 and p1.differentiate(2) != lambda1(t - 2):
            bad.append(f"ode t={t}")
        mono = RationalPolynomial()
        for tau in range(0, t + 1, 2):
            mono = mono + lambda1(tau).scale(F(math.factorial(t + 1), math.factorial(t - tau + 1)))
        if mono != RationalPolynomial.monomial(t + 1):
            bad.append(f"monomial t={t}")
        mono0 = p0
        for tau in range(0, t + 1, 2):
            mono0 = mono0 + lambda1(tau).scale(F(1, math.factorial(t - tau)))
        if mono0 != RationalPolynomial.monomial(t, F(1, math.factorial(t))):
            bad.append(f"monomial (Λ_t,0 form) t={t}")
        diff = p1.compose(Z + 1) - p1.compose(Z - 1)
        if diff != RationalPolynomial.monomial(t, F(2, math.factorial(t))):
            bad.append(f"translation t={t}")
    return bad


@_timed(3, "structural identities for t<=40")
def criterion_3():
    bad = structural_failures(40)
    return not bad, "all identities exact" if not bad else "; ".join(bad[:5])


def random_rational_polynomial(rng: random.Random, max_degree: int = 21) -> RationalPolynomial:
    deg = rng.randint(0, max_degree)
    return RationalPolynomial(
        [F(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(deg + 1)]
    )


@_timed(4, "polynomial round trip (200 cases)")
def criterion_4():
    rng = random.Random(20240601)
    fails = 0
    for _ in range(200):
        p = random_rational_polynomial(rng)
        if not expand_polynomial(p).exact:
            fails += 1
    return fails == 0, f"{200 - fails}/200 exact"


ZETA_GRID = (0.1, 0.75, 1.5, 1.2j, 0.9 + 0.9j)
Z_GRID = (0.0, 0.5, 1.5, -1.0 + 0.5j, 0.3 - 1.2j)


@_timed(5, "generating series and reflection")
def criterion_5():
    series_err = refl_err = 0.0
    for zeta in ZETA_GRID:
        for z in Z_GRID:
            series_err = max(series_err, abs(m1_closed(zeta, z) - generating_partial_sum(zeta, z, 60, 1)))
            refl_err = max(refl_err, abs(m0_closed(zeta, z) - m1_closed(zeta, 1 - z)))
    ok = series_err < 1e-10 and refl_err < 1e-13
    return ok, f"series {series_err:.1e} < 1e-10, reflection {refl_err:.1e} < 1e-13"


def exp_residual_ratios(zeta: complex, z: complex, T: int = 60, floor: float = 1e-12):
    """Per-step residual ratios ``r(T+2)/r(T)`` where both residuals exceed ``floor``."""
    res = [exp_identity_residual(zeta, z, t) for t in range(0, T + 1, 2)]
    return res, [b / a for a, b in zip(res, res[1:]) if a > floor and b > floor]


@_timed(6, "exponential identity residual and rate")
def criterion_6():
    worst, worst_ratio = 0.0, 1.0
    for zeta in (0.5, 1.0, 2.0, 1.5j):
        q = (abs(zeta) / math.pi) ** 2
        for z in (0.3, 0.7, 1.2, -0.5 + 0.5j):
            res, ratios = exp_residual_ratios(zeta, z)
            worst = max(worst, res[-1])
            for r in ratios:
                dev = max(r / q, q / r)
                worst_ratio = max(worst_ratio, dev)
    ok = worst < 1e-8 and worst_ratio <= 3
    return ok, f"max residual {worst:.1e} < 1e-8, ratio within factor {worst_ratio:.2f} <= 3"


@_timed(7, "contour oracle")
def criterion_7():
    cauchy = 0.0
    for k in range(0, 11):
        for z in (0.7, -1.3, 2.0, 1 + 1j):
            cfg = ContourConfig(1.0, 256)
            g = lambda w, z=z, k=k: np.exp(w * z) * w ** (-k - 1)
            val = circle_quadrature(g, cfg, tol=None).value
            cauchy = max(cauchy, abs(val - z ** k / math.factorial(k)))
    integ = kdep = 0.0
    for t in (0, 2, 4, 10):
        for z in (0.5, 0.3, 1.7):
            vals1, vals0 = [], []
            for K in (1, 2, 3):
                c1 = check_integral(t, z, K, which=1)
                c0 = check_integral(t, z, K, which=0)
                integ = max(integ, c1.abs_error, c0.abs_error)
                vals1.append(c1.quadrature)
                vals0.append(c0.quadrature)
            for vals in (vals1, vals0):
                kdep = max(kdep, max(abs(v - vals[0]) for v in vals))
    ok = cauchy < 1e-12 and integ < 1e-9 and kdep < 1e-9
    return ok, f"cauchy {cauchy:.1e}, integrals {integ:.1e}, K-spread {kdep:.1e}"


@_timed(8, "sup-norm bounds at 1000 points")
def criterion_8():
    violations = 0
    slack = math.inf
    for t in (0, 2, 10):
        for r in (1.0, 2.0):
            rep = bound_check(t, r, samples=1000, seed=t * 10 + int(r), raise_on_violation=False)
            violations += 0 if rep.ok else 1
            slack = min(slack, *rep.min_slack.values())
    return violations == 0, f"{violations} violations, min slack {slack:.2e}"


@_timed(9, "kernel expansion example")
def criterion_9():
    c1 = [buck_coefficients(sin_kpi_model(1), 1, ContourConfig(r))[0] for r in (4.0, 5.0)]
    c_err = max(abs(c - 1) for c in c1)
    zs = np.linspace(-1.0, 2.0, 10)
    res = buck_expand(exp_model(2), 1, zs, t_max=60)
    ok = c_err < 1e-8 and res.residual < 1e-6
    return ok, f"|C_1 - 1| = {c_err:.1e}, e^(2z) residual {res.residual:.1e}"


@_timed(10, "sine decomposition recovery")
def criterion_10():
    out = schoenberg_decompose(sine_mix_model([(1, 2.0), (2, -3.0)]))
    err = max(abs(c - w) for c, w in zip(out.C, (2, -3))) if out.K == 2 else math.inf
    try:
        schoenberg_decompose(exp_model(1))
        rejected = False
    except NotEvenVanishing as exc:
        rejected = exc.t == 0
    ok = out.K == 2 and err < 1e-7 and rejected
    return ok, f"K={out.K}, coefficient error {err:.1e}, e^z rejected at t=0: {rejected}"


@_timed(11, "interpolation divergence detection")
def criterion_11():
    T = 60
    bad = [(-1) ** (t // 2) * math.pi ** t for t in range(0, T + 1, 2)]
    good = [0.5 ** t for t in range(0, T + 1, 2)]
    try:
        whittaker_interpolate(bad, [0] * len(bad), 0.5, T)
        detected = False
    except DivergenceDetected:
        detected = True
    try:
        whittaker_interpolate(good, good, 0.5, T)
        spurious = False
    except DivergenceDetected:
        spurious = True
    return detected and not spurious, f"divergent flagged: {detected}, convergent flagged: {spurious}"


@_timed(12, "sparse counterexample conditions")
def criterion_12():
    ce = sparse_counterexample(CounterexampleSpec(((2, 1), (4, 1)), M=2))
    us = ", ".join(str(term.u) for term in ce.terms)
    return ce.report.ok, f"{ce.report.checked} conditions checked, u = {us}"


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12)


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
