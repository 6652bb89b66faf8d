"""Lidstone interpolation: exact bases, expansions of entire functions and
kernel checks by contour quadrature."""

from .basis import (LidstoneBasisEntry, basis_table, eval_lambda0, eval_lambda1, lambda0,
                    lambda1, lambda_bernoulli, lambda_ode, lambda_recurrence, lidstone)
from .buck import (BuckExpansion, SchoenbergResult, buck_coefficients, buck_expand, g_t_eval,
                   gk_kernel, hk_kernel, schoenberg_decompose)
from .contour import (ContourConfig, TruncationConfig, bound_check, check_integral,
                      circle_quadrature, laplace_eval, lambda_t0_integral, lambda_t1_integral)
from .errors import (BoundViolated, CrossMethodMismatch, DivergenceDetected, HypothesisViolation,
                     InputError, InsideTypeDisk, InsufficientTaylorData, LidstoneError,
                     NonConverged, NotEvenVanishing, NumericalError, PoleAtZeta, PoleGuard,
                     RadiusOutOfRange, TailTooLarge)
from .expansion import (CounterexampleSpec, derivative_data, exp_identity_residual,
                        expand_polynomial, generating_partial_sum, lidstone_partial_sum,
                        m0_closed, m1_closed, reconstruct, sparse_counterexample,
                        whittaker_interpolate)
from .models import (DerivativeData, EntireFunctionModel, exp_model, polynomial_model,
                     sin_kpi_model, sine_mix_model, taylor_model)
from .polynomial import RationalPolynomial, bernoulli_polynomial, poly_arithmetic

__version__ = "0.1.0"

__all__ = [
    "BoundViolated",
    "BuckExpansion",
    "ContourConfig",
    "CounterexampleSpec",
    "CrossMethodMismatch",
    "DerivativeData",
    "DivergenceDetected",
    "EntireFunctionModel",
    "HypothesisViolation",
    "InputError",
    "InsideTypeDisk",
    "InsufficientTaylorData",
    "LidstoneBasisEntry",
    "LidstoneError",
    "NonConverged",
    "NotEvenVanishing",
    "NumericalError",
    "PoleAtZeta",
    "PoleGuard",
    "RadiusOutOfRange",
    "RationalPolynomial",
    "SchoenbergResult",
    "TailTooLarge",
    "TruncationConfig",
    "basis_table",
    "bernoulli_polynomial",
    "bound_check",
    "buck_coefficients",
    "buck_expand",
    "check_integral",
    "circle_quadrature",
    "derivative_data",
    "eval_lambda0",
    "eval_lambda1",
    "exp_identity_residual",
    "exp_model",
    "expand_polynomial",
    "g_t_eval",
    "generating_partial_sum",
    "gk_kernel",
    "hk_kernel",
    "lambda0",
    "lambda1",
    "lambda_bernoulli",
    "lambda_ode",
    "lambda_recurrence",
    "lambda_t0_integral",
    "lambda_t1_integral",
    "laplace_eval",
    "lidstone",
    "lidstone_partial_sum",
    "m0_closed",
    "m1_closed",
    "poly_arithmetic",
    "polynomial_model",
    "reconstruct",
    "schoenberg_decompose",
    "sin_kpi_model",
    "sine_mix_model",
    "sparse_counterexample",
    "taylor_model",
    "whittaker_interpolate",
]
