"""Command-line interface: ``lidstone <subcommand> [options]``.

Output is JSON on stdout unless a subcommand offers another format;
diagnostics go to stderr.  Exit codes: 0 success, 2 input error, 3
numerical failure (non-convergence, divergence, bound violation), 4
hypothesis violation.  ``reproduce`` exits 1 when a criterion fails.

Defaults come from built-ins, then the JSON file named by the
``LIDSTONE_CONFIG`` environment variable, then command-line flags.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import acceptance
from .basis import METHODS, LidstoneBasisEntry, basis_table, lambda0, lambda1
from .buck import buck_expand, default_radius, schoenberg_decompose
from .contour import ContourConfig, bound_check, check_integral
from .errors import (DivergenceDetected, HypothesisViolation, InputError, LidstoneError,
                     NotEvenVanishing, NumericalError)
from .expansion import (CounterexampleSpec, derivative_data, expand_polynomial,
                        lidstone_partial_sum, sparse_counterexample, whittaker_interpolate)
from .jsonio import complex_to_json, dumps, parse_complex, rational_to_json
from .models import (DerivativeData, EntireFunctionModel, exp_model, polynomial_model,
                     sin_kpi_model, sine_mix_model, taylor_model)
from .polynomial import RationalPolynomial

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_HYPOTHESIS = 4

DEFAULTS = {"t_max": 60, "nodes": 256, "tol": 1e-9}
CONFIG_ENV = "LIDSTONE_CONFIG"


# -- configuration -------------------------------------------------------------------


def load_config(environ=None) -> dict:
    """Built-in defaults overlaid with the file named by ``LIDSTONE_CONFIG``."""
    environ = os.environ if environ is None else environ
    cfg = dict(DEFAULTS)
    path = environ.get(CONFIG_ENV)
    if not path:
        return cfg
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {CONFIG_ENV} file {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{CONFIG_ENV} file must hold a JSON object")
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        raise InputError(f"unknown configuration keys: {', '.join(unknown)}")
    cfg.update(data)
    return cfg


def _resolve(args, cfg: dict, key: str):
    value = getattr(args, key, None)
    return cfg[key] if value is None else value


# -- function specs ------------------------------------------------------------------


def _complex_entry(v) -> complex:
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    if isinstance(v, str):
        return parse_complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"bad numeric entry {v!r}")
    return complex(v)


def _parse_poly(text: str) -> RationalPolynomial:
    try:
        return RationalPolynomial.from_json_obj(json.loads(text))
    except (json.JSONDecodeError, TypeError):
        pass
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad polynomial JSON: {exc}") from exc
    expr = text.strip()
    if expr.startswith("{") and expr.endswith("}"):
        expr = expr[1:-1]
    try:
        return RationalPolynomial.parse(expr)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _from_object(obj) -> EntireFunctionModel:
    if isinstance(obj, str):
        return parse_function_spec(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("function file must hold a spec string or an object with 'kind'")
    kind = obj["kind"]
    if kind == "exp":
        return exp_model(_complex_entry(obj.get("zeta", 1)))
    if kind in ("sin_kpi", "sin-pi"):
        return sin_kpi_model(_positive_int(obj.get("k", 1), "k"))
    if kind == "poly":
        return polynomial_model(_parse_poly(json.dumps(obj.get("coeffs", obj.get("poly")))))
    if kind == "sine_mix":
        terms = obj.get("terms", [])
        return sine_mix_model([(_positive_int(k, "k"), _complex_entry(c)) for k, c in terms])
    if kind == "taylor":
        return _taylor(obj)
    raise InputError(f"unknown function kind {kind!r}")


def _positive_int(v, name) -> int:
    try:
        k = int(v)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} must be an integer, got {v!r}") from exc
    if k < 1 or (isinstance(v, float) and v != k):
        raise InputError(f"{name} must be a positive integer, got {v!r}")
    return k


def _taylor(obj) -> EntireFunctionModel:
    if isinstance(obj, list):
        derivs, tau = obj, None
    elif isinstance(obj, dict):
        derivs, tau = obj.get("derivs"), obj.get("type")
    else:
        raise InputError("taylor data must be a list or an object with 'derivs'")
    if not isinstance(derivs, list) or not derivs:
        raise InputError("taylor data needs a nonempty derivative list")
    return taylor_model([_complex_entry(v) for v in derivs],
                        None if tau is None else float(tau))


def parse_function_spec(spec: str) -> EntireFunctionModel:
    """Build a model from ``exp:ζ``, ``sin-pi``, ``sin_kpi:k``, ``poly:<json|expr>``,
    ``sine_mix:k:c,k:c``, ``taylor:<json>`` or ``@file.json``."""
    spec = spec.strip()
    try:
        if spec.startswith("@"):
            try:
                obj = json.loads(Path(spec[1:]).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read function file {spec[1:]!r}: {exc}") from exc
            return _from_object(obj)
        kind, _, rest = spec.partition(":")
        if kind == "sin-pi" and not rest:
            return sin_kpi_model(1)
        if kind == "exp":
            return exp_model(parse_complex(rest))
        if kind == "sin_kpi":
            return sin_kpi_model(_positive_int(rest, "k"))
        if kind == "poly":
            return polynomial_model(_parse_poly(rest))
        if kind == "sine_mix":
            terms = []
            for item in rest.split(","):
                k, sep, c = item.partition(":")
                if not sep:
                    raise InputError(f"sine_mix terms look like k:c, got {item!r}")
                terms.append((_positive_int(k, "k"), parse_complex(c)))
            return sine_mix_model(terms)
        if kind == "taylor":
            return _taylor(json.loads(rest))
    except InputError:
        raise
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad function spec {spec!r}: {exc}") from exc
    raise InputError(f"unknown function spec {spec!r}")


def _parse_sequence(text: str):
    """Derivative data from JSON: a list indexed by t/2 or an object keyed by t."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad derivative JSON: {exc}") from exc
    if isinstance(obj, list):
        return [_complex_entry(v) for v in obj]
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            try:
                t = int(k)
            except ValueError as exc:
                raise InputError(f"derivative keys must be even integers, got {k!r}") from exc
            if t < 0 or t % 2:
                raise InputError(f"derivative keys must be even integers, got {k!r}")
            out[t] = _complex_entry(v)
        return out
    raise InputError("derivative data must be a JSON list or object")


def _parse_z(text: str) -> complex:
    try:
        z = parse_complex(text)
    except ValueError as exc:
        raise InputError(f"bad complex number {text!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError("z must be finite")
    return z


def _even(v: int, name: str) -> int:
    if v < 0 or v % 2:
        raise InputError(f"{name} must be an even nonnegative integer, got {v}")
    return v


# -- payload helpers ---------------------------------------------------------------


def _data_json(data: DerivativeData) -> dict:
    def enc(v):
        return rational_to_json(v) if isinstance(v, (int, Fraction)) else complex_to_json(v)

    return {
        "t_max": data.t_max,
        "a": {str(t): enc(data.a_at(t)) for t in range(0, data.t_max + 1, 2)},
        "b": {str(t): enc(data.b_at(t)) for t in range(0, data.t_max + 1, 2)},
    }


def _emit(obj, out) -> None:
    out.write(dumps(obj) + "\n")


def basis_latex(T: int) -> list[str]:
    lines = []
    for t in range(0, T + 1, 2):
        for i, p in ((1, lambda1(t)), (0, lambda1(t).reflect())):
            c, q = p.content_form()
            expanded = p.to_latex()
            if abs(c) == 1:
                rhs = expanded
            else:
                frac = (f"\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}" if c.denominator != 1
                        else str(abs(c.numerator)))
                sign = "-" if c < 0 else ""
                rhs = f"{expanded} = {sign}{frac}\\left({q.to_latex()}\\right)"
            lines.append(f"\\Lambda_{{{t},{i}}}(z) = {rhs} \\\\")
    return lines


# -- subcommands ----------------------------------------------------------------------


def cmd_basis(args, cfg, out):
    T = _even(_resolve(args, cfg, "t_max"), "--max-t")
    if args.method == "all":
        table = basis_table(T)
    else:
        table = [LidstoneBasisEntry(t, lambda1(t, args.method), lambda0(t, args.method),
                                    args.method) for t in range(0, T + 1, 2)]
    if args.format == "latex":
        out.write("\n".join(basis_latex(T)) + "\n")
    elif args.format == "csv":
        out.write("t,polynomial,power,numerator,denominator\n")
        for e in table:
            for name, p in (("lambda1", e.lambda1), ("lambda0", e.lambda0)):
                for n, c in enumerate(p.coeffs):
                    if c:
                        out.write(f"{e.t},{name},{n},{c.numerator},{c.denominator}\n")
    else:
        _emit({"max_t": T, "method": table[0].method if table else args.method,
               "entries": [{"t": e.t, "lambda1": e.lambda1.to_json_obj(),
                            "lambda0": e.lambda0.to_json_obj(),
                            "lambda1_str": str(e.lambda1), "lambda0_str": str(e.lambda0)}
                           for e in table]}, out)
    return EXIT_OK


def cmd_expand(args, cfg, out):
    f = parse_function_spec(args.function)
    z = None if args.z is None else _parse_z(args.z)
    if f.is_polynomial:
        res = expand_polynomial(f.polynomial)
        payload = {"function": f.name, "polynomial": str(res.polynomial),
                   "data": _data_json(res.data), "reconstruction": str(res.reconstruction),
                   "reconstruction_json": res.reconstruction.to_json_obj(), "exact": res.exact}
        if z is not None:
            payload["value"] = complex(res.reconstruction.evaluate(z))
        _emit(payload, out)
        return EXIT_OK
    tau = f.type_bound()
    if tau >= math.pi:
        raise HypothesisViolation(
            f"type {tau:.6g} is not below π, so the expansion need not converge (try 'buck')"
        )
    T = _even(_resolve(args, cfg, "t_max"), "--max-t")
    data = derivative_data(f, T)
    payload = {"function": f.name, "type": tau, "max_t": T, "data": _data_json(data)}
    if z is not None:
        value = complex(lidstone_partial_sum(data, z, T))
        direct = complex(f(z))
        payload.update(value=value, direct=direct, abs_error=abs(value - direct))
    _emit(payload, out)
    return EXIT_OK


def cmd_interpolate(args, cfg, out):
    a, b = _parse_sequence(args.a), _parse_sequence(args.b)
    z = _parse_z(args.z)
    T = args.t_max
    tol = _resolve(args, cfg, "tol")
    try:
        res = whittaker_interpolate(a, b, z, T, tol=tol, strict=not args.no_strict)
        code = EXIT_OK
    except DivergenceDetected as exc:
        res = exc.result
        print(f"lidstone: {exc}", file=sys.stderr)
        code = EXIT_NUMERICAL
    _emit({"value": res.value, "convergence_report": res.report.to_json_obj()}, out)
    return code


def cmd_check_integral(args, cfg, out):
    z = _parse_z(args.z)
    nodes = _resolve(args, cfg, "nodes")
    rows = []
    for which in ((1, 0) if args.which == "both" else (int(args.which),)):
        c = check_integral(_even(args.t, "--t"), z, args.K, nodes, which)
        rows.append({"t": c.t, "z": z, "K": c.K, "which": which, "exact": c.exact,
                     "quadrature": c.quadrature, "abs_error": c.abs_error})
    _emit(rows[0] if len(rows) == 1 else rows, out)
    return EXIT_OK


def cmd_check_bounds(args, cfg, out):
    rep = bound_check(_even(args.t, "--t"), args.r, args.samples, args.seed,
                      raise_on_violation=False)
    _emit({"t": rep.t, "r": rep.r, "samples": rep.samples, "ok": rep.ok,
           "min_slack": rep.min_slack, "worst_point": rep.worst_point}, out)
    if not rep.ok:
        print("lidstone: bound violated", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_buck(args, cfg, out):
    f = parse_function_spec(args.function)
    z = _parse_z(args.z)
    tau = f.type_bound()
    K = args.K if args.K is not None else max(1, math.floor(tau / math.pi))
    if K < 1:
        raise InputError("--K must be at least 1")
    T = _even(_resolve(args, cfg, "t_max"), "--max-t")
    nodes = _resolve(args, cfg, "nodes")
    radius = default_radius(tau, K) if args.r is None else args.r
    cfg_c = ContourConfig(radius, nodes)
    res = buck_expand(f, K, z, T, cfg_c)
    _emit({"function": f.name, "K": K, "radius": res.contour.radius, "max_t": T,
           "C": res.C, "value": res.value, "direct": res.direct, "residual": res.residual,
           "tail_estimate": res.tail_estimate}, out)
    return EXIT_OK


def _violation_json(v):
    return {"t": v["t"], "point": v["point"], "value": v["value"], "bound": v["bound"]}


def cmd_schoenberg(args, cfg, out):
    f = parse_function_spec(args.function)
    tol = _resolve(args, cfg, "tol")
    try:
        res = schoenberg_decompose(f, _even(args.t_check, "--t-check"), tol)
    except NotEvenVanishing as exc:
        _emit({"function": f.name, "K": None, "C": [], "residual": None,
               "violations": [_violation_json(v) for v in exc.violations]}, out)
        raise
    _emit({"function": f.name, "K": res.K, "C": res.C, "residual": res.residual,
           "relative_residual": res.relative_residual, "type_estimate": res.type_estimate,
           "violations": []}, out)
    return EXIT_OK


def _parse_indices(text: str):
    pairs = []
    for item in text.split(","):
        t, sep, i = item.strip().partition(":")
        if not sep:
            raise InputError(f"indices look like t:i, got {item!r}")
        try:
            pairs.append((int(t), int(i)))
        except ValueError as exc:
            raise InputError(f"bad index pair {item!r}") from exc
    return tuple(pairs)


def cmd_counterexample(args, cfg, out):
    ce = sparse_counterexample(CounterexampleSpec(_parse_indices(args.indices), args.M))
    _emit({"polynomial": str(ce.polynomial), "polynomial_json": ce.polynomial.to_json_obj(),
           "terms": [{"t": m.t, "i": m.i, "degree": m.degree, "c": m.c, "u": m.u}
                     for m in ce.terms],
           "report": {"ok": ce.report.ok, "checked": ce.report.checked,
                      "failures": [{"t": t, "i": i, "value": v, "expected": w}
                                   for t, i, v, w in ce.report.failures]}}, out)
    return EXIT_OK


def cmd_reproduce(args, cfg, out):
    results = acceptance.run_all()
    if args.format == "json":
        _emit({"passed": all(r.passed for r in results),
               "criteria": [r.to_json_obj() for r in results]}, out)
    else:
        for r in results:
            out.write(r.line() + "\n")
        n = sum(r.passed for r in results)
        out.write(f"{n}/{len(results)} criteria passed\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lidstone",
                                description="Lidstone bases, expansions and kernel checks.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("basis", help="table of basis polynomials")
    s.add_argument("--max-t", dest="t_max", type=int)
    s.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    s.add_argument("--method", choices=("all",) + METHODS, default="all",
                   help="generator; 'all' cross-checks the three")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("expand", help="expand a function in the basis")
    s.add_argument("--function", required=True)
    s.add_argument("--z")
    s.add_argument("--max-t", dest="t_max", type=int)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("interpolate", help="solve the two-point interpolation problem")
    s.add_argument("--a", required=True, help="JSON derivatives at 0")
    s.add_argument("--b", required=True, help="JSON derivatives at 1")
    s.add_argument("--z", required=True)
    s.add_argument("--max-t", dest="t_max", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--no-strict", action="store_true",
                   help="report divergence in the payload instead of failing")
    s.set_defaults(func=cmd_interpolate)

    s = sub.add_parser("check-integral", help="compare integral formulas with exact values")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--z", required=True)
    s.add_argument("--K", type=int, default=1)
    s.add_argument("--nodes", type=int)
    s.add_argument("--which", choices=("0", "1", "both"), default="1")
    s.set_defaults(func=cmd_check_integral)

    s = sub.add_parser("check-bounds", help="sample the sup-norm bounds")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check_bounds)

    s = sub.add_parser("buck", help="kernel expansion with sine correction")
    s.add_argument("--function", required=True)
    s.add_argument("--K", type=int)
    s.add_argument("--r", type=float)
    s.add_argument("--z", required=True)
    s.add_argument("--max-t", dest="t_max", type=int)
    s.add_argument("--nodes", type=int)
    s.set_defaults(func=cmd_buck)

    s = sub.add_parser("schoenberg", help="sine decomposition")
    s.add_argument("--function", required=True)
    s.add_argument("--tol", type=float)
    s.add_argument("--t-check", dest="t_check", type=int, default=20)
    s.set_defaults(func=cmd_schoenberg)

    s = sub.add_parser("counterexample", help="sparse vanishing-condition polynomial")
    s.add_argument("--indices", required=True, help="comma list of t:i, e.g. 2:1,4:1")
    s.add_argument("--M", type=int)
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("reproduce", help="run every acceptance criterion")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = load_config()
        return args.func(args, cfg, out)
    except HypothesisViolation as exc:
        print(f"lidstone: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NumericalError as exc:
        print(f"lidstone: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, ValueError) as exc:
        print(f"lidstone: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LidstoneError, AssertionError) as exc:
        print(f"lidstone: check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(run())
