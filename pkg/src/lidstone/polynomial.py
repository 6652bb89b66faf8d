"""Exact univariate polynomials over the rationals, and Bernoulli polynomials.

Coefficients are stored as :class:`fractions.Fraction` in ascending degree.
Instances are immutable and hashable; every operation returns a new
polynomial in canonical form (no trailing zero coefficients).
"""

from __future__ import annotations

import functools
import json
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class RationalPolynomial:
    """Polynomial ``c[0] + c[1] z + ... + c[d] z**d`` with rational coefficients."""

    __slots__ = ("_coeffs", "_floats")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)
        self._floats = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "RationalPolynomial":
        return cls((1,))

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "RationalPolynomial":
        if n < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls([0] * n + [c])

    @classmethod
    def z(cls) -> "RationalPolynomial":
        return cls((0, 1))

    # -- basic accessors ----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def l1_norm(self) -> Fraction:
        """Sum of the absolute values of the coefficients."""
        return sum((abs(c) for c in self._coeffs), Fraction(0))

    def is_odd(self) -> bool:
        return all(c == 0 for c in self._coeffs[0::2])

    def is_even(self) -> bool:
        return all(c == 0 for c in self._coeffs[1::2])

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _to_fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = RationalPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "RationalPolynomial":
        c = _to_fraction(c)
        if c == 0:
            return RationalPolynomial()
        return RationalPolynomial(c * a for a in self._coeffs)

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        """Return ``self(inner(z))`` (Horner in polynomial arithmetic)."""
        inner = _coerce(inner)
        result = RationalPolynomial()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    def shift(self, h: Scalar) -> "RationalPolynomial":
        """Return ``self(z + h)``."""
        return self.compose(RationalPolynomial((h, 1)))

    def reflect(self) -> "RationalPolynomial":
        """Return ``self(1 - z)``."""
        return self.compose(RationalPolynomial((1, -1)))

    def differentiate(self, k: int = 1) -> "RationalPolynomial":
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        cs = self._coeffs
        if k == 0:
            return self
        if k > len(cs) - 1:
            return RationalPolynomial()
        out = []
        for n in range(k, len(cs)):
            falling = 1
            for j in range(n - k + 1, n + 1):
                falling *= j
            out.append(cs[n] * falling)
        return RationalPolynomial(out)

    def antiderivative(self) -> "RationalPolynomial":
        """Antiderivative with zero constant term."""
        return RationalPolynomial(
            [0] + [c / (n + 1) for n, c in enumerate(self._coeffs)]
        )

    def integrate(self, lo: Scalar = 0, hi: Scalar = 1) -> Fraction:
        prim = self.antiderivative()
        return prim.evaluate(_to_fraction(hi)) - prim.evaluate(_to_fraction(lo))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z):
        """Horner evaluation.

        Exact for ``int``/``Fraction`` arguments; for ``float``/``complex``
        the coefficients are rounded once to double precision.  NumPy arrays
        are evaluated elementwise in floating point.
        """
        if isinstance(z, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * z + c
            return acc
        acc = 0.0 * z
        for c in self.float_coeffs()[::-1]:
            acc = acc * z + c
        return acc

    __call__ = evaluate

    def float_coeffs(self) -> tuple[float, ...]:
        if self._floats is None:
            self._floats = tuple(float(c) for c in self._coeffs)
        return self._floats

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return "RationalPolynomial([{}])".format(
            ", ".join(f"'{c}'" if c.denominator != 1 else str(c) for c in self._coeffs)
        )

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "z") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for n in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[n]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                mono = var if n == 1 else f"{var}^{n}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_latex(self, var: str = "z") -> str:
        if not self._coeffs:
            return "0"
        out = ""
        for n in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[n]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if n == 0 else (var if n == 1 else f"{var}^{{{n}}}")
            if mag.denominator == 1:
                num = "" if (mag == 1 and mono) else str(mag.numerator)
                body = f"{num}{mono}"
            else:
                top = "" if mag.numerator == 1 and mono else str(mag.numerator)
                body = f"\\frac{{{top or 1}}}{{{mag.denominator}}}{mono}"
            if not out:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def content_form(self) -> tuple[Fraction, "RationalPolynomial"]:
        """Split as ``c · q`` with ``q`` integral, primitive and positive-leading."""
        if not self._coeffs:
            return Fraction(0), RationalPolynomial()
        den = 1
        for c in self._coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self._coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), RationalPolynomial([v // g for v in ints])

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"coeffs": [[str(c.numerator), str(c.denominator)] for c in self._coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "RationalPolynomial":
        """Decode ``{"coeffs": [["num", "den"], ...]}``.

        Also accepts a bare list whose entries are integers, rational
        strings such as ``"-7/360"`` or ``[num, den]`` pairs.
        """
        if isinstance(obj, dict):
            if "coeffs" not in obj:
                raise ValueError("polynomial JSON needs a 'coeffs' field")
            entries = obj["coeffs"]
        else:
            entries = obj
        if not isinstance(entries, list):
            raise ValueError("polynomial coefficients must be a list")
        cs = []
        for e in entries:
            if isinstance(e, (list, tuple)):
                if len(e) != 2:
                    raise ValueError(f"bad rational pair {e!r}")
                den = int(e[1])
                if den == 0:
                    raise ValueError("zero denominator")
                cs.append(Fraction(int(e[0]), den))
            elif isinstance(e, bool):
                raise ValueError(f"bad coefficient {e!r}")
            elif isinstance(e, int):
                cs.append(Fraction(e))
            elif isinstance(e, str):
                cs.append(Fraction(e))
            else:
                raise ValueError(f"coefficients must be exact, got {e!r}")
        return cls(cs)

    @classmethod
    def from_json(cls, text: str) -> "RationalPolynomial":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def parse(cls, text: str, var: str = "z") -> "RationalPolynomial":
        """Read a sum of terms such as ``"1/6*z^3 - 1/6*z"`` or ``"3z^2+1"``.

        Coefficients may be integers, fractions ``a/b`` or decimals; the
        output of :meth:`to_str` always parses back to the same polynomial.
        """
        if re.search(r"[\d.]\s+[\d.]", text):
            raise ValueError(f"cannot parse polynomial {text!r}")
        src = re.sub(r"\s+", "", text)
        if not src:
            raise ValueError("empty polynomial expression")
        pos, out = 0, cls()
        while pos < len(src):
            m = _TERM.match(src, pos)
            if not m or m.end() == pos or (pos and not m.group("sign")):
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign, coef, mono, power = m.group("sign", "coef", "mono", "power")
            if coef is None and mono is None:
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            if mono is not None and mono[0] != var:
                raise ValueError(f"unknown variable in {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            n = 0 if mono is None else int(power or 1)
            out = out + cls.monomial(n, -c if sign == "-" else c)
            pos = m.end()
        return out


_TERM = re.compile(
    r"(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d*)?(?:/\d+)?)?\*?(?P<mono>[a-zA-Z](?:\^(?P<power>\d+))?)?"
)


def _coerce(x):
    if isinstance(x, RationalPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalPolynomial((x,))
    return NotImplemented


def poly_arithmetic(a: RationalPolynomial, b, op: str) -> RationalPolynomial:
    """Dispatch ``add``, ``sub``, ``mul``, ``scale`` or ``compose``.

    For ``scale`` the second argument is the rational factor.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def differentiate(p: RationalPolynomial, k: int = 1) -> RationalPolynomial:
    return p.differentiate(k)


def evaluate(p: RationalPolynomial, z):
    return p.evaluate(z)


@functools.lru_cache(maxsize=None)
def bernoulli_polynomial(n: int) -> RationalPolynomial:
    """Bernoulli polynomial ``B_n``.

    Built from ``B_0 = 1`` by ``B_n' = n B_{n-1}``, the constant of
    integration fixed so that ``B_n`` has zero mean on ``[0, 1]``.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n == 0:
        return RationalPolynomial.one()
    prim = bernoulli_polynomial(n - 1).antiderivative().scale(n)
    return prim - prim.integrate(0, 1)
