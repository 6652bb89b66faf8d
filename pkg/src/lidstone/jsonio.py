"""Deterministic JSON output.

Floats are written with 17 significant digits, rationals as decimal
strings, complex numbers as ``{"re": ..., "im": ...}``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def rational_to_json(q) -> list[str]:
    q = Fraction(q)
    return [str(q.numerator), str(q.denominator)]


def _float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} in output")
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    return "".join(_encode(obj, indent, 0))


def _encode(obj, indent, level):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        yield json.dumps(obj)
    elif isinstance(obj, (int, np.integer)):
        yield str(int(obj))
    elif isinstance(obj, (float, np.floating)):
        yield _float(float(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        yield from _encode(complex_to_json(obj), indent, level)
    elif isinstance(obj, Fraction):
        yield json.dumps(rational_to_json(obj))
    elif isinstance(obj, str):
        yield json.dumps(obj, ensure_ascii=False)
    elif isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{"
        for n, (k, v) in enumerate(obj.items()):
            yield ("," if n else "") + pad + json.dumps(str(k), ensure_ascii=False) + ": "
            yield from _encode(v, indent, level + 1)
        yield end + "}"
    elif isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            yield "[]"
            return
        yield "["
        for n, v in enumerate(obj):
            yield ("," if n else "") + pad
            yield from _encode(v, indent, level + 1)
        yield end + "]"
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"``, ``"re"`` or a Python complex literal such as ``"1.5j"``."""
    text = text.strip()
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(text.replace("i", "j"))
