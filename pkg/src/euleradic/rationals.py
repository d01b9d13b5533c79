"""Exact-rational text I/O and deterministic JSON serialization.

Rationals cross the text boundary as "p/q" strings so that round trips are
bit-exact; floats are printed with a fixed number of significant digits.
stable_json gives byte-identical output for equal inputs: keys are sorted
and nothing volatile (timestamps, addresses) is ever embedded.
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum
from fractions import Fraction

DEFAULT_FLOAT_DIGITS = 12


def fraction_to_text(x: Fraction) -> str:
    """Serialize a rational as "p/q", denominator always present."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def fraction_from_text(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer "p") back into a Fraction."""
    num, sep, den = text.partition("/")
    if sep:
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def float_text(x: float, digits: int = DEFAULT_FLOAT_DIGITS) -> str:
    return format(float(x), f".{digits}g")


def jsonable(obj):
    """Convert nested values to JSON-safe types; Fractions become "p/q"."""
    if isinstance(obj, Fraction):
        return fraction_to_text(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    if hasattr(obj, "tolist"):  # numpy array
        return jsonable(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def stable_json(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"
