"""
Input validators and sanitizers.

Key principles:
- Vectors arriving from text are parsed exactly (integers or p/q rationals)
- Shape and domain violations are reported with the engine's error classes
"""

import re
from fractions import Fraction
from typing import Sequence, Tuple

from app.utils.errors import InputFormatError, PreconditionError

_RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/\d+)?$')


def parse_rational(token: str) -> Fraction:
    """Parse one integer or p/q token; decimals and floats are rejected."""
    token = token.strip()
    if not _RATIONAL_PATTERN.match(token):
        raise InputFormatError(f"not an exact rational: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError as e:
        raise InputFormatError(f"zero denominator: {token!r}") from e


def parse_rational_vector(text: str) -> Tuple[Fraction, ...]:
    """
    Parse a comma-separated rational vector such as "1,-1/2,3".

    Returns:
        Tuple of Fractions
    """
    if text is None or not text.strip():
        raise InputFormatError("empty vector")
    return tuple(parse_rational(token) for token in text.split(","))


def parse_dim_vector(text: str) -> Tuple[int, ...]:
    """Parse a comma-separated vector of non-negative integers."""
    entries = parse_rational_vector(text)
    if any(e.denominator != 1 for e in entries):
        raise InputFormatError(f"dimension vector must be integral: {text!r}")
    vector = tuple(int(e) for e in entries)
    if any(e < 0 for e in vector):
        raise InputFormatError(f"dimension vector must be non-negative: {text!r}")
    return vector


def require_length(vector: Sequence, n: int, name: str = "vector") -> None:
    if len(vector) != n:
        raise PreconditionError(f"{name} has length {len(vector)}, expected {n}")


def require_dim_vector(d: Sequence[int], n: int, nonzero: bool = True) -> Tuple[int, ...]:
    """Validate a dimension vector for a quiver with n vertices."""
    require_length(d, n, "dimension vector")
    d = tuple(int(x) for x in d)
    if any(x < 0 for x in d):
        raise PreconditionError(f"dimension vector has negative entries: {list(d)}")
    if nonzero and not any(d):
        raise PreconditionError("dimension vector must be nonzero")
    return d


def require_positive(value: int, name: str) -> int:
    if value < 1:
        raise PreconditionError(f"{name} must be a positive integer, got {value}")
    return value


def as_weight(theta: Sequence, n: int) -> Tuple[Fraction, ...]:
    """Validate and convert a stability parameter to exact rationals."""
    require_length(theta, n, "weight")
    out = []
    for x in theta:
        if isinstance(x, float):
            raise PreconditionError("weights must be exact rationals, not floats")
        out.append(Fraction(x))
    return tuple(out)
