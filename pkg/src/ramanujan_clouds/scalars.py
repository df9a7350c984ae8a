"""Numeric tower shared by every module.

Values are exact (``int`` or ``Fraction``) as long as every input is exact and
become ``complex`` as soon as one input is a float. Comparisons are exact
equality between exact values and tolerance-based otherwise.
"""

from fractions import Fraction
from typing import TypeGuard

from ramanujan_clouds.exceptions import SpecParseError

Exact = int | Fraction
Scalar = int | Fraction | float | complex


def is_exact(value: Scalar) -> TypeGuard[Exact]:
    """Return True for ``int`` and ``Fraction`` values."""
    return isinstance(value, int | Fraction)


def all_exact(*values: Scalar) -> bool:
    """Return True when every value is exact."""
    return all(is_exact(v) for v in values)


def is_zero(value: Scalar, tol: float) -> bool:
    """Test ``value == 0`` exactly or within ``tol``."""
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


def scalars_equal(x: Scalar, y: Scalar, tol: float) -> bool:
    """Test ``x == y`` exactly when both are exact, else within ``tol``."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(complex(x) - complex(y)) <= tol


def divide(numerator: Scalar, denominator: Scalar) -> Scalar:
    """Divide, staying in ``Fraction`` when both operands are exact."""
    if is_exact(numerator) and is_exact(denominator):
        return Fraction(numerator) / Fraction(denominator)
    return complex(numerator) / complex(denominator)


def normalize(value: Scalar) -> Scalar:
    """Collapse integral fractions to ``int`` and floats to ``complex``."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        return complex(value)
    return value


def magnitude(value: Scalar) -> float:
    """Absolute value as a float."""
    return float(abs(value))


def parse_component(raw: float | int | str, *, exact: bool, location: str) -> Scalar:
    """Parse one real component of a ``[re, im]`` pair.

    Strings such as ``"1/3"`` are read as rationals. In exact mode floats are
    converted through their shortest decimal representation.
    """
    try:
        if isinstance(raw, str):
            value = Fraction(raw.strip())
            return value if exact else float(value)
        if isinstance(raw, bool):
            raise SpecParseError("booleans are not numbers", location=location)
        if exact:
            return Fraction(raw) if isinstance(raw, int) else Fraction(str(raw))
        return float(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise SpecParseError(f"invalid number {raw!r}: {e}", location=location) from e


def parse_pair(pair: tuple[float | int | str, float | int | str], *, exact: bool, location: str) -> Scalar:
    """Parse a ``[re, im]`` pair into a scalar of the requested regime."""
    re = parse_component(pair[0], exact=exact, location=location)
    im = parse_component(pair[1], exact=exact, location=location)
    if is_exact(re) and is_exact(im):
        if im != 0:
            # Exact complex numbers are not representable, fall back to float.
            return complex(float(re), float(im))
        return normalize(re)
    return complex(float(re), float(im))


def encode_scalar(value: Scalar) -> list[float | str]:
    """Encode a scalar as a JSON ``[re, im]`` pair.

    Exact values are written as rational strings so that no precision is lost.
    """
    if is_exact(value):
        return [str(normalize(value)), "0"]
    z = complex(value)
    return [z.real, z.imag]
