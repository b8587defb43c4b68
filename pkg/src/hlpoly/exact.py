"""Exact rational scalars: parsing and rendering, signed integer powers,
factorials, and reduction modulo a prime.

`fractions.Fraction` is the value type throughout the package. It already
maintains the invariants everything else relies on: arbitrary-precision
integers, positive denominator, and numerator/denominator kept coprime.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "NonreducibleDenominatorError",
    "ResidueModP",
    "SingularParameterError",
    "factorial",
    "format_rational",
    "is_prime",
    "mod_reduce",
    "parse_rational",
    "pow_rat",
    "rational_from_json",
    "rational_to_json",
]


class SingularParameterError(ValueError):
    """alpha*m + a vanishes at some index m of the requested range."""


class NonreducibleDenominatorError(ArithmeticError):
    """A rational has no residue mod p because p divides its denominator.

    This is a first-class outcome, not a bug: a congruence probed at such a
    value is simply not evaluable there, and callers report that fact.
    """

    def __init__(self, value: Fraction, modulus: int):
        self.value = value
        self.modulus = modulus
        super().__init__(
            f"{format_rational(value)} has no residue mod {modulus}: "
            f"denominator {value.denominator} is divisible by {modulus}"
        )


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9][0-9]*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a plain integer literal; denominator must be positive."""
    if not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def format_rational(value: Fraction | int) -> str:
    """Render as "p/q", omitting "/q" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_to_json(value: Fraction | int) -> dict[str, str]:
    """Numerator/denominator as decimal strings, safe for any precision."""
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def pow_rat(base: Fraction | int, k: int) -> Fraction:
    """base**k for any integer k, with base**0 == 1.

    Zero base rejects negative exponents explicitly instead of surfacing a
    bare division error from deep inside a summation.
    """
    base = Fraction(base)
    if k < 0 and base == 0:
        raise ZeroDivisionError("cannot raise 0 to a negative power")
    return base**k


def factorial(n: int) -> int:
    return math.factorial(n)


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for desk-scale moduli (< 2**16)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class ResidueModP:
    """An element of Z/pZ for prime p, stored as its canonical representative."""

    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.value < self.modulus:
            raise ValueError(
                f"residue {self.value} out of range for modulus {self.modulus}"
            )

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def mod_reduce(value: Fraction | int, p: int) -> ResidueModP:
    """Reduce num/den to (num * den^-1) mod p.

    Raises NonreducibleDenominatorError when p divides the denominator; the
    caller decides what that means (for identity audits it marks the point
    UNDEFINED rather than passing or failing).
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    value = Fraction(value)
    if value.denominator % p == 0:
        raise NonreducibleDenominatorError(value, p)
    inv = pow(value.denominator % p, -1, p)
    return ResidueModP((value.numerator * inv) % p, p)
