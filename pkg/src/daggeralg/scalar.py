"""Exact rationals with a p-adic valuation.

Scalars are plain :class:`fractions.Fraction` values; the prime lives in the
surrounding context (a series, a presentation), never on the scalar.
Valuations are returned as ``Fraction`` or ``math.inf`` so that both compare
and add naturally.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

Valuation = Union[Fraction, float]
RationalLike = Union[int, str, Fraction]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")
    return p


def vp_int(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x, p: int) -> Valuation:
    """v_p(x) for a rational x; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(vp_int(x.numerator, p) - vp_int(x.denominator, p))


def scalar_arith(x, y, op: str):
    """Exact ``add``/``sub``/``mul``/``div``; the result is already in lowest terms."""
    x, y = Fraction(x), Fraction(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("division by the zero scalar")
        return x / y
    raise ValueError(f"unknown scalar operation {op!r}")


def to_rational(value: RationalLike) -> Fraction:
    """Parse ``"3/25"``, ``"-7"``, ints or Fractions. Floats are refused."""
    if isinstance(value, float) or isinstance(value, bool):
        raise TypeError("floating point values are not accepted; use exact rationals")
    if isinstance(value, str):
        value = value.strip()
        if not value or any(c in value for c in ".eE"):
            raise ValueError(f"not an exact rational string: {value!r}")
    return Fraction(value)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_valuation(value) -> Valuation:
    if value == "inf" or value == INF:
        return INF
    return to_rational(value)


def format_valuation(v) -> str:
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return format_rational(v)


def to_slope(t) -> Fraction:
    """A radius in log form: rho = p**t with t a non-negative rational."""
    t = to_rational(t)
    if t < 0:
        raise ValueError(f"slope must be >= 0, got {format_rational(t)}")
    return t
