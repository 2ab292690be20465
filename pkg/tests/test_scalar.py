from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from daggeralg.scalar import (
    INF,
    check_prime,
    format_rational,
    format_valuation,
    is_prime,
    parse_valuation,
    scalar_arith,
    to_rational,
    to_slope,
    valuation,
    vp_int,
)


@pytest.mark.parametrize("x, p, expected", [
    (0, 5, INF),
    (Fraction(50, 3), 5, 2),
    (Fraction(3, 8), 2, -3),
    (1, 7, 0),
])
def test_valuation_examples(x, p, expected):
    assert valuation(x, p) == expected


def test_ultrametric_and_multiplicative_examples():
    assert scalar_arith(1, 0, "add") == 1
    assert valuation(scalar_arith(5, 20, "add"), 5) == 2
    assert valuation(scalar_arith(Fraction(1, 3), 9, "mul"), 3) == 1


rationals = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


@given(rationals, rationals, st.sampled_from([2, 3, 5, 7]))
def test_valuation_is_additive_and_ultrametric(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
    assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))


def test_vp_int_and_primes():
    assert vp_int(250, 5) == 3
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        check_prime(4)


def test_parsing_refuses_floats_and_decimals():
    assert to_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(TypeError):
        to_rational(0.5)
    for bad in ("0.5", "1e3", "x"):
        with pytest.raises(ValueError):
            to_rational(bad)


def test_formatting_round_trip():
    for x in (Fraction(-3, 2), Fraction(7), Fraction(0)):
        assert to_rational(format_rational(x)) == x
    assert format_valuation(INF) == "inf"
    assert parse_valuation("inf") == INF
    with pytest.raises(ValueError):
        to_slope("-1/2")
