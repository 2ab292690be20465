"""Frozen hand-derived values for the independent oracles."""
from fractions import Fraction

from daggeralg.oracles import gauss_valuation_oracle, hyperelliptic_reduction_oracle
from daggeralg.scalar import INF

F = Fraction


def test_gauss_oracle_frozen_values():
    # 5 - X^2 at t = 1/2 on Z_5: min(1, 0 - 1) = -1
    assert gauss_valuation_oracle({(0,): 5, (2,): -1}, 5, F(1, 2)) == -1
    # 1/4 * X*Y at t = 1 over Z_2: -2 - 2 = -4
    assert gauss_valuation_oracle({(1, 1): F(1, 4)}, 2, 1) == -4
    assert gauss_valuation_oracle({}, 3, 0) == INF


def test_hyperelliptic_oracle_frozen_values():
    # y^2 = x^3 + 1: x^3 dx/y = d(x y) * 2/5 - (2/5) dx/y
    assert hyperelliptic_reduction_oracle([1, 0, 0, 1], [0, 0, 0, 1]) == [F(-2, 5), 0]
    # x^2 dx/y = (2/3) d(y)
    assert hyperelliptic_reduction_oracle([1, 0, 0, 1], [0, 0, 1]) == [0, 0]
    assert hyperelliptic_reduction_oracle([1, 0, 0, 1], [3, 4]) == [3, 4]
