import random
from fractions import Fraction

import pytest

from daggeralg.algebra import torus
from daggeralg.derham import d, function, one_form
from daggeralg.duality import LaurentTail, pairing_gram, poincare_check, residue_pair, torus_pair
from daggeralg.errors import ContextMismatchError, SchemaError
from daggeralg.scalar import INF
from daggeralg.series import Certificate, OSeries

F = Fraction


def test_residue_pair_example():
    b = OSeries.polynomial(5, ("T",), {(0,): 2, (1,): 3, (4,): 1})
    a = LaurentTail(5, ("T",), {(-1,): 1, (-2,): 5, (-7,): 1}, 1)
    pr = residue_pair(b, a)
    assert pr.value == 2 * 1 + 3 * 5
    assert pr.omitted_bound == INF


def test_constant_function_sees_only_the_residue():
    b = OSeries.constant(3, ("T",), 4)
    rng = random.Random(1)
    for _ in range(20):
        terms = {(-rng.randint(2, 9),): F(rng.randint(1, 9)) for _ in range(3)}
        assert residue_pair(b, LaurentTail(3, ("T",), terms, 1)).value == 0


def test_bilinearity():
    rng = random.Random(2)
    vars = ("T1", "T2")
    for _ in range(20):
        b1 = OSeries.polynomial(5, vars, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5)})
        b2 = OSeries.polynomial(5, vars, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5)})
        a = LaurentTail(5, vars, {(-rng.randint(1, 4), -rng.randint(1, 4)): rng.randint(1, 5) for _ in range(4)}, 1)
        assert residue_pair(b1 + b2, a).value == residue_pair(b1, a).value + residue_pair(b2, a).value


def test_omitted_bound_for_truncated_inputs():
    b = OSeries(5, ("T",), {(0,): 1}, Certificate(F(0), F(0), F(12)))
    a = LaurentTail(5, ("T",), {(-1,): 1}, 1)
    assert residue_pair(b, a).omitted_bound == 12  # M_b + c_a + u*m with c_a = -1


def test_tail_validation_and_json():
    with pytest.raises(ValueError):
        LaurentTail(5, ("T",), {(0,): 1}, 1)
    with pytest.raises(ValueError):
        LaurentTail(5, ("T",), {(-1,): 1}, 0)
    a = LaurentTail(5, ("T",), {(-3,): 25}, F(1, 2))
    back = LaurentTail.from_json(a.to_json())
    assert back.terms == a.terms and back.u == a.u and back.c == a.c
    with pytest.raises(SchemaError):
        LaurentTail.from_json({"p": 5})
    with pytest.raises(ContextMismatchError):
        residue_pair(OSeries.constant(3, ("T",), 1), a)


@pytest.mark.parametrize("K,m", [(1, 1), (3, 1), (2, 2), (2, 3)])
def test_gram_is_identity(K, m):
    assert pairing_gram(K, m).is_identity


def test_torus_pairing_integration_by_parts():
    P = torus(5)
    rng = random.Random(4)
    for _ in range(30):
        Fs = {(rng.randint(-5, 5),): F(rng.randint(1, 9)) for _ in range(3)}
        phi = {(rng.randint(-3, 3),): F(rng.randint(1, 9))}
        dphi = {(n - 1,): c * n for (n,), c in phi.items() if n}
        assert torus_pair(phi, d(function(P, Fs))) == -torus_pair(dphi, one_form(P, Fs))
    assert torus_pair({(0,): 1}, one_form(P, {(-1,): 1})) == 1


def test_poincare_report():
    rep = poincare_check(torus(5))
    assert rep["pairing_H1"] == [["1"]] and rep["nondegenerate"]
    assert rep["exactness_annihilation"]["all_zero"]
