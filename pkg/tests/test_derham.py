import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from daggeralg.algebra import complete_presentation, free, hyperelliptic, product, torus
from daggeralg.derham import (
    antiderivative,
    cohomology,
    completed_contrast,
    d,
    form,
    function,
    hyperelliptic_form,
    kunneth,
    one_form,
    reduce_in_cohomology,
)
from daggeralg.errors import CompletedModeError, UncertifiedPrecisionError, UncertifiedRadiusError
from daggeralg.laurent import DISC, TORUS, LaurentSeries
from daggeralg.oracles import hyperelliptic_reduction_oracle
from daggeralg.series import Certificate

F = Fraction


def _random_laurent(rng, m, lo=-3, hi=3):
    return {tuple(rng.randint(lo, hi) for _ in range(m)): F(rng.randint(-9, 9), rng.randint(1, 4))
            for _ in range(rng.randint(1, 5))}


def test_d_on_functions():
    P = torus(5)
    w = d(function(P, {(3,): 1, (-2,): 2}))
    assert w.components[(0,)].terms == {(2,): 3, (-3,): -4}


def test_d_squared_vanishes_on_a_two_torus():
    P = product(5, ("x", "y"), (TORUS, TORUS))
    rng = random.Random(3)
    for _ in range(20):
        f = function(P, _random_laurent(rng, 2))
        assert d(d(f)).is_zero()
        w = form(P, 1, {(0,): _random_laurent(rng, 2), (1,): _random_laurent(rng, 2)})
        assert d(d(w)).is_zero()


def test_antiderivative_example():
    P = free(5, ("T",), 1)
    F_ = antiderivative(one_form(P, {(4,): 1}), F(1, 2))
    assert F_.normal_form.terms == {(5,): F(1, 5)}
    assert d(function(free(5, ("T",), F(1, 2)), F_.normal_form.terms)).components[(0,)].terms == {(4,): 1}


def test_antiderivative_certificate_loses_at_most_the_scan():
    f = LaurentSeries(3, ("T",), (DISC,), {(n,): F(3) ** n for n in range(9)}, Certificate(F(1), F(0), F(20)),
                      _trusted=True)
    G = antiderivative(f, F(1, 2)).normal_form
    assert G.cert.t == F(1, 2) and G.cert.M >= 20 - F(1, 2) - 1
    with pytest.raises(UncertifiedRadiusError):
        antiderivative(f, 1)


def test_antiderivative_refuses_completed_forms():
    Pc = complete_presentation(free(2, ("T",)))
    with pytest.raises(CompletedModeError):
        antiderivative(one_form(Pc, {(1,): 1}), F(1, 2))


def test_torus_reduction():
    P = torus(5)
    w = one_form(P, {(-1,): 3, (4,): 1, (-5,): 2})
    rep, exact = reduce_in_cohomology(w, P)
    assert rep.components[(0,)].terms == {(-1,): 3}
    assert exact.normal_form.terms == {(5,): F(1, 5), (-4,): F(-1, 2)}


def test_reduction_is_idempotent_and_rejects_non_closed():
    P = product(5, ("x", "y"), (TORUS, DISC))
    basis = cohomology(P).degrees[1].basis
    for b in basis:
        assert reduce_in_cohomology(b, P).representative.same_terms(b)
    with pytest.raises(ValueError):
        reduce_in_cohomology(form(P, 1, {(0,): {(0, 1): 1}}), P)


def test_inexact_below_cutoff():
    P = torus(5)
    c = LaurentSeries(5, ("x",), (TORUS,), {(1,): 1}, Certificate(F(1), F(-1), F(10)))
    with pytest.raises(UncertifiedPrecisionError):
        reduce_in_cohomology(one_form(P, c), P, 40)


def test_cohomology_dimensions():
    assert cohomology(free(5, ("x", "y"))).dims == (1, 0, 0)
    assert cohomology(torus(5)).dims == (1, 1)
    assert cohomology(product(5, ("x", "y"), (TORUS, TORUS))).dims == (1, 2, 1)
    assert cohomology(hyperelliptic(7, [1, 0, 0, 1])).dims == (1, 2)
    assert cohomology(hyperelliptic(7, [1, 2, 0, 0, 0, 1])).dims == (1, 4)
    with pytest.raises(CompletedModeError):
        cohomology(complete_presentation(torus(5)))


def test_hyperelliptic_example():
    H = hyperelliptic(7, [1, 0, 0, 1])
    red = reduce_in_cohomology(hyperelliptic_form(H, [0, 0, 0, 1]), H)
    assert red.representative.components[(0,)].terms == {(0, 0): F(-2, 5)}
    red = reduce_in_cohomology(hyperelliptic_form(H, plus=[0, 2]), H)
    assert red.representative.is_zero()
    assert red.exact_part.normal_form.terms == {(2, 0): 1}


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=9), st.sampled_from([[1, 0, 0, 1], [0, 1, 0, 1], [1, 2, 0, 0, 0, 1]]))
def test_hyperelliptic_matches_oracle(coeffs, Q):
    H = hyperelliptic(7, Q)
    red = reduce_in_cohomology(hyperelliptic_form(H, coeffs), H)
    got = red.representative.components.get((0,))
    got = got.terms if got is not None else {}
    expected = hyperelliptic_reduction_oracle(Q, coeffs)
    assert [got.get((i, 0), 0) for i in range(len(expected))] == expected


def test_kunneth():
    rep = kunneth(torus(5), torus(5))
    assert rep["predicted"] == rep["computed"] == [1, 2, 1] and rep["match"]
    rep = kunneth(free(5, ("x",)), torus(5))
    assert rep["computed"] == [1, 1, 0]


def test_contrast():
    rep = completed_contrast(2, 4)
    assert rep["best_fit_slopes"] == ["1", "1/2", "1/4", "1/8", "1/16"]
    assert rep["monotone_to_zero"] and rep["contrast"]
    assert rep["completed_antiderivative"] == "rejected (uncertified-mode)"
    assert rep["dagger_witness"]["integrates"]
    flat = completed_contrast(2, 0)
    assert flat["best_fit_slopes"] == ["1"] and not flat["contrast"]
