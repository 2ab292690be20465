import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from daggeralg import _terms as T
from daggeralg.acceptance import distinguished_terms, random_poly_terms
from daggeralg.errors import NotDistinguishedError, UncertifiedPrecisionError
from daggeralg.scalar import INF
from daggeralg.series import Certificate, OSeries
from daggeralg.weierstrass import (
    distinguishing_automorphism,
    is_distinguished,
    weierstrass_divide,
    weierstrass_prepare,
)

F = Fraction


def Y(terms, p=5, t=0):
    return OSeries.polynomial(p, ("Y",), {(k,): c for k, c in terms.items()}, t=t)


def test_distinguished_examples():
    r = is_distinguished(Y({1: 1}))
    assert r.degree == 1 and r.margin == INF
    assert is_distinguished(Y({2: 1, 0: -5})).degree == 2
    r = is_distinguished(Y({2: 5, 1: 1}))
    assert r.degree == 1 and r.margin == 1


def test_not_distinguished_reports_a_witness():
    g = OSeries.polynomial(5, ("X", "Y"), {(1, 1): 1})
    r = is_distinguished(g)
    assert not r and r.witness == 1
    with pytest.raises(NotDistinguishedError):
        weierstrass_divide(g, g)


@pytest.mark.parametrize("schedule", ["euclid", "step"])
def test_division_example(schedule):
    res = weierstrass_divide(Y({3: 1}), Y({2: 1, 0: -5}), 0, 0, 40, schedule)
    assert res.quotient.terms == {(1,): 1}
    assert res.remainder.terms == {(1,): 5}
    assert res.residual_valuation == INF


def test_division_trivial_cases():
    g = Y({2: 1, 0: -5})
    res = weierstrass_divide(g, g)
    assert res.quotient.terms == {(0,): 1} and not res.remainder.terms
    f = Y({1: 7, 0: 2})
    res = weierstrass_divide(f, g)
    assert not res.quotient.terms and res.remainder.terms == f.terms


def test_division_with_overconvergent_tail_is_certified():
    g = Y({2: 1, 0: -5, 3: 5}, t=0)
    f = Y({5: 1, 0: 1}, t=0)
    res = weierstrass_divide(f, g, 0, 0, 30)
    check = f - g * res.quotient - res.remainder
    assert res.residual_valuation >= 30
    assert T.gauss(check.terms, 5, 0) >= 30
    assert res.remainder.degree_in(0) < 2


def test_truncated_inputs_below_cutoff_raise():
    f = OSeries(5, ("Y",), {(3,): 1}, Certificate(F(0), F(0), F(10)))
    with pytest.raises(UncertifiedPrecisionError):
        weierstrass_divide(f, Y({2: 1, 0: -5}), 0, 0, 40)


def test_preparation_examples():
    g = Y({2: 1, 0: -5})
    prep = weierstrass_prepare(g, 0, 0, 40)
    assert prep.weierstrass_poly.terms == g.terms and prep.unit.terms == {(0,): 1}
    prep = weierstrass_prepare(Y({1: 3}), 0, 0, 40)
    assert prep.weierstrass_poly.terms == {(1,): 1} and prep.unit.terms == {(0,): 3}
    for t in (F(0), F(1, 2)):
        g = Y({1: 1, 0: -5}, t=t) * Y({0: 1, 1: 5}, t=t)
        prep = weierstrass_prepare(g, 0, t, 40)
        assert prep.weierstrass_poly.terms == {(1,): 1, (0,): -5}
        assert prep.unit.terms == {(0,): 1, (1,): 5}


def test_distinguishing_automorphism_examples():
    f = OSeries.polynomial(5, ("X1", "X2"), {(1, 1): 1})
    shifts, image, report = distinguishing_automorphism(f, 0)
    assert shifts == [1]
    assert image.terms == {(1, 1): 1, (0, 2): 1} and report.degree == 2
    g = Y({0: 5, 1: 1})
    shifts, image, report = distinguishing_automorphism(g, 0)
    assert shifts == [] and image is g and report.degree == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F(0), F(1, 2), F(1)]), st.integers(1, 3), st.integers(1, 3))
def test_division_identity_and_schedule_independence(seed, t, n, k):
    rng = random.Random(seed)
    p = rng.choice((2, 3, 5))
    names = tuple(f"X{i}" for i in range(n - 1)) + ("Y",)
    g = OSeries(p, names, distinguished_terms(rng, p, n, k, t, degree=5, margin=rng.randint(3, 8)), t=t)
    f = OSeries(p, names, random_poly_terms(rng, p, n, 5, rng.randint(1, 5)), t=t)
    a = weierstrass_divide(f, g, n - 1, t, 25, "euclid")
    b = weierstrass_divide(f, g, n - 1, t, 25, "step")
    assert T.gauss((f - g * a.quotient - a.remainder).terms, p, t) >= 25
    assert a.remainder.degree_in(n - 1) < k
    assert T.gauss(T.add(a.remainder.terms, b.remainder.terms, -1), p, t) >= 25
    # certificates of the outputs are honest on stored terms
    OSeries(p, names, a.remainder.terms, a.remainder.cert)
    OSeries(p, names, a.quotient.terms, a.quotient.cert)
