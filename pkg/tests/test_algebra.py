import random
from fractions import Fraction

import pytest

from daggeralg import _terms as T
from daggeralg.algebra import (
    complete_presentation,
    element,
    free,
    hyperelliptic,
    lift,
    localize,
    presentation_from_json,
    principal,
    quotient_norm,
    reduce,
    sublevel,
    torus,
    transport,
)
from daggeralg.errors import ContextMismatchError, UnsupportedLocalizationError
from daggeralg.scalar import INF
from daggeralg.series import OSeries

F = Fraction


@pytest.fixture
def A():
    return principal(OSeries.polynomial(5, ("Y",), {(2,): 1, (0,): -5}), 0)


def test_reduce_generator_is_zero(A):
    assert not reduce(A.generators[0], A).normal_form.terms


def test_quotient_norm_examples(A):
    a = reduce(OSeries.polynomial(5, ("Y",), {(3,): 1}), A)
    assert a.normal_form.terms == {(1,): 5}
    assert quotient_norm(a, 0) == 1
    assert quotient_norm(reduce(OSeries.zero(5, ("Y",)), A), 0) == INF
    W = free(5, ("X",))
    x = OSeries.polynomial(5, ("X",), {(1,): 5, (3,): -1}, t=F(1, 2))
    assert quotient_norm(reduce(x, W), F(1, 2)) == x.gauss_valuation(F(1, 2))
    assert A.exactness_grade == "exact" and torus(5).exactness_grade == "upper-bound"


def test_hyperelliptic_rewrite():
    H = hyperelliptic(7, [1, 0, 0, 1])
    a = reduce(OSeries.polynomial(7, ("x", "y"), {(0, 3): 1}), H)
    assert a.normal_form.terms == {(0, 1): 1, (3, 1): 1}


def test_hyperelliptic_validation():
    with pytest.raises(ValueError):
        hyperelliptic(7, [1, 0, 1])          # even degree
    with pytest.raises(ValueError):
        hyperelliptic(2, [1, 0, 0, 1])
    with pytest.raises(ValueError):
        hyperelliptic(5, [0, 0, 0, 1])       # x^3 has a triple root


def test_torus_relation():
    P = torus(5)
    x = OSeries.polynomial(5, P.vars, {(3, 1): 1})
    assert reduce(x, P).normal_form.terms == {(2,): 1}
    y = OSeries.polynomial(5, P.vars, {(0, 2): 3, (1, 0): 1})
    assert reduce(y, P).normal_form.terms == {(-2,): 3, (1,): 1}


def test_reduce_is_idempotent_and_a_ring_map():
    rng = random.Random(7)
    H = hyperelliptic(7, [1, 0, 0, 1])
    A = principal(OSeries.polynomial(5, ("Y",), {(2,): 1, (0,): -5}), 0)
    for P in (H, A, torus(5)):
        for _ in range(10):
            terms = lambda: {tuple(rng.randint(0, 4) for _ in P.vars): F(rng.randint(-9, 9)) for _ in range(4)}
            x = OSeries.polynomial(P.p, P.vars, terms(), t=P.t)
            z = OSeries.polynomial(P.p, P.vars, terms(), t=P.t)
            rx, rz = reduce(x, P), reduce(z, P)
            assert reduce(lift(rx), P).normal_form.terms == rx.normal_form.terms
            lhs = reduce(x * z, P).normal_form.terms
            rhs = reduce(lift(rx) * lift(rz), P).normal_form.terms
            assert T.gauss(T.add(lhs, rhs, -1), P.p, 0) >= 40


def test_localization_examples():
    W = free(5, ("x",))
    L = localize(W, "x", "inverse")
    assert L.family == "torus" and L.vars == ("x", "x_inv")
    assert localize(L, "x", "inverse") == L
    S = localize(W, "x", "sub-level", bound=1)
    assert S.vars == ("x", "u") and S.generators[0].terms == {(0, 1): 5, (1, 0): -1}
    moved = transport(element(W, {(2,): 1}), S)
    assert moved.normal_form.terms == {(2,): 25}
    with pytest.raises(UnsupportedLocalizationError):
        localize(free(5, ("x", "y")), "x", "inverse")
    with pytest.raises(UnsupportedLocalizationError):
        sublevel(5, 0)


def test_completion():
    P = torus(5)
    C = complete_presentation(P)
    assert C.completed and complete_presentation(C) is C
    a = reduce(OSeries.polynomial(5, P.vars, {(1, 0): 1}), C)
    assert a.completed and a.normal_form.cert.t == 0
    assert complete_presentation(free(5, ("x",))).working_slope == 0


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        reduce(OSeries.polynomial(5, ("Z",), {(1,): 1}), torus(5))


def test_presentation_json_round_trip():
    for P in (free(5, ("x", "y")), torus(3), hyperelliptic(7, [1, 0, 0, 1]), sublevel(5, 2),
              principal(OSeries.polynomial(5, ("Y",), {(2,): 1, (0,): -5}), 0),
              complete_presentation(torus(5))):
        assert presentation_from_json(P.to_json()) == P
