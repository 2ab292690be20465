from fractions import Fraction

import pytest

from daggeralg.cech import DiscCover, cech_cohomology, mittag_leffler_split, on_circle
from daggeralg.errors import CompletedModeError, ContextMismatchError, UncertifiedPrecisionError
from daggeralg.laurent import TORUS, LaurentSeries
from daggeralg.series import Certificate

F = Fraction


def test_split_example():
    cover = DiscCover(5, 1)
    h = cover.section({(2,): 1, (0,): 3, (-1,): 5, (-3,): 1})
    s = mittag_leffler_split(h, cover)
    assert s.h1.terms == {(2,): 1, (0,): 3}
    assert s.h2.terms == {(-1,): -5, (-3,): -1}
    assert s.recombine() == h.terms
    assert s.h1.cert.t > 0 and s.h2.cert.t > 0


def test_split_of_zero_and_constants():
    cover = DiscCover(3, F(1, 2))
    s = mittag_leffler_split(cover.section({}), cover)
    assert not s.h1.terms and not s.h2.terms
    s = mittag_leffler_split(cover.section({(0,): 7}), cover)
    assert s.h1.terms == {(0,): 7} and not s.h2.terms


def test_inexact_sections_below_cutoff_are_refused():
    cover = DiscCover(5, 1)
    h = LaurentSeries(5, ("x",), (TORUS,), {(1,): 1}, Certificate(F(1), F(0), F(10)), center=(F(1),))
    with pytest.raises(UncertifiedPrecisionError):
        mittag_leffler_split(h, cover, cutoff=40)
    assert mittag_leffler_split(h, cover, cutoff=5).h1.terms == {(1,): 1}


def test_completed_mode():
    cover = DiscCover(5, 1, mode="completed")
    s = mittag_leffler_split(cover.section({(1,): 1, (-1,): 1}), cover)
    assert s.h1.completed and s.h1.cert.t == 0
    dagger = DiscCover(5, 1)
    tainted = LaurentSeries(5, ("x",), (TORUS,), {(1,): 1}, t=0, completed=True, center=(F(1),))
    with pytest.raises(CompletedModeError):
        mittag_leffler_split(tainted, dagger)


def test_wrong_circle():
    h = LaurentSeries(5, ("x",), (TORUS,), {(1,): 1}, t=1, center=(F(2),))
    with pytest.raises(ContextMismatchError):
        on_circle(h, DiscCover(5, 1))


def test_report():
    cover = DiscCover(7, 2)
    samples = [cover.section({(k,): k + 1 for k in range(-4, 5) if k + 1}) for _ in range(3)]
    f = cover.section({(0,): 1, (3,): 2})
    g = cover.section({(-1,): 1})
    rep = cech_cohomology(cover, samples, pairs=[(f, f), (g, g)])
    assert rep["H1"]["dimension"] == 0 and rep["H1"]["all_split"]
    assert rep["H0"]["pairs_global"] == 1
    assert rep["dagger_slopes_positive"]


def test_cover_validation():
    with pytest.raises(ValueError):
        DiscCover(5, 0)
    with pytest.raises(ValueError):
        DiscCover(5, 1, mode="rigid")
