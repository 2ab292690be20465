"""Two-chart cover of the dagger disc and its Čech complex.

The disc ``v(x) >= 0`` is covered by ``U1 = {v(x) >= s}`` and the annulus
``U2 = {0 <= v(x) <= s}``, meeting in the circle ``v(x) = s``.  Sections on
the circle are Laurent series in x whose certificate is centred at s:

    v(a_n) + n*s >= c + t*|n|.

The non-negative part then converges on a strict neighbourhood of U1 and
the negative part on a strict neighbourhood of U2, which is the whole
content of H^1 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CompletedModeError, ContextMismatchError, UncertifiedPrecisionError
from .laurent import DISC, TORUS, LaurentSeries
from .scalar import check_prime, format_rational, format_valuation, to_rational

DAGGER, COMPLETED = "dagger", "completed"


@dataclass(frozen=True)
class DiscCover:
    p: int
    split_valuation: Fraction
    mode: str = DAGGER
    var: str = "x"

    def __post_init__(self):
        check_prime(self.p)
        s = to_rational(self.split_valuation)
        if s <= 0:
            raise ValueError("split valuation must be positive")
        object.__setattr__(self, "split_valuation", s)
        if self.mode not in (DAGGER, COMPLETED):
            raise ValueError("mode must be 'dagger' or 'completed'")

    @property
    def center(self):
        return (self.split_valuation,)

    def section(self, terms, t=1):
        """An exact section on the intersection circle."""
        if self.mode == COMPLETED:
            t = 0
        return LaurentSeries(self.p, (self.var,), (TORUS,), terms, t=t, completed=self.mode == COMPLETED,
                             center=self.center)

    def to_json(self):
        return {"p": self.p, "split": format_rational(self.split_valuation), "mode": self.mode}


@dataclass(frozen=True)
class Split:
    h1: LaurentSeries
    h2: LaurentSeries

    def recombine(self):
        """Restriction difference ``h1|∩ - h2|∩``."""
        return _difference(self.h1.terms, self.h2.terms)


def _difference(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def on_circle(h: LaurentSeries, cover: DiscCover) -> LaurentSeries:
    """Read h as a section on the circle ``v(x) = s`` of the cover."""
    if h.p != cover.p or h.n != 1:
        raise ContextMismatchError("intersection sections are one-variable Laurent series over the cover's prime")
    completed = h.completed or cover.mode == COMPLETED
    if h.center == cover.center and completed == h.completed:
        return h
    if h.center not in (None, cover.center):
        raise ContextMismatchError("section is centred on a different circle")
    if h.is_exact and not completed:
        t = h.cert.t if h.cert.t > 0 else Fraction(1)
        return LaurentSeries(h.p, h.vars, (TORUS,), h.terms, t=t, center=cover.center, _trusted=True)
    if completed:
        return LaurentSeries(h.p, h.vars, (TORUS,), h.terms, t=0, M=h.cert.M, completed=True,
                             center=cover.center, _trusted=True)
    # an inexact certificate is taken to be stated on the cover's circle already
    return LaurentSeries(h.p, h.vars, (TORUS,), h.terms, h.cert, center=cover.center, _trusted=True)


def mittag_leffler_split(h: LaurentSeries, cover: DiscCover, cutoff=40) -> Split:
    """Canonical split ``h = h1 - h2`` with h1 on U1 and h2 on U2.

    h1 is the non-negative part, h2 minus the negative part.  Both inherit the
    centred certificate of h, so dagger-mode slopes stay strictly positive.
    """
    cutoff = to_rational(cutoff)
    h = on_circle(h, cover)
    if h.cert.M < cutoff:
        raise UncertifiedPrecisionError(
            f"section known only to w >= {format_valuation(h.cert.M)}, below cutoff {format_rational(cutoff)}")
    if cover.mode == DAGGER and (h.completed or h.cert.t <= 0):
        raise CompletedModeError("dagger-mode split needs a strictly positive certificate slope")
    pos, neg = h.split_signs(0)
    cert = h.cert
    h1 = LaurentSeries(h.p, h.vars, (DISC,), pos, cert, completed=h.completed, center=cover.center,
                       _trusted=True)
    h2 = LaurentSeries(h.p, h.vars, (TORUS,), {e: -c for e, c in neg.items()}, cert,
                       completed=h.completed, center=cover.center, _trusted=True)
    return Split(h1, h2)


def _is_global(f1, f2):
    """Pairs agreeing on the intersection with f1 a disc section: a global section."""
    return f1.terms == f2.terms and all(e[0] >= 0 for e in f1.terms)


def cech_cohomology(cover: DiscCover, samples=(), cutoff=40, pairs=()):
    """Report H^0 (equalizer) and an explicit H^1 = 0 witness for every sample."""
    witnesses = []
    for h in samples:
        h = on_circle(h, cover)
        split = mittag_leffler_split(h, cover, cutoff)
        witnesses.append({
            "cocycle": h.to_json(),
            "h1": split.h1.to_json(),
            "h2": split.h2.to_json(),
            "recombines": split.recombine() == h.terms,
            "slopes_positive": split.h1.cert.t > 0 and split.h2.cert.t > 0,
        })
    globals_ = [_is_global(on_circle(f1, cover), on_circle(f2, cover)) for f1, f2 in pairs]
    return {
        "cover": cover.to_json(),
        "H0": {
            "description": "pairs (f, f|U2) with f a section on the whole disc",
            "pairs_checked": len(globals_),
            "pairs_global": sum(globals_),
        },
        "H1": {
            "dimension": 0,
            "samples": len(witnesses),
            "all_split": all(w["recombines"] for w in witnesses),
            "witnesses": witnesses,
        },
        "mode": cover.mode,
        "dagger_slopes_positive": cover.mode != DAGGER or all(w["slopes_positive"] for w in witnesses),
        "cutoff": format_rational(to_rational(cutoff)),
    }
