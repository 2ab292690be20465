"""Sparse exact polynomial kernel on ``dict[tuple[int, ...], Fraction]``.

Exponents may be negative (Laurent use); ``weight`` is always the sum of
absolute values, so Gauss valuations treat both tails alike.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .scalar import INF, valuation

Terms = dict


def weight(e) -> int:
    return sum(abs(i) for i in e)


def prune(terms: Terms) -> Terms:
    return {e: c for e, c in terms.items() if c != 0}


def add(a: Terms, b: Terms, scale=1) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def scale(a: Terms, s) -> Terms:
    s = Fraction(s)
    if s == 0:
        return {}
    return {e: c * s for e, c in a.items()}


def shift(a: Terms, by) -> Terms:
    return {tuple(x + y for x, y in zip(e, by)): c for e, c in a.items()}


def mul(a: Terms, b: Terms) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return prune(out)


def term_w(e, c, p, t):
    return valuation(c, p) - t * weight(e)


def gauss(terms: Terms, p: int, t) -> Fraction | float:
    """min over terms of v(a) - t|e|; ``inf`` for no terms."""
    best = INF
    for e, c in terms.items():
        w = valuation(c, p) - t * weight(e)
        if w < best:
            best = w
    return best


def split_by_w(terms: Terms, p: int, t, level):
    """(terms with w < level, min w among the dropped ones)."""
    kept, dropped = {}, INF
    for e, c in terms.items():
        w = valuation(c, p) - t * weight(e)
        if w < level:
            kept[e] = c
        elif w < dropped:
            dropped = w
    return kept, dropped


def split_by_weight(terms: Terms, cap: int):
    kept, dropped = {}, {}
    for e, c in terms.items():
        (kept if weight(e) <= cap else dropped)[e] = c
    return kept, dropped


def sorted_items(terms: Terms):
    return sorted(terms.items())


def round_coefficient(c: Fraction, p: int, N: int) -> Fraction:
    """A small rational c' with v(c - c') >= N (c itself when it is already small)."""
    if c == 0:
        return c
    num, den = c.numerator, c.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    k = N - v
    if k <= 0:
        return Fraction(0)
    mod = p ** k
    if abs(num) < mod and den < mod:
        return c
    m = (num * pow(den, -1, mod)) % mod
    if 2 * m > mod:
        m -= mod
    return Fraction(m) * Fraction(p) ** v


def round_terms(terms: Terms, p: int, t, level):
    """Round each coefficient so the change has t-valuation >= level.

    Returns (rounded terms, min valuation of the changes).
    """
    out, change = {}, INF
    for e, c in terms.items():
        N = math.ceil(level + t * weight(e))
        c2 = round_coefficient(c, p, N)
        if c2 != c:
            change = min(change, valuation(c - c2, p) - t * weight(e))
        if c2:
            out[e] = c2
    return out, change
