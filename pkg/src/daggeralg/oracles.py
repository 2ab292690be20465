"""Independent reference computations used to cross-check the main build.

These deliberately avoid the package's own algorithms: the hyperelliptic
oracle solves one sympy linear system instead of eliminating top-down, and
the Gauss valuation oracle works on sympy polynomials.
"""
from __future__ import annotations

from fractions import Fraction

import sympy


def _vp(x: sympy.Rational, p: int):
    if x == 0:
        return sympy.oo
    return sympy.multiplicity(p, x.p) - sympy.multiplicity(p, x.q)


def gauss_valuation_oracle(terms, p, t):
    """``min v_p(a) - t*|e|`` through sympy rationals."""
    t = sympy.Rational(t.numerator, t.denominator) if isinstance(t, Fraction) else sympy.Rational(t)
    best = sympy.oo
    for e, c in terms.items():
        c = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Rational(c)
        if c == 0:
            continue
        best = sympy.Min(best, _vp(c, p) - t * sum(e))
    return best if best == sympy.oo else Fraction(int(best.p), int(best.q))


def hyperelliptic_reduction_oracle(Q, minus):
    """Coordinates of ``A(x) dx/y`` on ``x**i dx/y`` (``i < deg Q - 1``).

    ``Q`` and ``minus`` are low-to-high coefficient lists.  Solves
    ``A = sum_s c_s (s x^{s-1} Q + x^s Q'/2) + sum_i r_i x^i`` in one shot.
    """
    x = sympy.Symbol("x")
    Qx = sum(sympy.Rational(str(c)) * x ** i for i, c in enumerate(Q))
    Ax = sum(sympy.Rational(str(c)) * x ** i for i, c in enumerate(minus))
    d = sympy.degree(Qx, x)
    top = max(sympy.degree(Ax, x) if Ax != 0 else 0, d - 2)
    n_c = max(top - d + 2, 0)
    cs = sympy.symbols(f"c0:{n_c}") if n_c else ()
    rs = sympy.symbols(f"r0:{d - 1}")
    expr = Ax
    for s, c in enumerate(cs):
        expr -= c * (s * x ** (s - 1) * Qx + x ** s * sympy.diff(Qx, x) / 2) if s else c * sympy.diff(Qx, x) / 2
    expr -= sum(r * x ** i for i, r in enumerate(rs))
    eqs = sympy.Poly(sympy.expand(expr), x).all_coeffs() if sympy.expand(expr) != 0 else []
    sol = sympy.solve(eqs, list(cs) + list(rs), dict=True)
    if len(sol) != 1:
        raise ArithmeticError("oracle system is not uniquely solvable")
    sol = sol[0]
    out = []
    for r in rs:
        v = sympy.Rational(sol.get(r, 0))
        out.append(Fraction(int(v.p), int(v.q)))
    return out
