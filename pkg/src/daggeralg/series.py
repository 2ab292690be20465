"""Overconvergent power series with growth certificates.

An :class:`OSeries` stores finitely many terms of a series in
``k[[X_1..X_n]]`` (k = Q with v_p) together with a :class:`Certificate`
``(t, c, M)`` asserting, for the true element f that the stored terms
approximate,

* every coefficient satisfies ``v(a_nu) >= c + t*|nu|`` (so f lies in the
  Tate algebra of radius ``p**t``), and
* ``f - stored`` has ``t``-Gauss valuation ``>= M`` (``M = inf``: exact).

Radii are kept in log form ``rho = p**t`` so every norm is an exact rational.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _terms as T
from .errors import (
    CompletedModeError,
    ContextMismatchError,
    NotPowerBoundedError,
    SchemaError,
    UncertifiedPrecisionWarning,
    UncertifiedRadiusError,
)
from .scalar import (
    INF,
    check_prime,
    format_rational,
    format_valuation,
    parse_valuation,
    to_rational,
    to_slope,
    valuation,
)


@dataclass(frozen=True)
class Certificate:
    t: Fraction
    c: Fraction | float
    M: Fraction | float = INF

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("certificate slope must be >= 0")
        if self.M < self.c:
            raise ValueError("certificate truncation level M must be >= offset c")

    def to_json(self):
        return {"t": format_rational(self.t), "c": format_valuation(self.c), "M": format_valuation(self.M)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(to_slope(data["t"]), parse_valuation(data["c"]), parse_valuation(data.get("M", "inf")))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad certificate block: {exc}") from exc


def _check_terms(terms, n):
    out = {}
    for e, c in terms.items():
        e = tuple(int(i) for i in e)
        if len(e) != n or any(i < 0 for i in e):
            raise ValueError(f"exponent {e} is not a non-negative index of length {n}")
        c = to_rational(c)
        if c:
            out[e] = out.get(e, 0) + c
    return T.prune(out)


class OSeries:
    """A finitely stored element of ``T_n(p**t)`` with its certificate.

    Values are immutable; treat ``terms`` as read-only.
    """

    __slots__ = ("p", "vars", "terms", "cert", "completed")

    def __init__(self, p, vars, terms=None, cert=None, *, t=0, M=INF, completed=False, _trusted=False):
        self.p = check_prime(p) if not _trusted else p
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
        else:
            if len(set(self.vars)) != len(self.vars):
                raise ValueError("variable names must be distinct")
            self.terms = _check_terms(terms or {}, len(self.vars))
        if cert is None:
            t = to_slope(t)
            c = min(T.gauss(self.terms, self.p, t), M)
            cert = Certificate(t, c, M)
        elif not _trusted:
            for e, a in self.terms.items():
                if valuation(a, self.p) < cert.c + cert.t * T.weight(e):
                    raise ValueError(f"stored term {e} violates the certificate bound")
        self.cert = cert
        self.completed = bool(completed)

    # construction helpers -------------------------------------------------
    @classmethod
    def polynomial(cls, p, vars, terms, t=0):
        """An exactly known polynomial certified at slope ``t`` (tightest offset)."""
        return cls(p, vars, terms, t=t)

    @classmethod
    def zero(cls, p, vars, t=0):
        return cls(p, vars, {}, t=t)

    @classmethod
    def constant(cls, p, vars, value, t=0):
        return cls(p, vars, {(0,) * len(vars): value}, t=t)

    @classmethod
    def variable(cls, p, vars, i, t=0):
        e = [0] * len(vars)
        e[i] = 1
        return cls(p, vars, {tuple(e): 1}, t=t)

    def _new(self, terms, cert, completed=None):
        return OSeries(self.p, self.vars, terms, cert,
                       completed=self.completed if completed is None else completed, _trusted=True)

    # basic properties -----------------------------------------------------
    @property
    def n(self):
        return len(self.vars)

    @property
    def is_exact(self):
        return self.cert.M == INF

    def is_zero(self):
        return not self.terms and self.is_exact

    def total_degree(self):
        return max((T.weight(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        return max((e[var] for e in self.terms), default=-1)

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*{e}" for e, c in T.sorted_items(self.terms)) or "0"
        return f"OSeries(p={self.p}, vars={self.vars}, {body}, cert={self.cert}{', completed' if self.completed else ''})"

    def __eq__(self, other):
        if not isinstance(other, OSeries):
            return NotImplemented
        return (self.p, self.vars, self.terms, self.cert, self.completed) == (
            other.p, other.vars, other.terms, other.cert, other.completed)

    __hash__ = None

    def same_terms(self, other):
        return self.terms == other.terms

    # norms ------------------------------------------------------------------
    def gauss_valuation(self, t):
        """``min_nu v(a_nu) - t*|nu|`` over stored terms (``inf`` for zero).

        Exact polynomials may be evaluated at any slope; otherwise ``t`` must
        not exceed the certificate slope.  A warning is issued when the
        minimum reaches the truncation level, since the unstored part could
        then lower it.
        """
        t = to_slope(t)
        if t > self.cert.t and (self.completed or not self.is_exact):
            raise UncertifiedRadiusError(
                f"slope {format_rational(t)} exceeds certified slope {format_rational(self.cert.t)}")
        w = T.gauss(self.terms, self.p, t)
        if w >= self.cert.M and self.cert.M != INF:
            warnings.warn(
                f"Gauss valuation {format_valuation(w)} reaches truncation level {format_valuation(self.cert.M)}",
                UncertifiedPrecisionWarning, stacklevel=2)
        return w

    def certified_gauss_valuation(self, t):
        """Lower bound for the true element: ``min(stored minimum, M)``."""
        t = to_slope(t)
        if t > self.cert.t and (self.completed or not self.is_exact):
            raise UncertifiedRadiusError("slope exceeds the certificate")
        return min(T.gauss(self.terms, self.p, t), self.cert.M)

    # certificate manipulation ------------------------------------------------
    def with_slope(self, t):
        """Re-certify at slope ``t``.

        Lowering the slope is always sound.  Raising it is only possible for
        exact, non-completed polynomials.
        """
        t = to_slope(t)
        if t <= self.cert.t:
            c = self.cert.c
            if self.is_exact:
                c = T.gauss(self.terms, self.p, t)
            return self._new(self.terms, Certificate(t, c, self.cert.M))
        if self.completed:
            raise CompletedModeError("a completed value cannot be re-certified at a positive slope")
        if not self.is_exact:
            raise UncertifiedRadiusError("only exact polynomials can be certified at a larger slope")
        return self._new(self.terms, Certificate(t, T.gauss(self.terms, self.p, t), INF))

    def tighten(self):
        """Replace the offset by ``min(stored minimum, M)`` when that is larger."""
        c = min(T.gauss(self.terms, self.p, self.cert.t), self.cert.M)
        if c <= self.cert.c:
            return self
        return self._new(self.terms, Certificate(self.cert.t, c, self.cert.M))

    def truncate(self, degree):
        """Drop terms of total degree > ``degree``; the dropped part lowers M."""
        kept, dropped = T.split_by_weight(self.terms, degree)
        if not dropped:
            return self
        M = min(self.cert.M, T.gauss(dropped, self.p, self.cert.t))
        return self._new(kept, Certificate(self.cert.t, min(self.cert.c, M), M))

    def drop_above(self, level):
        """Drop terms whose t-valuation is ``>= level`` into the truncation error."""
        kept, dropped = T.split_by_w(self.terms, self.p, self.cert.t, level)
        if dropped == INF:
            return self
        M = min(self.cert.M, dropped)
        return self._new(kept, Certificate(self.cert.t, min(self.cert.c, M), M))

    def complete(self):
        """Forget overconvergence: slope 0, marked completed, terms unchanged."""
        M = self.cert.M
        c = min(T.gauss(self.terms, self.p, 0), M)
        return self._new(self.terms, Certificate(Fraction(0), c, M), completed=True)

    def require_overconvergent(self, what="operation"):
        if self.completed or self.cert.t <= 0:
            raise CompletedModeError(f"{what} needs a strictly overconvergent input (slope > 0)")

    # arithmetic ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, OSeries):
            if other.p != self.p or other.vars != self.vars:
                raise ContextMismatchError(
                    f"context ({self.p}, {self.vars}) does not match ({other.p}, {other.vars})")
            return other
        if isinstance(other, (int, Fraction)):
            return OSeries.constant(self.p, self.vars, other, t=self.cert.t)
        return None

    def _combine_add(self, g, sign):
        t = min(self.cert.t, g.cert.t)
        terms = T.add(self.terms, g.terms, sign)
        c = min(self.cert.c, g.cert.c)
        M = min(self.cert.M, g.cert.M)
        completed = self.completed or g.completed
        if completed:
            t = Fraction(0)
        return self._new(terms, Certificate(t, c, M), completed)

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self._combine_add(g, 1)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self._combine_add(g, -1)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g._combine_add(self, -1)

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()}, self.cert)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        t = min(self.cert.t, g.cert.t)
        terms = T.mul(self.terms, g.terms)
        c = self.cert.c + g.cert.c
        M = min(self.cert.M + g.cert.c, g.cert.M + self.cert.c)
        completed = self.completed or g.completed
        if completed:
            t = Fraction(0)
        return self._new(terms, Certificate(t, min(c, M), M), completed)

    __rmul__ = __mul__

    def scale(self, s):
        s = Fraction(s)
        if s == 0:
            return self._new({}, Certificate(self.cert.t, INF, INF))
        vs = valuation(s, self.p)
        return self._new(T.scale(self.terms, s), Certificate(self.cert.t, self.cert.c + vs, self.cert.M + vs))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = OSeries.constant(self.p, self.vars, 1, t=self.cert.t)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def series_arith(self, other, op):
        if op == "add":
            return self + other
        if op == "sub":
            return self - other
        if op == "mul":
            return self * other
        raise ValueError(f"unknown series operation {op!r}")

    # structure -------------------------------------------------------------------
    def coefficients_in(self, var):
        """``{m: g_m}`` with ``self = sum g_m * X_var**m``; each g_m keeps all variables."""
        groups = {}
        for e, c in self.terms.items():
            m = e[var]
            e0 = e[:var] + (0,) + e[var + 1:]
            groups.setdefault(m, {})[e0] = c
        return {m: self._new(terms, Certificate(self.cert.t, min(self.cert.c, T.gauss(terms, self.p, self.cert.t)),
                                                self.cert.M))
                for m, terms in groups.items()}

    def derivative(self, var):
        terms = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = e[:var] + (e[var] - 1,) + e[var + 1:]
                terms[e2] = c * e[var]
        t = self.cert.t
        # v(m a_m) >= c + t*m = (c + t) + t*(m - 1)
        cert = Certificate(t, self.cert.c + t, self.cert.M + t)
        return self._new(terms, cert)

    # serialization -----------------------------------------------------------------
    def to_json(self):
        data = {
            "p": self.p,
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": format_rational(c)} for e, c in T.sorted_items(self.terms)],
            "cert": self.cert.to_json(),
        }
        if self.completed:
            data["completed"] = True
        return data

    @classmethod
    def from_json(cls, data):
        try:
            p = data["p"]
            vars = data["vars"]
            terms = {}
            for item in data["terms"]:
                e = tuple(item["e"])
                if e in terms:
                    raise SchemaError(f"duplicate exponent {list(e)}")
                terms[e] = to_rational(item["c"])
            completed = bool(data.get("completed", False))
            if "cert" in data:
                cert = Certificate.from_json(data["cert"])
                return cls(p, vars, terms, cert, completed=completed)
            return cls(p, vars, terms, t=0, completed=completed)
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad series JSON: {exc}") from exc


def check_series(f, *, p=None, n=None) -> OSeries:
    """Validation helper for user-facing entry points."""
    if not isinstance(f, OSeries):
        raise TypeError(f"expected an OSeries, got {type(f).__name__}")
    if p is not None and f.p != p:
        raise ContextMismatchError(f"series prime {f.p} differs from {p}")
    if n is not None and f.n != n:
        raise ContextMismatchError(f"series has {f.n} variables, expected {n}")
    return f


def gauss_valuation(f: OSeries, t):
    return f.gauss_valuation(t)


def series_arith(f: OSeries, g: OSeries, op: str) -> OSeries:
    return f.series_arith(g, op)


def complete(f: OSeries) -> OSeries:
    return f.complete()


def _max_power_bounded_slope(g: OSeries, upto):
    """Largest s <= upto with w_s(g) >= 0 for an exact polynomial, or None."""
    s = Fraction(upto)
    for e, c in g.terms.items():
        v = valuation(c, g.p)
        d = T.weight(e)
        if d == 0:
            if v < 0:
                return None
        else:
            s = min(s, v / d)
    return s if s >= 0 else None


def _prepare_image(g: OSeries):
    if g.cert.c >= 0:
        return g
    if g.is_exact and not g.completed:
        s = _max_power_bounded_slope(g, g.cert.t)
        if s is not None:
            return g.with_slope(s)
    raise NotPowerBoundedError(
        f"image has offset {format_valuation(g.cert.c)} < 0 at its slope {format_rational(g.cert.t)}")


def substitute(f: OSeries, images: Sequence[OSeries], degree_cap: int) -> OSeries:
    """Compose ``f(g_1, ..., g_n)`` keeping total degree <= ``degree_cap``.

    Every image must be power-bounded (offset >= 0) at its certified slope;
    exact polynomial images are re-certified at their largest power-bounded
    slope when needed.  Output slope:

    * ``s = min`` image slope in general;
    * ``s + (t_f + c_min)/D`` when f and all images are exact, the images
      have no constant term and total degree <= D (coefficient re-grading).
    """
    if len(images) != f.n:
        raise ValueError(f"need {f.n} images, got {len(images)}")
    if not images:
        return f
    p, vars = images[0].p, images[0].vars
    if f.p != p:
        raise ContextMismatchError("images and series use different primes")
    for g in images:
        if g.p != p or g.vars != vars:
            raise ContextMismatchError("all images must share one context")
    images = [_prepare_image(g) for g in images]

    s = min(g.cert.t for g in images)
    c_min = min(g.cert.c for g in images)
    completed = f.completed or any(g.completed for g in images)
    all_exact = f.is_exact and all(g.is_exact for g in images)
    n_out = len(vars)
    zero = (0,) * n_out
    no_constant = all(zero not in g.terms for g in images)
    D = max(g.total_degree() for g in images)

    cap = None if all_exact else degree_cap
    powers = [{0: {zero: Fraction(1)}} for _ in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            prev = power(i, k - 1)
            prod = T.mul(prev, images[i].terms)
            if cap is not None:
                prod, _ = T.split_by_weight(prod, cap)
            cache[k] = prod
        return cache[k]

    out: dict = {}
    for e, a in f.terms.items():
        term = {zero: a}
        for i, k in enumerate(e):
            if k:
                term = T.mul(term, power(i, k))
                if cap is not None:
                    term, _ = T.split_by_weight(term, cap)
        out = T.add(out, term)

    if completed:
        t_out = Fraction(0)
    elif all_exact and no_constant and D > 0:
        t_out = s + (f.cert.t + c_min) / D
    else:
        t_out = s
    c_out = f.cert.c

    kept, dropped = T.split_by_weight(out, degree_cap)
    if all_exact:
        M = T.gauss(dropped, p, t_out)
    else:
        M_img = min(g.cert.M for g in images)
        M = min(f.cert.M, f.cert.c + M_img)
        # terms beyond the cap: |nu| > cap / D when images have no constant term
        if no_constant and D > 0:
            M = min(M, c_out + (f.cert.t + c_min) * Fraction(degree_cap + 1, D))
        else:
            M = min(M, c_out)
    c_out = min(c_out, M)
    return OSeries(p, vars, kept, Certificate(t_out, c_out, M), completed=completed, _trusted=True)
