"""Weierstrass division, preparation and the distinguishing automorphism.

Internally series are handled "graded" in the chosen variable Y: a dict
``{m: terms}`` where ``terms`` is the coefficient of ``Y**m`` with the Y
exponent zeroed.  Division is a fixed-point defect iteration; the margin of
the distinguished report bounds the per-pass gain in valuation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _terms as T
from .errors import (
    ContextMismatchError,
    NonConvergenceError,
    NotDistinguishedError,
    UncertifiedPrecisionError,
    UncertifiedRadiusError,
)
from .scalar import INF, format_rational, format_valuation, to_rational, to_slope, valuation
from .series import Certificate, OSeries, check_series

MAX_PASSES = 20000


@dataclass(frozen=True)
class DistinguishedReport:
    variable: int
    degree: int
    margin: Fraction | float
    unit_margin: Fraction | float
    norm: Fraction
    slope: Fraction

    def __bool__(self):
        return True

    def to_json(self):
        return {
            "distinguished": True,
            "variable": self.variable,
            "degree": self.degree,
            "margin": format_valuation(self.margin),
            "unit_margin": format_valuation(self.unit_margin),
            "norm": format_valuation(self.norm),
            "t": format_rational(self.slope),
        }


@dataclass(frozen=True)
class NotDistinguished:
    variable: int
    witness: int
    reason: str

    def __bool__(self):
        return False

    def to_json(self):
        return {"distinguished": False, "variable": self.variable, "witness": self.witness, "reason": self.reason}


@dataclass(frozen=True)
class DivisionResult:
    quotient: OSeries
    remainder: OSeries
    residual_valuation: Fraction | float
    report: DistinguishedReport
    passes: int = 0

    def to_json(self):
        return {
            "quotient": self.quotient.to_json(),
            "remainder": self.remainder.to_json(),
            "residual_valuation": format_valuation(self.residual_valuation),
            "degree": self.report.degree,
            "margin": format_valuation(self.report.margin),
            "passes": self.passes,
        }


@dataclass(frozen=True)
class PreparationResult:
    weierstrass_poly: OSeries
    unit: OSeries
    residual_valuation: Fraction | float
    report: DistinguishedReport
    unit_inverse: OSeries = field(default=None, repr=False)

    def to_json(self):
        return {
            "weierstrass_poly": self.weierstrass_poly.to_json(),
            "unit": self.unit.to_json(),
            "residual_valuation": format_valuation(self.residual_valuation),
            "degree": self.report.degree,
        }


# graded helpers ------------------------------------------------------------------

def _graded(terms, var):
    out = {}
    for e, c in terms.items():
        m = e[var]
        out.setdefault(m, {})[e[:var] + (0,) + e[var + 1:]] = c
    return out


def _ungraded(graded, var):
    out = {}
    for m, terms in graded.items():
        for e, c in terms.items():
            out[e[:var] + (m,) + e[var + 1:]] = c
    return out


def _gw(graded, p, t):
    """Gauss valuation of a graded dict (the Y exponent counts in the weight)."""
    best = INF
    for m, terms in graded.items():
        w = T.gauss(terms, p, t) - t * m
        if w < best:
            best = w
    return best


def _g_add(a, b, sign=1):
    out = {m: dict(v) for m, v in a.items()}
    for m, terms in b.items():
        new = T.add(out.get(m, {}), terms, sign)
        if new:
            out[m] = new
        else:
            out.pop(m, None)
    return out


def _g_mul(a, b):
    out = {}
    for m1, t1 in a.items():
        for m2, t2 in b.items():
            prod = T.mul(t1, t2)
            if prod:
                new = T.add(out.get(m1 + m2, {}), prod)
                if new:
                    out[m1 + m2] = new
                else:
                    out.pop(m1 + m2, None)
    return out


def _g_round(graded, p, t, level):
    out, change = {}, INF
    for m, terms in graded.items():
        r, ch = T.round_terms(terms, p, t, level + t * m)
        if r:
            out[m] = r
        if ch != INF:
            change = min(change, ch - t * m)
    return out, change


def _clean(terms, p, t, level):
    """Drop terms at or above ``level`` and round the rest to it."""
    if level == INF:
        return terms
    kept, _ = T.split_by_w(terms, p, t, level)
    kept, _ = T.round_terms(kept, p, t, level)
    return kept


def _g_drop(graded, p, t, level):
    """Drop terms with weighted valuation >= level; return (kept, min dropped)."""
    kept, dropped = {}, INF
    for m, terms in graded.items():
        k, d = T.split_by_w(terms, p, t, level + t * m)
        if k:
            kept[m] = k
        if d != INF:
            dropped = min(dropped, d - t * m)
    return kept, dropped


def unit_inverse(terms, p, t, precision):
    """Approximate inverse ``u`` of a unit with dominant constant term.

    Returns ``u`` with ``w_t(1 - a*u) >= precision``; raises if the constant
    term does not strictly dominate.
    """
    n = len(next(iter(terms)))
    zero = (0,) * n
    a0 = terms.get(zero)
    if a0 is None:
        raise NonConvergenceError("unit has no constant term")
    v0 = valuation(a0, p)
    h = {e: c / a0 for e, c in terms.items() if e != zero}
    if h and T.gauss(h, p, t) <= 0:
        raise NonConvergenceError("constant term does not strictly dominate; not a unit at this slope")
    u = {zero: Fraction(1)}
    power = {zero: Fraction(1)}
    neg_h = T.scale(h, -1)
    while True:
        power = T.mul(power, neg_h)
        power, _ = T.split_by_w(power, p, t, precision)
        if not power:
            break
        u = T.add(u, power)
    u = T.scale(u, 1 / a0)
    u, _ = T.round_terms(u, p, t, precision - v0)
    return u, v0


# distinguishedness -------------------------------------------------------------------

def is_distinguished(g: OSeries, var=None, t=None):
    """Report whether g is distinguished in ``var`` at slope ``t``.

    The degree is the largest Y-degree whose coefficient attains the Gauss
    valuation; that coefficient must be a unit (dominant constant term).
    """
    check_series(g)
    var = g.n - 1 if var is None else var
    t = g.cert.t if t is None else to_slope(t)
    if not g.terms:
        raise ValueError("the zero series is not distinguished")
    w = g.gauss_valuation(t)
    if g.cert.M <= w:
        raise UncertifiedPrecisionError("the truncated tail could attain the Gauss valuation")
    graded = _graded(g.terms, var)
    ws = {m: T.gauss(terms, g.p, t) - t * m for m, terms in graded.items()}
    k = max(m for m, wm in ws.items() if wm == w)
    gk = graded[k]
    zero = (0,) * g.n
    a0 = gk.get(zero)
    if a0 is None or valuation(a0, g.p) - t * k != w:
        return NotDistinguished(var, k, "leading coefficient has no dominant constant term")
    v0 = valuation(a0, g.p)
    unit_margin = INF
    for e, c in gk.items():
        if e != zero:
            unit_margin = min(unit_margin, valuation(c, g.p) - t * T.weight(e) - v0)
    if unit_margin <= 0:
        return NotDistinguished(var, k, "leading coefficient is not a unit")
    margin = min((wm - w for m, wm in ws.items() if m > k), default=INF)
    slack = g.cert.M - w
    return DistinguishedReport(var, k, min(margin, slack), min(unit_margin, slack), w, t)


def _require_distinguished(g, var, t):
    report = is_distinguished(g, var, t)
    if not report:
        raise NotDistinguishedError(f"not distinguished in variable {report.variable}: {report.reason}",
                                    witness=report.witness)
    if report.margin <= 0 or report.unit_margin <= 0:
        raise NonConvergenceError("distinguished margin cannot be certified positive")
    return report


# division ------------------------------------------------------------------------------

def _divide_graded(f, g, k, p, t, cutoff, w_g, schedule):
    """Core loop; returns (q, r, min dropped defect valuation, passes)."""
    u, _ = unit_inverse(g[k], p, t, cutoff - min(_gw(f, p, t), w_g) + w_g + 1)
    u_g = {0: u}
    q_level = cutoff - w_g
    P = {m: c for m, c in g.items() if m <= k}
    H = {m: c for m, c in g.items() if m > k}
    D, dropped = _g_drop(f, p, t, cutoff)
    q, r = {}, {}
    passes = 0
    while D:
        passes += 1
        if passes > MAX_PASSES:
            raise NonConvergenceError(f"division did not reach cutoff after {MAX_PASSES} passes")
        if schedule == "step":
            lo = {m: c for m, c in D.items() if m < k}
            hi = {m - k: c for m, c in D.items() if m >= k}
            lo, ch = _g_round(lo, p, t, cutoff)
            dropped = min(dropped, ch)
            r = _g_add(r, lo)
            qi, _ = _g_drop(_g_mul(hi, u_g), p, t, q_level)
            qi, _ = _g_round(qi, p, t, q_level)
            q = _g_add(q, qi)
            D = _g_add({m + k: c for m, c in hi.items()}, _g_mul(g, qi), -1)
        else:
            qp = {}
            done = set()
            while True:
                # eliminate the top remaining degree >= k; new lower terms are picked up in turn
                e = max((m for m in D if m >= k and m not in done), default=None)
                if e is None:
                    break
                done.add(e)
                c = D[e]
                qe, _ = _g_drop(_g_mul({0: c}, u_g), p, t, q_level + t * (e - k))
                qe, _ = _g_round(qe, p, t, q_level + t * (e - k))
                if not qe:
                    continue
                qe = {e - k: qe[0]}
                D = _g_add(D, _g_mul(qe, P), -1)
                qp = _g_add(qp, qe)
            lo = {m: c for m, c in D.items() if m < k}
            hi = {m: c for m, c in D.items() if m >= k}
            lo, ch = _g_round(lo, p, t, cutoff)
            dropped = min(dropped, ch)
            r = _g_add(r, lo)
            D = _g_add(hi, _g_mul(H, qp), -1)
            q = _g_add(q, qp)
        D, d = _g_drop(D, p, t, cutoff)
        D, ch = _g_round(D, p, t, cutoff)
        dropped = min(dropped, d, ch)
    return q, r, dropped, passes


def weierstrass_divide(f: OSeries, g: OSeries, var=None, t=None, cutoff=40, schedule="euclid") -> DivisionResult:
    """Divide f by the distinguished g: ``f = g*q + r`` with ``deg_var r < k``.

    ``schedule`` selects the pass order (``"euclid"``: full long division by
    the polynomial part per pass; ``"step"``: one split per pass).  Both give
    the same q, r up to the certified residual.
    """
    check_series(f)
    check_series(g, p=f.p, n=f.n)
    if f.vars != g.vars:
        raise ContextMismatchError("dividend and divisor use different variables")
    var = f.n - 1 if var is None else var
    t = min(f.cert.t, g.cert.t) if t is None else to_slope(t)
    cutoff = to_rational(cutoff)
    report = _require_distinguished(g, var, t)
    if t > f.cert.t and not f.is_exact:
        raise UncertifiedRadiusError("dividend is not certified at this slope")
    p, k, w_g = f.p, report.degree, report.norm
    fg, gg = _graded(f.terms, var), _graded(g.terms, var)
    q, r, dropped, passes = _divide_graded(fg, gg, k, p, t, cutoff, w_g, schedule)
    q_terms, r_terms = _ungraded(q, var), _ungraded(r, var)
    w_q = T.gauss(q_terms, p, t)
    residual = min(dropped, f.cert.M, g.cert.M + w_q)
    if residual < cutoff:
        raise UncertifiedPrecisionError(
            f"inputs are only known to {format_valuation(residual)} < cutoff {format_rational(cutoff)}")
    completed = f.completed or g.completed
    M_q = residual - w_g
    q_terms = _clean(q_terms, p, t, M_q)
    r_terms = _clean(r_terms, p, t, residual)
    w_q = T.gauss(q_terms, p, t)
    quotient = OSeries(p, f.vars, q_terms, Certificate(t, min(w_q, M_q), M_q), completed=completed, _trusted=True)
    w_r = T.gauss(r_terms, p, t)
    remainder = OSeries(p, f.vars, r_terms, Certificate(t, min(w_r, residual), residual),
                        completed=completed, _trusted=True)
    return DivisionResult(quotient, remainder, residual, report, passes)


def weierstrass_prepare(g: OSeries, var=None, t=None, cutoff=40) -> PreparationResult:
    """Factor ``g = e * omega`` with omega monic of degree k in ``var``.

    ``omega = Y**k - r`` where r is the remainder of ``Y**k`` by g, and
    ``e`` inverts the quotient to the cutoff.  The residual is measured
    directly on the stored parts.
    """
    check_series(g)
    var = g.n - 1 if var is None else var
    t = g.cert.t if t is None else to_slope(t)
    cutoff = to_rational(cutoff)
    report = _require_distinguished(g, var, t)
    k, p, w_g = report.degree, g.p, report.norm
    ek = [0] * g.n
    ek[var] = k
    yk = OSeries(p, g.vars, {tuple(ek): 1}, t=max(t, g.cert.t))
    extra = Fraction(0)
    for _ in range(8):
        inner = cutoff + extra + max(Fraction(0), -t * k - w_g) + max(Fraction(0), t * k + w_g)
        div = weierstrass_divide(yk, g, var, t, inner)
        q = div.quotient
        omega_terms = T.add(yk.terms, div.remainder.terms, -1)
        u, _ = unit_inverse(q.terms, p, t, inner - w_g + 1) if q.terms else (None, None)
        if u is None:
            raise NonConvergenceError("quotient vanished; g is not a unit multiple of a polynomial")
        w_e = T.gauss(u, p, t)
        e_terms = _clean(u, p, t, cutoff + t * k)
        diff = T.add(g.terms, T.mul(e_terms, omega_terms), -1)
        # true g - e*omega also carries g's truncation and omega's error times e
        residual = min(T.gauss(diff, p, t), g.cert.M, div.residual_valuation + w_e)
        if residual >= cutoff:
            break
        extra += cutoff - residual + 1
    else:
        raise NonConvergenceError("preparation residual did not reach the cutoff")
    completed = g.completed
    M_om = div.residual_valuation
    omega_terms = _clean(omega_terms, p, t, M_om)
    w_om = T.gauss(omega_terms, p, t)
    omega = OSeries(p, g.vars, omega_terms, Certificate(t, min(w_om, M_om), M_om), completed=completed, _trusted=True)
    M_e = residual - (-t * k)
    unit = OSeries(p, g.vars, e_terms, Certificate(t, min(w_e, M_e), M_e), completed=completed, _trusted=True)
    inv = OSeries(p, g.vars, q.terms, q.cert, completed=completed, _trusted=True)
    return PreparationResult(omega, unit, residual, report, inv)


# distinguishing automorphism -------------------------------------------------------------

def _apply_shift(terms, n, shifts):
    """Exact image of terms under X_i -> X_i + X_n**c_i (i < n), X_n -> X_n."""
    last = n - 1
    images = []
    for i in range(n - 1):
        ei, en = [0] * n, [0] * n
        ei[i] = 1
        en[last] = shifts[i]
        images.append({tuple(ei): Fraction(1), tuple(en): Fraction(1)} if shifts[i] else {tuple(ei): Fraction(1)})
    cache = [{0: {(0,) * n: Fraction(1)}} for _ in images]

    def power(i, k):
        if k not in cache[i]:
            cache[i][k] = T.mul(power(i, k - 1), images[i])
        return cache[i][k]

    out = {}
    for e, c in terms.items():
        term = {(0,) * last + (e[last],): c}
        for i in range(n - 1):
            if e[i]:
                term = T.mul(term, power(i, e[i]))
        out = T.add(out, term)
    return out


def distinguishing_automorphism(f: OSeries, t=None):
    """Find ``sigma: X_i -> X_i + X_n**c_i`` making sigma(f) distinguished in X_n.

    Returns ``(shifts, image, report)``; ``shifts`` is ``[c_1, ..., c_{n-1}]``
    (all zero for the identity).  Exponent schedules ``c_i = b**(n-i)`` are
    tried for ``b = 1, ..., d + 1`` (d the total degree), ending with the
    classical choice, and each is verified.
    """
    check_series(f)
    if not f.terms:
        raise ValueError("the zero series has no distinguishing automorphism")
    t = f.cert.t if t is None else to_slope(t)
    n = f.n
    report = is_distinguished(f, n - 1, t)
    if report:
        return [0] * (n - 1), f, report
    d = f.total_degree()
    for b in range(1, d + 2):
        shifts = [b ** (n - 1 - i) for i in range(n - 1)]
        image_terms = _apply_shift(f.terms, n, shifts)
        if not image_terms:
            continue
        M = f.cert.M
        if M != INF and f.cert.t < t * max(shifts + [1]):
            raise UncertifiedPrecisionError("truncated tail is not controlled after the shift at this slope")
        cert = Certificate(t, min(T.gauss(image_terms, f.p, t), M), M)
        image = OSeries(f.p, f.vars, image_terms, cert, completed=f.completed, _trusted=True)
        report = is_distinguished(image, n - 1, t)
        if report:
            return shifts, image, report
    raise NotDistinguishedError("no exponent schedule made the series distinguished at this slope")
