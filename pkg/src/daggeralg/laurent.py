"""Laurent series on products of discs and tori, with two-sided certificates.

Coordinates are either ``"disc"`` (exponents >= 0) or ``"torus"`` (any
integer exponent).  The certificate ``(t, c, M)`` reads, with
``|n| = sum |n_i|`` and an optional centre valuation ``s`` per coordinate,

    v(a_n) + <s, n> >= c + t*|n|    for every coefficient,

so both tails decay at rate t around the circle ``v(x_i) = s_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _terms as T
from .errors import ContextMismatchError, SchemaError, UncertifiedRadiusError
from .scalar import INF, check_prime, vp_int, format_rational, to_rational, to_slope, valuation
from .series import Certificate

DISC, TORUS = "disc", "torus"


def laurent_gauss(terms, p, t, center=None):
    best = INF
    for e, c in terms.items():
        w = valuation(c, p) - t * T.weight(e)
        if center:
            w += sum(s * i for s, i in zip(center, e))
        if w < best:
            best = w
    return best


class LaurentSeries:
    """A finitely stored Laurent series with certificate; immutable."""

    __slots__ = ("p", "vars", "kinds", "terms", "cert", "completed", "center")

    def __init__(self, p, vars, kinds, terms=None, cert=None, *, t=0, M=INF, completed=False,
                 center=None, _trusted=False):
        self.p = p if _trusted else check_prime(p)
        self.vars = tuple(vars)
        self.kinds = tuple(kinds)
        if len(self.kinds) != len(self.vars):
            raise ValueError("one kind per coordinate is required")
        self.center = tuple(Fraction(s) for s in center) if center else None
        if _trusted:
            self.terms = terms
        else:
            out = {}
            for e, c in (terms or {}).items():
                e = tuple(int(i) for i in e)
                if len(e) != len(self.vars):
                    raise ValueError(f"exponent {e} has the wrong length")
                for i, k in zip(e, self.kinds):
                    if k == DISC and i < 0:
                        raise ValueError(f"negative exponent {e} on a disc coordinate")
                c = to_rational(c)
                if c:
                    out[e] = out.get(e, 0) + c
            self.terms = T.prune(out)
        if cert is None:
            t = to_slope(t)
            cert = Certificate(t, min(laurent_gauss(self.terms, self.p, t, self.center), M), M)
        elif not _trusted and laurent_gauss(self.terms, self.p, cert.t, self.center) < cert.c:
            raise ValueError("stored terms violate the certificate bound")
        self.cert = cert
        self.completed = bool(completed)

    def _new(self, terms, cert=None, completed=None):
        if cert is None:
            cert = Certificate(self.cert.t, min(laurent_gauss(terms, self.p, self.cert.t, self.center),
                                                self.cert.M), self.cert.M)
        return LaurentSeries(self.p, self.vars, self.kinds, terms, cert,
                             completed=self.completed if completed is None else completed,
                             center=self.center, _trusted=True)

    @classmethod
    def zero_like(cls, other):
        return other._new({}, Certificate(other.cert.t, INF, INF))

    @property
    def n(self):
        return len(self.vars)

    @property
    def is_exact(self):
        return self.cert.M == INF

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*{e}" for e, c in T.sorted_items(self.terms)) or "0"
        return f"LaurentSeries({self.vars}, {body}, cert={self.cert})"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.p, self.vars, self.kinds, self.terms, self.cert, self.completed, self.center) == (
            other.p, other.vars, other.kinds, other.terms, other.cert, other.completed, other.center)

    __hash__ = None

    def gauss_valuation(self, t):
        t = to_slope(t)
        if t > self.cert.t and (self.completed or not self.is_exact):
            raise UncertifiedRadiusError("slope exceeds the certificate")
        return laurent_gauss(self.terms, self.p, t, self.center)

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if (other.p, other.vars, other.kinds, other.center) != (self.p, self.vars, self.kinds, self.center):
                raise ContextMismatchError("Laurent contexts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self._new({(0,) * self.n: Fraction(other)} if other else {})
        return None

    def _add(self, g, sign):
        t = min(self.cert.t, g.cert.t)
        completed = self.completed or g.completed
        if completed:
            t = Fraction(0)
        cert = Certificate(t, min(self.cert.c, g.cert.c), min(self.cert.M, g.cert.M))
        return self._new(T.add(self.terms, g.terms, sign), cert, completed)

    def __add__(self, other):
        g = self._coerce(other)
        return NotImplemented if g is None else self._add(g, 1)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        return NotImplemented if g is None else self._add(g, -1)

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()}, self.cert)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        t = min(self.cert.t, g.cert.t)
        completed = self.completed or g.completed
        if completed:
            t = Fraction(0)
        c = self.cert.c + g.cert.c
        M = min(self.cert.M + g.cert.c, g.cert.M + self.cert.c)
        return self._new(T.mul(self.terms, g.terms), Certificate(t, min(c, M), M), completed)

    __rmul__ = __mul__

    def scale(self, s):
        s = Fraction(s)
        if s == 0:
            return self._new({}, Certificate(self.cert.t, INF, INF))
        vs = valuation(s, self.p)
        return self._new(T.scale(self.terms, s), Certificate(self.cert.t, self.cert.c + vs, self.cert.M + vs))

    def derivative(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        # |n - 1| >= |n| - 1, so the offset may drop by t (and by the centre shift)
        s = self.center[i] if self.center else 0
        shift = -self.cert.t - s
        return self._new(terms, Certificate(self.cert.t, self.cert.c + shift, self.cert.M + shift))

    def split_signs(self, i=0):
        """(terms with exponent_i >= 0, terms with exponent_i < 0)."""
        pos = {e: c for e, c in self.terms.items() if e[i] >= 0}
        neg = {e: c for e, c in self.terms.items() if e[i] < 0}
        return pos, neg

    def to_json(self):
        data = {
            "p": self.p,
            "vars": list(self.vars),
            "kinds": list(self.kinds),
            "terms": [{"e": list(e), "c": format_rational(c)} for e, c in T.sorted_items(self.terms)],
            "cert": self.cert.to_json(),
        }
        if self.center:
            data["center"] = [format_rational(s) for s in self.center]
        if self.completed:
            data["completed"] = True
        return data

    @classmethod
    def from_json(cls, data):
        try:
            terms = {tuple(item["e"]): to_rational(item["c"]) for item in data["terms"]}
            center = [to_rational(s) for s in data["center"]] if "center" in data else None
            kinds = data.get("kinds") or [TORUS] * len(data["vars"])
            cert = Certificate.from_json(data["cert"]) if "cert" in data else None
            return cls(data["p"], data["vars"], kinds, terms, cert, completed=bool(data.get("completed")),
                       center=center)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad Laurent JSON: {exc}") from exc


@dataclass(frozen=True)
class LaurentScan:
    """Result of the valuation-loss scan used by certified antidifferentiation."""

    bound: Fraction
    scanned_to: int


def valuation_loss_bound(p: int, gap: Fraction, *, shift: int = 1, log_bound=False) -> LaurentScan:
    """``max(0, max_{n>=0} (v_p(n + shift) - gap*n))`` by a finite exact scan.

    With ``log_bound`` the p-adic valuation is replaced by ``floor(log_p(n + shift))``,
    which dominates it.  The scan stops once ``p**(gap*n) >= n + shift`` holds
    and the ratio ``p**(gap*n)/(n + shift)`` is non-decreasing from there on,
    after which every further term is <= 0.
    """
    gap = Fraction(gap)
    if gap <= 0:
        raise ValueError("the slope gap must be positive")
    a, b = gap.numerator, gap.denominator
    best = Fraction(0)
    n = 0
    while True:
        m = n + shift
        if log_bound:
            k, q = 0, m
            while q >= p:
                q //= p
                k += 1
            v = k
        else:
            v = vp_int(m, p)
        best = max(best, v - gap * n)
        # p**(a n / b) >= m  <=>  p**(a n) >= m**b ; ratio increasing <=> p**a (m)**b >= (m + 1)**b
        if p ** (a * n) >= m ** b and p ** a * m ** b >= (m + 1) ** b:
            return LaurentScan(best, n)
        n += 1

