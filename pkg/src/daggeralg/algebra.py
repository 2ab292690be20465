"""Dagger algebras ``W_n / I`` for a whitelist of presentation families.

Families
--------
``product``
    products of discs and tori; ``free`` (discs only) and ``torus`` are the
    named special cases.  Each torus coordinate x uses two ambient
    variables ``x, x_inv`` with relation ``x * x_inv - 1``.  Normal forms are
    Laurent series with two-sided certificates.
``principal``
    ``I = (g)`` with g a Weierstrass polynomial in the last variable; normal
    forms are Weierstrass remainders, so quotient norms are exact.
``hyperelliptic``
    ``y**2 - Q(x)``, Q monic of odd degree, squarefree mod an odd p; normal
    forms ``a(x) + b(x) y``.
``sublevel``
    ``p**s * u - x``, the rational subdomain ``v(x) >= s`` of the disc;
    normal forms are series in u.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import _terms as T
from .errors import (
    ContextMismatchError,
    SchemaError,
    UnsupportedFamilyError,
    UnsupportedLocalizationError,
)
from .laurent import DISC, TORUS, LaurentSeries
from .scalar import INF, check_prime, format_rational, format_valuation, to_rational, to_slope, valuation
from .series import Certificate, OSeries, substitute
from .weierstrass import is_distinguished, weierstrass_divide

PRODUCT_FAMILIES = ("free", "torus", "product")
FAMILIES = PRODUCT_FAMILIES + ("principal", "hyperelliptic", "sublevel")


@dataclass(frozen=True, eq=False)
class DaggerPresentation:
    family: str
    p: int
    vars: tuple
    generators: tuple = ()
    coords: tuple = ()
    kinds: tuple = ()
    t: Fraction = Fraction(1)
    completed: bool = False
    params: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, DaggerPresentation):
            return NotImplemented
        return (self.family, self.p, self.vars, self.coords, self.kinds, self.t, self.completed) == (
            other.family, other.p, other.vars, other.coords, other.kinds, other.t, other.completed) and \
            all(a.same_terms(b) for a, b in zip(self.generators, other.generators)) and \
            len(self.generators) == len(other.generators) and \
            _params_key(self.params) == _params_key(other.params)

    __hash__ = None

    @property
    def is_product(self):
        return self.family in PRODUCT_FAMILIES

    @property
    def dimension(self):
        if self.is_product:
            return len(self.coords)
        if self.family in ("hyperelliptic", "sublevel"):
            return 1
        return len(self.vars) - 1

    @property
    def exactness_grade(self):
        return "exact" if self.family in ("free", "principal", "sublevel") else "upper-bound"

    @property
    def working_slope(self):
        return Fraction(0) if self.completed else self.t

    def to_json(self):
        data = {"family": self.family, "p": self.p, "t": format_rational(self.t)}
        if self.completed:
            data["completed"] = True
        if self.is_product:
            data["coords"] = list(self.coords)
            data["kinds"] = list(self.kinds)
        elif self.family == "principal":
            data["g"] = self.generators[0].to_json()
        elif self.family == "hyperelliptic":
            data["Q"] = self.params["Q"].to_json()
            data["vars"] = list(self.vars)
        elif self.family == "sublevel":
            data["s"] = self.params["s"]
            data["vars"] = list(self.vars)
        return data


def _params_key(params):
    out = []
    for k in sorted(params):
        v = params[k]
        out.append((k, tuple(sorted(v.terms.items())) if isinstance(v, OSeries) else v))
    return tuple(out)


def _ambient_for(coords, kinds):
    vars = []
    for name, kind in zip(coords, kinds):
        vars.append(name)
        if kind == TORUS:
            vars.append(name + "_inv")
    return tuple(vars)


def product(p, coords, kinds, t=1, family="product"):
    """Product of discs and tori with the given coordinate names."""
    check_prime(p)
    coords, kinds = tuple(coords), tuple(kinds)
    if len(coords) != len(kinds) or any(k not in (DISC, TORUS) for k in kinds):
        raise ValueError("each coordinate needs kind 'disc' or 'torus'")
    vars = _ambient_for(coords, kinds)
    gens = []
    for name, kind in zip(coords, kinds):
        if kind == TORUS:
            i, j = vars.index(name), vars.index(name + "_inv")
            e = [0] * len(vars)
            e[i] = e[j] = 1
            gens.append(OSeries.polynomial(p, vars, {tuple(e): 1, (0,) * len(vars): -1}))
    return DaggerPresentation(family, p, vars, tuple(gens), coords, kinds, to_slope(t))


def free(p, vars=("x",), t=1):
    vars = tuple(vars)
    return product(p, vars, (DISC,) * len(vars), t, family="free")


def torus(p, name="x", t=1, extra_discs=()):
    """The dagger torus ``K<x, x_inv>/(x*x_inv - 1)``, optionally times free discs."""
    coords = tuple(extra_discs) + (name,)
    kinds = (DISC,) * len(extra_discs) + (TORUS,)
    return product(p, coords, kinds, t, family="torus")


def principal(g: OSeries, t=None):
    """``W_n/(g)`` for a Weierstrass polynomial g in the last variable."""
    t = g.cert.t if t is None else to_slope(t)
    var = g.n - 1
    k = g.degree_in(var)
    lead = g.coefficients_in(var).get(k)
    if lead is None or lead.terms != {(0,) * g.n: 1}:
        raise ValueError("principal generator must be monic in the last variable")
    report = is_distinguished(g, var, t)
    if not report or report.degree != k:
        raise ValueError("principal generator is not a Weierstrass polynomial at this slope")
    return DaggerPresentation("principal", g.p, g.vars, (g,), g.vars, (DISC,) * g.n, t, params={"degree": k})


def _discriminant_valuation(Q: OSeries):
    import sympy

    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** e[0] for e, c in Q.terms.items())
    disc = sympy.discriminant(poly, x)
    return valuation(Fraction(int(disc.p), int(disc.q)), Q.p)


def hyperelliptic(p, Q, names=("x", "y"), t=1):
    """``W_2/(y**2 - Q(x))``.

    ``Q`` is a univariate OSeries or a low-to-high coefficient list.  It
    must be monic of odd degree with p-integral coefficients, p odd, and
    squarefree mod p.
    """
    check_prime(p)
    if not isinstance(Q, OSeries):
        Q = OSeries.polynomial(p, (names[0],), {(i,): c for i, c in enumerate(Q)})
    if Q.n != 1 or Q.p != p or not Q.is_exact:
        raise ValueError("Q must be an exact univariate polynomial over the same prime")
    d = Q.total_degree()
    if p == 2:
        raise ValueError("hyperelliptic family requires an odd prime")
    if d < 1 or d % 2 == 0 or Q.terms.get((d,)) != 1:
        raise ValueError("Q must be monic of odd degree")
    if any(valuation(c, p) < 0 for c in Q.terms.values()):
        raise ValueError("Q must have p-integral coefficients")
    if d > 1 and _discriminant_valuation(Q) != 0:
        raise ValueError("Q is not squarefree mod p (discriminant divisible by p)")
    Q = OSeries(p, (names[0],), Q.terms, t=0)
    vars = tuple(names)
    rel = {(e[0], 0): -c for e, c in Q.terms.items()}
    rel[(0, 2)] = Fraction(1)
    gen = OSeries.polynomial(p, vars, rel)
    return DaggerPresentation("hyperelliptic", p, vars, (gen,), vars, (DISC, DISC), to_slope(t),
                              params={"Q": Q, "degree": d, "genus": (d - 1) // 2})


def sublevel(p, s, name="x", aux="u", t=1):
    """``K<x, u>/(p**s * u - x)``: the subdisc ``v(x) >= s``."""
    if not isinstance(s, int) or s <= 0:
        raise UnsupportedLocalizationError("sub-level bound must be a positive integer valuation")
    vars = (name, aux)
    gen = OSeries.polynomial(p, vars, {(0, 1): Fraction(p) ** s, (1, 0): -1})
    return DaggerPresentation("sublevel", p, vars, (gen,), (aux,), (DISC,), to_slope(t), params={"s": s})


def presentation_from_json(data):
    try:
        family = data["family"]
        p = data["p"]
        t = to_slope(data.get("t", "1"))
        if family == "free":
            P = free(p, data.get("coords") or data.get("vars") or ("x",), t)
        elif family == "torus":
            coords = data.get("coords") or ["x"]
            P = torus(p, coords[-1], t, tuple(coords[:-1]))
        elif family == "product":
            P = product(p, data["coords"], data["kinds"], t)
        elif family == "principal":
            P = principal(OSeries.from_json(data["g"]), t)
        elif family == "hyperelliptic":
            Q = data["Q"]
            Q = OSeries.from_json(Q) if isinstance(Q, dict) else [to_rational(c) for c in Q]
            names = tuple(data.get("vars", ("x", "y")))
            P = hyperelliptic(p, Q, names, t)
        elif family == "sublevel":
            vars = data.get("vars", ("x", "u"))
            P = sublevel(p, data["s"], vars[0], vars[1], t)
        else:
            raise UnsupportedFamilyError(f"unknown presentation family {family!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad presentation JSON: {exc}") from exc
    if data.get("completed"):
        P = complete_presentation(P)
    return P


# elements ------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    presentation: DaggerPresentation
    normal_form: object
    residual: Fraction | float = INF

    @property
    def completed(self):
        return self.normal_form.completed

    def to_json(self):
        return {
            "family": self.presentation.family,
            "normal_form": self.normal_form.to_json(),
            "residual_valuation": format_valuation(self.residual),
            "grade": self.presentation.exactness_grade,
        }


def _prepare_input(x: OSeries, P: DaggerPresentation):
    if x.p != P.p or x.vars != P.vars:
        raise ContextMismatchError(f"element context {x.vars} does not match presentation variables {P.vars}")
    if P.completed:
        return x.complete()
    if x.is_exact and not x.completed:
        return x.with_slope(P.t)
    if x.cert.t > P.t:
        return x.with_slope(P.t)
    return x


def reduce(x: OSeries, P: DaggerPresentation, cutoff=40) -> AlgebraElement:
    """Normal form of x in ``P``; the residual is certified >= cutoff."""
    cutoff = to_rational(cutoff)
    x = _prepare_input(x, P)
    if P.is_product:
        return AlgebraElement(P, _reduce_product(x, P))
    if P.family == "principal":
        g = P.generators[0]
        if P.completed:
            g = g.complete()
        div = weierstrass_divide(x, g, x.n - 1, x.cert.t, cutoff)
        return AlgebraElement(P, div.remainder, div.residual_valuation)
    if P.family == "hyperelliptic":
        return AlgebraElement(P, _reduce_hyperelliptic(x, P))
    if P.family == "sublevel":
        return AlgebraElement(P, _reduce_sublevel(x, P))
    raise UnsupportedFamilyError(P.family)


def _reduce_product(x: OSeries, P):
    index = {v: i for i, v in enumerate(P.vars)}
    terms = {}
    for e, c in x.terms.items():
        out = []
        for name, kind in zip(P.coords, P.kinds):
            if kind == DISC:
                out.append(e[index[name]])
            else:
                out.append(e[index[name]] - e[index[name + "_inv"]])
        out = tuple(out)
        terms[out] = terms.get(out, 0) + c
    terms = T.prune(terms)
    if x.is_exact and not x.completed:
        return LaurentSeries(P.p, P.coords, P.kinds, terms, t=x.cert.t, _trusted=True)
    # v(a) >= c + t(i + j) >= c + t|i - j|: the certificate carries over unchanged
    return LaurentSeries(P.p, P.coords, P.kinds, terms, x.cert, completed=x.completed, _trusted=True)


def _reduce_hyperelliptic(x: OSeries, P):
    Q = P.params["Q"]
    d = P.params["degree"]
    q_powers = {0: {(0,): Fraction(1)}}

    def qpow(m):
        if m not in q_powers:
            q_powers[m] = T.mul(qpow(m - 1), Q.terms)
        return q_powers[m]

    terms = {}
    for e, c in x.terms.items():
        i, j = e
        for (l,), qc in qpow(j // 2).items():
            key = (i + l, j % 2)
            terms[key] = terms.get(key, 0) + c * qc
    terms = T.prune(terms)
    if x.is_exact and not x.completed:
        return OSeries(P.p, P.vars, terms, t=x.cert.t)
    # x**i y**j -> x**(i+l) y**(j%2) with l <= d*(j//2): slope 2t/d keeps v >= c + t'|mu|
    t_out = Fraction(0) if x.completed else x.cert.t * 2 / d
    cert = Certificate(t_out, x.cert.c, x.cert.M)
    return OSeries(P.p, P.vars, terms, cert, completed=x.completed, _trusted=True)


def _reduce_sublevel(x: OSeries, P):
    s = P.params["s"]
    terms = {}
    for (i, j), c in x.terms.items():
        key = (i + j,)
        terms[key] = terms.get(key, 0) + c * Fraction(P.p) ** (s * i)
    terms = T.prune(terms)
    if x.is_exact and not x.completed:
        return LaurentSeries(P.p, P.coords, P.kinds, terms, t=x.cert.t, _trusted=True)
    # v(a p^{si}) = v(a) + s*i >= c + t(i + j)
    return LaurentSeries(P.p, P.coords, P.kinds, terms, x.cert, completed=x.completed, _trusted=True)


def lift(a: AlgebraElement) -> OSeries:
    """A representative in the ambient ``W_n`` (inverse of the normal-form map)."""
    P, nf = a.presentation, a.normal_form
    if isinstance(nf, OSeries):
        return nf
    if P.family == "sublevel":
        terms = {(0, e[0]): c for e, c in nf.terms.items()}
        return OSeries(P.p, P.vars, terms, nf.cert, completed=nf.completed, _trusted=True)
    index = {v: i for i, v in enumerate(P.vars)}
    terms = {}
    for e, c in nf.terms.items():
        out = [0] * len(P.vars)
        for k, (name, kind) in enumerate(zip(P.coords, P.kinds)):
            if e[k] >= 0:
                out[index[name]] = e[k]
            else:
                out[index[name + "_inv"]] = -e[k]
        terms[tuple(out)] = c
    return OSeries(P.p, P.vars, terms, nf.cert, completed=nf.completed, _trusted=True)


def element(P: DaggerPresentation, terms, cutoff=40):
    """Convenience: reduce an ambient polynomial given as a term dict."""
    x = OSeries.polynomial(P.p, P.vars, terms, t=P.t)
    return reduce(x, P, cutoff)


def quotient_norm(a: AlgebraElement, t) -> Fraction | float:
    """t-Gauss valuation of the normal form (log form of the residue norm).

    Exact for ``free``, ``principal`` and ``sublevel``; an upper-bound
    realisation for the other families (see ``exactness_grade``).
    """
    return a.normal_form.gauss_valuation(t)


# localization ------------------------------------------------------------------------------

def localize(P: DaggerPresentation, f, kind: str, bound=None) -> DaggerPresentation:
    """``A<f>`` (``kind="sub-level"``, ``|f| <= |p|**bound``) or ``A<1/f>`` (``"inverse"``).

    Supported where the result is again in a supported family: inverting
    the coordinate of a one-dimensional disc or torus, and the sub-level
    set ``v(x) >= bound`` of the disc.
    """
    x = _as_coordinate(P, f)
    if kind == "inverse":
        if P.family in ("free", "torus") and len(P.coords) == 1 and x in (1, -1):
            Q = torus(P.p, P.coords[0], P.t)
            return complete_presentation(Q) if P.completed else Q
        raise UnsupportedLocalizationError("inversion is supported only at the coordinate of a 1-dim disc/torus")
    if kind in ("sub-level", "sublevel"):
        if P.family == "free" and len(P.coords) == 1 and x == 1:
            if bound is None:
                bound = 1
            Q = sublevel(P.p, int(bound), P.coords[0], "u", P.t)
            return complete_presentation(Q) if P.completed else Q
        raise UnsupportedLocalizationError("sub-level localization is supported only at the disc coordinate")
    raise UnsupportedLocalizationError(f"unknown localization kind {kind!r}")


def _as_coordinate(P, f):
    """+1 if f is the coordinate x, -1 if it is 1/x, else 0."""
    if isinstance(f, str):
        return 1 if P.coords and f == P.coords[0] else 0
    if isinstance(f, AlgebraElement):
        nf = f.normal_form
        terms = nf.terms
    elif isinstance(f, (OSeries, LaurentSeries)):
        terms = f.terms if isinstance(f, LaurentSeries) or not P.is_product else \
            _reduce_product(_prepare_input(f, P), P).terms
    else:
        return 0
    if len(terms) != 1:
        return 0
    (e, c), = terms.items()
    if c != 1 or len(e) != 1:
        return 0
    return e[0] if e[0] in (1, -1) else 0


def transport(a: AlgebraElement, target: DaggerPresentation, cutoff=40) -> AlgebraElement:
    """Image of ``a`` under the canonical map to a localization ``target``."""
    P = a.presentation
    if P.p != target.p:
        raise ContextMismatchError("different primes")
    if P.is_product and target.is_product and P.coords == target.coords:
        nf = a.normal_form
        t = target.working_slope
        terms = dict(nf.terms)
        cert = nf.cert if nf.cert.t <= t else Certificate(t, nf.cert.c, nf.cert.M)
        out = LaurentSeries(P.p, target.coords, target.kinds, terms, cert,
                            completed=nf.completed or target.completed, _trusted=True)
        if target.completed:
            out = LaurentSeries(P.p, target.coords, target.kinds, terms,
                                Certificate(Fraction(0), min(out.gauss_valuation(0), cert.M), cert.M),
                                completed=True, _trusted=True)
        return AlgebraElement(target, out, a.residual)
    if P.family == "free" and target.family == "sublevel" and len(P.coords) == 1:
        x = lift(a)
        image = OSeries.polynomial(P.p, target.vars, {(1, 0): 1}, t=target.t)
        moved = substitute(x, [image], max(x.total_degree(), 0)) if x.is_exact else \
            OSeries(P.p, target.vars, {(e[0], 0): c for e, c in x.terms.items()}, x.cert,
                    completed=x.completed, _trusted=True)
        return reduce(moved, target, cutoff)
    raise UnsupportedLocalizationError("no transport map between these presentations")


def complete_presentation(P: DaggerPresentation) -> DaggerPresentation:
    """The Tate-mode twin: slope 0, completed flag on every element reduced in it."""
    if P.completed:
        return P
    gens = tuple(g.complete() for g in P.generators)
    return replace(P, generators=gens, completed=True)
