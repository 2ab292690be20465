"""Residue pairing between polydisc functions and rapid-decay Laurent tails.

A compactly supported top form on the m-dimensional polydisc is modelled by
a :class:`LaurentTail` ``sum_{mu < 0} a_mu T**mu dT`` (every exponent
``<= -1``) carrying one certified decay rate: ``v(a_mu) >= c + u*|mu|``.
The pairing with ``b = sum b_alpha T**alpha`` is

    <b, a> = sum_alpha b_alpha * a_{-alpha-1}.

On the torus the pairing is the residue at ``dx/x``: ``<phi, omega>`` is the
coefficient of ``x**-1 dx`` in ``phi * omega``.  We normalise the
compactly supported classes so that ``<[dx/x], [1]> = 1`` and
``<1, [dx/x]_c> = 1``; this normalisation is a choice made here.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from . import _terms as T
from .algebra import DaggerPresentation
from .derham import cohomology, d, function, one_form, reduce_in_cohomology
from .errors import ContextMismatchError, SchemaError, UnsupportedFamilyError
from .scalar import INF, check_prime, format_rational, format_valuation, parse_valuation, to_rational, to_slope, valuation
from .series import OSeries


class LaurentTail:
    """``sum a_mu T**mu dT`` over multi-indices with every component <= -1."""

    __slots__ = ("p", "vars", "terms", "u", "c", "M")

    def __init__(self, p, vars, terms, u, c=None, M=INF):
        self.p = check_prime(p)
        self.vars = tuple(vars)
        self.u = to_slope(u)
        if self.u <= 0:
            raise ValueError("decay rate u must be positive")
        out = {}
        for e, a in terms.items():
            e = tuple(int(i) for i in e)
            if len(e) != len(self.vars) or any(i > -1 for i in e):
                raise ValueError(f"tail exponent {e} must have every component <= -1")
            a = to_rational(a)
            if a:
                out[e] = out.get(e, 0) + a
        self.terms = T.prune(out)
        floor = min((valuation(a, self.p) - self.u * T.weight(e) for e, a in self.terms.items()), default=INF)
        self.M = M
        if c is None:
            c = min(floor, M)
        elif floor < c:
            raise ValueError("stored tail terms violate the decay certificate")
        if M < c:
            raise ValueError("truncation level must be >= offset")
        self.c = c

    @property
    def m(self):
        return len(self.vars)

    @property
    def is_exact(self):
        return self.M == INF

    def __repr__(self):
        body = " + ".join(f"{format_rational(a)}*{e}" for e, a in T.sorted_items(self.terms)) or "0"
        return f"LaurentTail({self.vars}, {body}, u={self.u}, c={self.c})"

    def to_json(self):
        return {
            "p": self.p,
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": format_rational(a)} for e, a in T.sorted_items(self.terms)],
            "decay": {"u": format_rational(self.u), "c": format_valuation(self.c), "M": format_valuation(self.M)},
        }

    @classmethod
    def from_json(cls, data):
        try:
            terms = {tuple(item["e"]): to_rational(item["c"]) for item in data["terms"]}
            decay = data["decay"]
            c = parse_valuation(decay["c"]) if "c" in decay else None
            return cls(data["p"], data["vars"], terms, to_slope(decay["u"]), c,
                       parse_valuation(decay.get("M", "inf")))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad tail JSON: {exc}") from exc


@dataclass(frozen=True)
class Pairing:
    value: Fraction
    omitted_bound: Fraction | float

    def to_json(self):
        return {"value": format_rational(self.value), "omitted_valuation_bound": format_valuation(self.omitted_bound)}


def residue_pair(b: OSeries, a: LaurentTail) -> Pairing:
    """Exact pairing on stored terms plus a lower bound for the omitted tails."""
    if b.p != a.p or b.n != a.m:
        raise ContextMismatchError("function and tail live over different polydiscs")
    value = Fraction(0)
    for alpha, coef in b.terms.items():
        mu = tuple(-i - 1 for i in alpha)
        if mu in a.terms:
            value += coef * a.terms[mu]
    # an omitted b-term meets a term of weight >= |alpha| + m; symmetrically for a
    bound = INF
    if not b.is_exact:
        bound = min(bound, b.cert.M + a.c + a.u * a.m)
    if not a.is_exact:
        bound = min(bound, a.M + b.cert.c + a.u * a.m)
    return Pairing(value, bound)


@dataclass(frozen=True)
class PairingMatrix:
    rows: tuple
    cols: tuple
    entries: tuple

    @property
    def is_identity(self):
        return all(v == (1 if i == j else 0) for i, row in enumerate(self.entries) for j, v in enumerate(row))

    def to_json(self):
        return {
            "rows": [list(r) for r in self.rows],
            "cols": [list(c) for c in self.cols],
            "matrix": [[format_rational(v) for v in row] for row in self.entries],
            "identity": self.is_identity,
        }


def pairing_gram(K: int, m: int, p: int = 2) -> PairingMatrix:
    """Gram matrix of monomials ``T**alpha`` (components < K) against ``T**(-alpha-1) dT``."""
    if K < 1 or m < 1:
        raise ValueError("K and m must be >= 1")
    vars = tuple(f"T{i + 1}" for i in range(m))
    alphas = list(iproduct(range(K), repeat=m))
    cols = [tuple(-i - 1 for i in alpha) for alpha in alphas]
    funcs = [OSeries(p, vars, {alpha: 1}) for alpha in alphas]
    tails = [LaurentTail(p, vars, {mu: 1}, 1) for mu in cols]
    entries = tuple(tuple(residue_pair(f, a).value for a in tails) for f in funcs)
    return PairingMatrix(tuple(alphas), tuple(cols), entries)


def _residue(omega):
    """Coefficient of ``x**-1 dx`` in a torus 1-form."""
    coef = omega.components.get((0,))
    return coef.terms.get((-1,), Fraction(0)) if coef is not None else Fraction(0)


def torus_pair(phi_terms, omega) -> Fraction:
    """``res(phi * omega)`` for a Laurent polynomial phi and a torus 1-form omega."""
    coef = omega.components.get((0,))
    if coef is None:
        return Fraction(0)
    total = Fraction(0)
    for (n,), c in phi_terms.items():
        total += c * coef.terms.get((-1 - n,), 0)
    return total


def poincare_check(P: DaggerPresentation, cutoff=40, samples=50, seed=0):
    """Finite Poincaré duality on the one-dimensional torus."""
    if P.family != "torus" or len(P.coords) != 1:
        raise UnsupportedFamilyError("poincare_check is implemented for the one-dimensional torus")
    report = cohomology(P, cutoff)
    h1 = report.degrees[1].basis
    dual_generator = {(0,): Fraction(1)}
    gram = [[torus_pair(dual_generator, w) for w in h1]]
    h0_gram = [[torus_pair({(0,): Fraction(1)}, one_form(P, {(-1,): 1}))]]
    rng = random.Random(seed)
    annihilated = 0
    for _ in range(samples):
        F = {(rng.randint(-8, 8),): Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(rng.randint(1, 6))}
        exact = d(function(P, F))
        phi = {(rng.randint(-3, 3),): Fraction(rng.randint(1, 9))} if rng.random() < 0.5 else dual_generator
        rep = reduce_in_cohomology(exact, P, cutoff).representative
        if torus_pair(dual_generator, exact) == 0 and _residue(rep) == 0 and \
                (phi is dual_generator or torus_pair(phi, exact) == -torus_pair(_derivative(phi), _as_form(P, F))):
            annihilated += 1
    nondegenerate = len(gram) == 1 and len(gram[0]) == 1 and gram[0][0] != 0
    return {
        "family": P.family,
        "H1_basis": ["dx/x"],
        "pairing_H1": [[format_rational(v) for v in row] for row in gram],
        "pairing_H0": [[format_rational(v) for v in row] for row in h0_gram],
        "nondegenerate": nondegenerate and h0_gram[0][0] != 0,
        "exactness_annihilation": {"samples": samples, "vanishing": annihilated, "all_zero": annihilated == samples},
        "normalization": "<[dx/x], [1]> = res(dx/x) = 1 and <1, [dx/x]_c> = 1 (chosen here)",
    }


def _derivative(phi):
    return {(n - 1,): c * n for (n,), c in phi.items() if n}


def _as_form(P, F):
    """F viewed as the 1-form ``F dx`` so that res(phi' * F) can be read off."""
    return one_form(P, F)
