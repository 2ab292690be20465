"""de Rham complexes of the supported presentations.

Product families (discs and tori) store a k-form as ``{I: f_I}`` meaning
``sum f_I dx_I`` with ``I`` a strictly increasing tuple of coordinate
indices and ``f_I`` a Laurent series.  Cohomology is computed in the
logarithmic basis ``x**e dlog x_I``: multidegree by multidegree the complex
is a Koszul complex, contractible unless ``e = 0``, with explicit homotopy
``(1/e_j) * contraction_j``.

Hyperelliptic curves ``y**2 = Q(x)`` store 1-forms as ``h dx/y`` with
``h = a(x) + b(x) y``.  ``Omega^1`` is free on ``dx/y`` because
``dx = y * dx/y`` and ``dy = Q'/2 * dx/y``.  The plus part ``b(x) dx`` is
always exact, so H^1 is spanned by ``x**i dx/y`` for ``i < 2g``; the report
records this convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct

from . import _terms as T
from .algebra import (
    AlgebraElement,
    DaggerPresentation,
    _reduce_hyperelliptic,
    complete_presentation,
    free,
    product,
)
from .errors import (
    CompletedModeError,
    ContextMismatchError,
    UncertifiedPrecisionError,
    UncertifiedRadiusError,
    UnsupportedFamilyError,
)
from .laurent import DISC, TORUS, LaurentSeries, valuation_loss_bound
from .linalg import rank
from .scalar import INF, format_rational, format_valuation, to_rational, to_slope, valuation
from .series import Certificate, OSeries

HYPERELLIPTIC_BASIS = "dx/y"
PLUS_PART_NOTE = "plus part b(x) dx is exact (d of its x-antiderivative); H^1 basis is x^i dx/y, i < 2g"


# forms -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DifferentialForm:
    presentation: DaggerPresentation
    degree: int
    components: dict = field(default_factory=dict)

    @property
    def is_hyperelliptic(self):
        return self.presentation.family == "hyperelliptic"

    def label(self, index):
        if self.is_hyperelliptic:
            return HYPERELLIPTIC_BASIS if index else "1"
        if not index:
            return "1"
        return "^".join("d" + self.presentation.coords[i] for i in index)

    def same_terms(self, other):
        keys = set(self.components) | set(other.components)
        return all(_terms_of(self.components.get(k)) == _terms_of(other.components.get(k)) for k in keys)

    def is_zero(self):
        return all(not c.terms for c in self.components.values())

    def _combine(self, other, sign):
        if other.presentation is not self.presentation and other.presentation != self.presentation:
            raise ContextMismatchError("forms live on different presentations")
        if other.degree != self.degree:
            raise ValueError("forms of different degree")
        out = dict(self.components)
        for k, c in other.components.items():
            if k in out:
                out[k] = out[k] + c if sign > 0 else out[k] - c
            else:
                out[k] = c if sign > 0 else -c
        return DifferentialForm(self.presentation, self.degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, s):
        return DifferentialForm(self.presentation, self.degree, {k: c.scale(s) for k, c in self.components.items()})

    def to_json(self):
        return {
            "degree": self.degree,
            "components": [{"basis": self.label(k), "index": list(k), "coefficient": c.to_json()}
                           for k, c in sorted(self.components.items())],
        }


def _terms_of(c):
    return c.terms if c is not None else {}


def _coefficient(P: DaggerPresentation, value):
    """Coerce to the coefficient space of forms on ``P``."""
    if isinstance(value, AlgebraElement):
        value = value.normal_form
    t = P.working_slope
    if P.family == "hyperelliptic":
        if isinstance(value, dict):
            value = OSeries.polynomial(P.p, P.vars, value, t=t)
        if not isinstance(value, OSeries) or value.vars != P.vars:
            raise ContextMismatchError("hyperelliptic coefficients are series in (x, y)")
        if value.degree_in(1) > 1:
            value = _reduce_hyperelliptic(value, P)
        return value.complete() if P.completed and not value.completed else value
    if isinstance(value, dict):
        value = LaurentSeries(P.p, P.coords, P.kinds, value, t=t, completed=P.completed)
    elif isinstance(value, OSeries):
        if value.vars != P.coords:
            raise ContextMismatchError(f"coefficient variables {value.vars} differ from coordinates {P.coords}")
        value = LaurentSeries(P.p, P.coords, P.kinds, value.terms, value.cert, completed=value.completed,
                              _trusted=True)
    if not isinstance(value, LaurentSeries) or value.vars != P.coords or value.p != P.p:
        raise ContextMismatchError("coefficient does not match the presentation")
    if P.completed and not value.completed:
        value = LaurentSeries(P.p, P.coords, P.kinds, value.terms, t=0, M=value.cert.M, completed=True,
                              _trusted=True)
    return value


def form(P: DaggerPresentation, degree: int, components) -> DifferentialForm:
    """Build a form from ``{index: coefficient}``; coefficients may be term dicts."""
    out = {}
    for index, value in components.items():
        index = tuple(index)
        if len(index) != degree or list(index) != sorted(set(index)):
            raise ValueError(f"basis index {index} must be strictly increasing of length {degree}")
        if P.family == "hyperelliptic":
            if degree > 1 or any(i != 0 for i in index):
                raise ValueError("hyperelliptic forms have degree 0 or 1 with basis dx/y")
        elif any(i >= len(P.coords) for i in index):
            raise ValueError(f"basis index {index} out of range")
        out[index] = _coefficient(P, value)
    return DifferentialForm(P, degree, out)


def function(P, value):
    return form(P, 0, {(): value})


def one_form(P, value, i=0):
    return form(P, 1, {(i,): value})


def _zero(P):
    if P.family == "hyperelliptic":
        return OSeries(P.p, P.vars, {}, t=P.working_slope, completed=P.completed)
    return LaurentSeries(P.p, P.coords, P.kinds, {}, t=P.working_slope, completed=P.completed)


def _sign(index, j):
    return -1 if sum(1 for i in index if i < j) % 2 else 1


# exterior derivative -------------------------------------------------------------------

def d(omega: DifferentialForm) -> DifferentialForm:
    P = omega.presentation
    if P.family == "hyperelliptic":
        return _d_hyperelliptic(omega)
    if omega.degree >= len(P.coords):
        return DifferentialForm(P, omega.degree + 1, {})
    out = {}
    for index, f in omega.components.items():
        for j in range(len(P.coords)):
            if j in index:
                continue
            df = f.derivative(j)
            if not df.terms and df.is_exact:
                continue
            new = tuple(sorted(index + (j,)))
            if _sign(index, j) < 0:
                df = -df
            out[new] = out[new] + df if new in out else df
    return DifferentialForm(P, omega.degree + 1, out)


def _hyper_parts(h: OSeries):
    """``(a, b)`` term dicts in x with ``h = a + b*y``."""
    a, b = {}, {}
    for (i, j), c in h.terms.items():
        (a if j == 0 else b)[(i,)] = c
    return a, b


def _d_hyperelliptic(omega):
    P = omega.presentation
    if omega.degree >= 1:
        return DifferentialForm(P, 2, {})
    h = omega.components.get(())
    if h is None:
        return DifferentialForm(P, 1, {})
    Q = P.params["Q"].terms
    Qp = {(e[0] - 1,): c * e[0] for e, c in Q.items() if e[0]}
    a, b = _hyper_parts(h)
    da = {(e[0] - 1,): c * e[0] for e, c in a.items() if e[0]}
    db = {(e[0] - 1,): c * e[0] for e, c in b.items() if e[0]}
    # d(a + b y) = [a' y + b' Q + b Q'/2] dx/y
    minus = T.add(T.mul(db, Q), T.mul(b, Qp), Fraction(1, 2))
    terms = {(i, 0): c for (i,), c in minus.items()}
    terms.update({(i, 1): c for (i,), c in da.items()})
    if h.is_exact and not h.completed:
        coef = OSeries(P.p, P.vars, terms, t=h.cert.t)
    else:
        # b*Q and b*Q' raise the x-degree by up to deg Q - 2 relative to b*y
        shift = h.cert.t * max(P.params["degree"] - 2, 0)
        cert = Certificate(h.cert.t, h.cert.c - shift, h.cert.M - shift)
        coef = OSeries(P.p, P.vars, terms, cert, completed=h.completed, _trusted=True)
    return DifferentialForm(P, 1, {(0,): coef})


# antiderivative on the disc --------------------------------------------------------------

def _disc_integrand(omega):
    """``(P, f)`` with ``omega = f dT`` on a one-dimensional free disc."""
    if isinstance(omega, DifferentialForm):
        P = omega.presentation
        if P.family != "free" or len(P.coords) != 1 or omega.degree != 1:
            raise UnsupportedFamilyError("antiderivative is defined for 1-forms on the one-dimensional disc")
        f = omega.components.get((0,)) or _zero(P)
        return P, f
    if isinstance(omega, (OSeries, LaurentSeries)):
        if omega.n != 1:
            raise UnsupportedFamilyError("antiderivative is defined on the one-dimensional disc")
        return None, omega
    raise TypeError("expected a DifferentialForm or a one-variable series")


def antiderivative(omega, target_slope) -> AlgebraElement:
    """F with ``dF = omega`` on stored terms, certified at ``target_slope``.

    For ``omega = f dT`` with f certified at ``(t, c, M)`` and
    ``0 < t' < t``, the primitive satisfies ``(t', c - t' - B, M - t' - B)``
    where ``B = max(0, max_n v_p(n+1) - (t - t')n)`` comes from an exact scan.
    """
    P, f = _disc_integrand(omega)
    if f.completed or f.cert.t == 0:
        raise CompletedModeError("completed (slope-0) forms carry no overconvergence to integrate with")
    t = f.cert.t
    t2 = to_slope(target_slope)
    if not 0 < t2 < t:
        raise UncertifiedRadiusError(
            f"target slope {format_rational(t2)} must lie strictly between 0 and {format_rational(t)}")
    if any(e[0] < 0 for e in f.terms):
        raise ValueError("disc forms have no negative exponents")
    scan = valuation_loss_bound(f.p, t - t2)
    loss = t2 + scan.bound
    terms = {(e[0] + 1,): c / (e[0] + 1) for e, c in f.terms.items()}
    cert = Certificate(t2, f.cert.c - loss, f.cert.M - loss)
    if P is None:
        P = free(f.p, f.vars, t2)
    F = OSeries(f.p, P.coords, terms, cert)
    return AlgebraElement(P, F)


# reduction in cohomology -----------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    representative: DifferentialForm
    exact_part: object
    residual_valuation: Fraction | float = INF
    certificate: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.representative, self.exact_part))


def reduce_in_cohomology(omega: DifferentialForm, P: DaggerPresentation | None = None, cutoff=40) -> Reduction:
    """Split ``omega = representative + d(exact_part)`` with the representative in the candidate span."""
    P = omega.presentation if P is None else P
    if omega.presentation != P:
        raise ContextMismatchError("form does not live on the given presentation")
    cutoff = to_rational(cutoff)
    if P.completed:
        raise CompletedModeError("cohomological reduction needs dagger-mode certificates")
    for c in omega.components.values():
        if c.cert.M < cutoff:
            raise UncertifiedPrecisionError(
                f"form known only to w >= {format_valuation(c.cert.M)}, below cutoff {format_rational(cutoff)}")
    if P.family == "hyperelliptic":
        return _reduce_hyperelliptic_form(omega, cutoff)
    if P.is_product:
        return _reduce_product_form(omega)
    raise UnsupportedFamilyError(f"no cohomological reduction for family {P.family!r}")


def _reduce_product_form(omega: DifferentialForm) -> Reduction:
    P = omega.presentation
    k = omega.degree
    m = len(P.coords)
    if k < m and not d(omega).is_zero():
        raise ValueError("only closed forms have a cohomology class")
    rep, prim = {}, {}
    for index, f in omega.components.items():
        for n, c in f.terms.items():
            e = tuple(ni + (1 if i in index else 0) for i, ni in enumerate(n))
            if not any(e):
                rep.setdefault(index, {})[n] = c
                continue
            j = next(i for i, ei in enumerate(e) if ei)
            if j not in index:
                continue
            sub = tuple(i for i in index if i != j)
            target = tuple(ni + (1 if i == j else 0) for i, ni in enumerate(n))
            bucket = prim.setdefault(sub, {})
            bucket[target] = bucket.get(target, 0) + _sign(sub, j) * c / e[j]
    t = min((f.cert.t for f in omega.components.values()), default=P.t)
    exact_certs = {}
    rep_form = DifferentialForm(P, k, {i: _restrict(omega.components[i], terms) for i, terms in rep.items()})
    pieces = {}
    for sub, terms in prim.items():
        terms = T.prune(terms)
        pieces[sub] = _primitive_series(P, terms, list(omega.components.values()), t, k)
        exact_certs["^".join("d" + P.coords[i] for i in sub) or "1"] = pieces[sub].cert.to_json()
    exact = DifferentialForm(P, k - 1, pieces)
    # self-check: omega - rep == d(exact) on stored terms
    if not (omega - rep_form).same_terms(d(exact)):
        raise ValueError("form is not closed; no cohomology class")
    exact_part = AlgebraElement(P, pieces.get((), _zero(P))) if k == 1 else exact
    residual = min((f.cert.M for f in omega.components.values()), default=INF)
    return Reduction(rep_form, exact_part, residual, exact_certs)


def _restrict(f, terms):
    return LaurentSeries(f.p, f.vars, f.kinds, T.prune(terms), f.cert, completed=f.completed, _trusted=True)


def _primitive_series(P, terms, sources, t, k):
    """Certificate for a primitive built by dividing by log exponents."""
    exact = all(f.is_exact for f in sources)
    if exact:
        return LaurentSeries(P.p, P.coords, P.kinds, terms, t=t, _trusted=True)
    if t == 0:
        raise CompletedModeError("slope-0 forms cannot be certified after integration")
    c = min(f.cert.c for f in sources)
    M = min(f.cert.M for f in sources)
    t2 = t / 2
    # v_p(e_j) <= floor(log_p |e|), |e| <= |n| + k, primitive exponent weight <= |n| + 1
    B = valuation_loss_bound(P.p, t - t2, log_bound=True).bound
    loss = t2 + B + (t - t2) * (k - 1)
    return LaurentSeries(P.p, P.coords, P.kinds, terms, Certificate(t2, c - loss, M - loss), _trusted=True)


def _reduce_hyperelliptic_form(omega: DifferentialForm, cutoff) -> Reduction:
    P = omega.presentation
    if omega.degree != 1:
        raise ValueError("only 1-forms are reduced on curves")
    h = omega.components.get((0,))
    if h is None:
        h = _zero(P)
    if not h.is_exact:
        raise UncertifiedPrecisionError("hyperelliptic reduction accepts exactly known forms only")
    Q = P.params["Q"].terms
    dq = P.params["degree"]
    Qp = {(e[0] - 1,): c * e[0] for e, c in Q.items() if e[0]}
    a, b = _hyper_parts(h)
    a = dict(a)
    exact_terms = {}
    top = max((e[0] for e in a), default=-1)
    for i in range(top, dq - 2, -1):
        lead = a.get((i,), 0)
        if not lead:
            continue
        s = i - dq + 1
        lam = 2 * lead / (2 * s + dq)
        # d(x^s y) = (s x^{s-1} Q + x^s Q'/2) dx/y
        image = T.add(T.scale(T.shift(Q, (s - 1,)), s) if s else {}, T.shift(Qp, (s,)), Fraction(1, 2))
        a = T.add(a, image, -lam)
        a.pop((i,), None)
        exact_terms[(s, 1)] = exact_terms.get((s, 1), 0) + lam
    for (i,), c in b.items():
        exact_terms[(i + 1, 0)] = exact_terms.get((i + 1, 0), 0) + c / (i + 1)
    t = h.cert.t
    rep_coef = OSeries(P.p, P.vars, {(i, 0): c for (i,), c in T.prune(a).items()}, t=t)
    rep = DifferentialForm(P, 1, {(0,): rep_coef})
    F = OSeries(P.p, P.vars, T.prune(exact_terms), t=t)
    exact_part = AlgebraElement(P, F)
    if not (omega - rep).same_terms(d(function(P, F))):
        raise ArithmeticError("hyperelliptic reduction failed its self-check")
    return Reduction(rep, exact_part, INF, {"convention": PLUS_PART_NOTE})


def hyperelliptic_form(P, minus=None, plus=None):
    """``(a(x) + b(x) y) dx/y`` from coefficient lists (low to high) or dicts ``{i: c}``."""
    terms = {}
    for j, part in ((0, minus), (1, plus)):
        if part is None:
            continue
        items = part.items() if isinstance(part, dict) else enumerate(part)
        for i, c in items:
            if c:
                terms[(i, j)] = to_rational(c)
    return one_form(P, terms, 0)


# cohomology ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeInfo:
    degree: int
    dimension: int
    basis: tuple
    certificates: tuple = ()

    def to_json(self):
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "basis": [b.to_json() for b in self.basis],
            "basis_labels": [_describe(b) for b in self.basis],
            "reduction_certificates": list(self.certificates),
        }


@dataclass(frozen=True)
class CohomologyReport:
    family: str
    degrees: tuple
    notes: tuple = ()
    window: dict = field(default_factory=dict)

    @property
    def dims(self):
        return tuple(d.dimension for d in self.degrees)

    def to_json(self):
        return {
            "family": self.family,
            "dims": list(self.dims),
            "degrees": [d.to_json() for d in self.degrees],
            "notes": list(self.notes),
            "window": self.window,
        }


def _describe(f: DifferentialForm):
    parts = []
    for index, c in sorted(f.components.items()):
        for e, a in T.sorted_items(c.terms):
            mono = "*".join(f"{v}^{k}" for v, k in zip(c.vars, e) if k) or "1"
            parts.append(f"{format_rational(a)}*{mono}*{f.label(index)}" if index else f"{format_rational(a)}*{mono}")
    return " + ".join(parts) or "0"


def _koszul_window(P, width):
    ranges = [range(-width, width + 1) if k == TORUS else range(0, width + 1) for k in P.kinds]
    return list(iproduct(*ranges))


def _allowed(P, e, index):
    return all(e[i] >= 1 for i in index if P.kinds[i] == DISC) and \
        all(e[i] >= 0 for i in range(len(e)) if P.kinds[i] == DISC)


def product_dims(P: DaggerPresentation, width=3):
    """Exact ranks of the log-basis complex over a multidegree window."""
    m = len(P.coords)
    cells = [list(combinations(range(m), k)) for k in range(m + 1)]
    dims = [0] * (m + 1)
    for e in _koszul_window(P, width):
        spaces = [[I for I in cells[k] if _allowed(P, e, I)] for k in range(m + 1)]
        ranks = []
        for k in range(m):
            pos = {I: r for r, I in enumerate(spaces[k + 1])}
            rows = []
            for I in spaces[k]:
                row = [Fraction(0)] * len(spaces[k + 1])
                for j in range(m):
                    if j in I or not e[j]:
                        continue
                    J = tuple(sorted(I + (j,)))
                    if J in pos:
                        row[pos[J]] += _sign(I, j) * e[j]
                rows.append(row)
            ranks.append(rank(rows) if rows and spaces[k + 1] else 0)
        for k in range(m + 1):
            out_rank = ranks[k] if k < m else 0
            in_rank = ranks[k - 1] if k > 0 else 0
            dims[k] += len(spaces[k]) - out_rank - in_rank
    return dims


def _product_basis(P, k):
    tori = [i for i, kind in enumerate(P.kinds) if kind == TORUS]
    out = []
    for I in combinations(tori, k):
        e = tuple(-1 if i in I else 0 for i in range(len(P.coords)))
        out.append(form(P, k, {I: {e: 1}}))
    return out


def hyperelliptic_dims(P, extra=4):
    """``(dim H^0, dim H^1)`` from exact ranks on a degree truncation."""
    Q = P.params["Q"].terms
    dq = P.params["degree"]
    Qp = {(e[0] - 1,): c * e[0] for e, c in Q.items() if e[0]}
    n_minus, n_plus = dq + extra, extra
    rows = []
    for j in range(n_plus + 1):
        row = [Fraction(0)] * (n_minus + n_plus)
        if j:
            row[n_minus + j - 1] = Fraction(j)
        rows.append(row)
    for s in range(n_minus - dq + 1):
        image = T.add(T.scale(T.shift(Q, (s - 1,)), s) if s else {}, T.shift(Qp, (s,)), Fraction(1, 2))
        row = [Fraction(0)] * (n_minus + n_plus)
        for (i,), c in image.items():
            row[i] += c
        rows.append(row)
    r = rank(rows)
    return len(rows) - r, n_minus + n_plus - r


def cohomology(P: DaggerPresentation, cutoff=40, width=3) -> CohomologyReport:
    cutoff = to_rational(cutoff)
    if P.completed:
        raise CompletedModeError("cohomology is computed in dagger mode only")
    if P.is_product:
        dims = product_dims(P, width)
        degrees = []
        for k, dim in enumerate(dims):
            basis = _product_basis(P, k)
            if len(basis) != dim:
                raise ArithmeticError("log-basis classes do not match the computed dimension")
            certs = []
            for b in basis:
                if k:
                    red = reduce_in_cohomology(b, P, cutoff)
                    certs.append({"idempotent": red.representative.same_terms(b)})
            degrees.append(DegreeInfo(k, dim, tuple(basis), tuple(certs)))
        return CohomologyReport(P.family, tuple(degrees), ("dimensions are exact ranks over the multidegree window",),
                                {"multidegree_width": width})
    if P.family == "hyperelliptic":
        h0, h1 = hyperelliptic_dims(P)
        genus = P.params["genus"]
        basis1 = [hyperelliptic_form(P, {i: 1}) for i in range(2 * genus)]
        certs = []
        for b in basis1:
            red = reduce_in_cohomology(b, P, cutoff)
            certs.append({"idempotent": red.representative.same_terms(b)})
        degrees = (
            DegreeInfo(0, h0, (function(P, {(0, 0): 1}),)),
            DegreeInfo(1, h1, tuple(basis1), tuple(certs)),
        )
        return CohomologyReport(P.family, degrees, (PLUS_PART_NOTE,), {"degree_padding": 4})
    raise UnsupportedFamilyError(f"no cohomology for family {P.family!r}")


def kunneth(P1: DaggerPresentation, P2: DaggerPresentation, cutoff=40):
    """Compare dim H^*(P1 x P2) with the tensor-product prediction."""
    for P in (P1, P2):
        if not P.is_product:
            raise UnsupportedFamilyError("Künneth check needs disc/torus factors")
    if P1.p != P2.p:
        raise ContextMismatchError("factors over different primes")
    names2 = tuple(c if c not in P1.coords else c + "2" for c in P2.coords)
    Pxy = product(P1.p, P1.coords + names2, P1.kinds + P2.kinds, min(P1.t, P2.t))
    a, b = cohomology(P1, cutoff).dims, cohomology(P2, cutoff).dims
    predicted = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            predicted[i + j] += x * y
    computed = list(cohomology(Pxy, cutoff).dims)
    return {
        "factors": [_factor_name(P1), _factor_name(P2)],
        "factor_dims": [list(a), list(b)],
        "predicted": predicted,
        "computed": computed,
        "match": predicted == computed,
    }


def _factor_name(P):
    return "x".join(P.kinds)


# the dagger / completed contrast ---------------------------------------------------------------------

def _best_fit_slope(terms, p):
    """Largest t with ``v(b_n) >= (w_0 - 1) + t*n`` for every stored ``n >= 1``."""
    w0 = min(valuation(c, p) for c in terms.values())
    return min(((valuation(c, p) - w0 + 1) / e[0] for e, c in terms.items() if e[0]), default=INF)


def completed_contrast(P: DaggerPresentation | int, witness_depth: int, t=1):
    """Contrast the completed disc with its dagger twin on ``sum p^k T^(p^k - 1) dT``."""
    if isinstance(P, int):
        P = free(P, ("T",))
    if P.family != "free" or len(P.coords) != 1:
        raise UnsupportedFamilyError("the contrast is built on the one-dimensional disc")
    p, K = P.p, int(witness_depth)
    if K < 0:
        raise ValueError("witness depth must be >= 0")
    t = to_slope(t)
    Pc = complete_presentation(P)
    rows, slopes = [], []
    for depth in range(K + 1):
        F = {(p ** k,): Fraction(1) for k in range(depth + 1)}
        slopes.append(_best_fit_slope(F, p))
    for k in range(K + 1):
        rows.append({"exponent": p ** k, "coefficient": "1", "valuation": "0"})
    omega_terms = {(p ** k - 1,): Fraction(p) ** k for k in range(K + 1)}
    omega_c = one_form(Pc, omega_terms)
    try:
        antiderivative(omega_c, t / 2)
        completed_status = "integrated"
    except CompletedModeError as exc:
        completed_status = f"rejected ({exc.kind})"
    Pd = free(p, P.coords, t)
    witness = {(p ** k - 1,): Fraction(p) ** (math.ceil(t * (p ** k - 1)) + k) for k in range(K + 1)}
    wf = one_form(Pd, LaurentSeries(p, Pd.coords, Pd.kinds, witness, Certificate(t, Fraction(0)), _trusted=True))
    F = antiderivative(wf, t / 2)
    monotone = all(a > b for a, b in zip(slopes, slopes[1:]))
    return {
        "p": p,
        "depth": K,
        "omega": [{"exponent": e[0], "coefficient": format_rational(c)} for e, c in T.sorted_items(omega_terms)],
        "antiderivative_valuations": rows,
        "best_fit_slopes": [format_rational(s) for s in slopes],
        "best_fit_rule": "largest t with v(b_n) >= (min valuation - 1) + t*n on stored terms",
        "monotone_to_zero": monotone,
        "completed_antiderivative": completed_status,
        "dagger_witness": {
            "coefficients": [{"exponent": e[0], "coefficient": format_rational(c)}
                             for e, c in T.sorted_items(witness)],
            "input_certificate": wf.components[(0,)].cert.to_json(),
            "antiderivative_certificate": F.normal_form.cert.to_json(),
            "integrates": True,
        },
        "contrast": K >= 1 and monotone,
    }
