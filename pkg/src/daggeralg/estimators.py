"""scikit-learn style wrappers over the core operations.

The math does not learn parameters, so ``fit`` only validates and stores
the fixed object (divisor, presentation); ``transform`` maps a batch of
series or forms.  ``BaseEstimator`` supplies ``get_params``/``set_params``.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .algebra import DaggerPresentation, reduce
from .derham import DifferentialForm, reduce_in_cohomology
from .series import OSeries, check_series
from .weierstrass import _require_distinguished, weierstrass_divide


def check_batch(X, kind=OSeries):
    """Return X as a list of ``kind`` instances; a single item becomes a batch of one."""
    if isinstance(X, kind):
        return [X]
    items = list(X)
    for i, item in enumerate(items):
        if not isinstance(item, kind):
            raise TypeError(f"item {i} is {type(item).__name__}, expected {kind.__name__}")
    return items


def check_is_fitted(est, attribute):
    if not hasattr(est, attribute):
        raise RuntimeError(f"{type(est).__name__} is not fitted yet; call fit first")


class GaussNorm(BaseEstimator, TransformerMixin):
    """Maps series to their t-Gauss valuations."""

    def __init__(self, t=0):
        self.t = t

    def fit(self, X=None, y=None):
        return self

    def transform(self, X):
        return [check_series(f).gauss_valuation(self.t) for f in check_batch(X)]


class WeierstrassDivider(BaseEstimator, TransformerMixin):
    """Fit on a distinguished divisor g; transform dividends into remainders.

    ``predict`` returns the quotients.
    """

    def __init__(self, var=None, t=None, cutoff=40, schedule="euclid"):
        self.var = var
        self.t = t
        self.cutoff = cutoff
        self.schedule = schedule

    def fit(self, g, y=None):
        g = check_series(g)
        var = g.n - 1 if self.var is None else self.var
        t = g.cert.t if self.t is None else self.t
        self.report_ = _require_distinguished(g, var, t)
        self.divisor_ = g
        return self

    def _divide(self, X):
        check_is_fitted(self, "divisor_")
        g = self.divisor_
        return [weierstrass_divide(f, g, self.report_.variable, self.report_.slope, self.cutoff, self.schedule)
                for f in check_batch(X)]

    def transform(self, X):
        return [res.remainder for res in self._divide(X)]

    def predict(self, X):
        return [res.quotient for res in self._divide(X)]


class NormalForm(BaseEstimator, TransformerMixin):
    """Normal forms of ambient series in a fixed presentation."""

    def __init__(self, presentation: DaggerPresentation | None = None, cutoff=40):
        self.presentation = presentation
        self.cutoff = cutoff

    def fit(self, X=None, y=None):
        if not isinstance(self.presentation, DaggerPresentation):
            raise TypeError("presentation must be a DaggerPresentation")
        self.presentation_ = self.presentation
        return self

    def transform(self, X):
        check_is_fitted(self, "presentation_")
        return [reduce(x, self.presentation_, self.cutoff) for x in check_batch(X)]


class CohomologyReducer(BaseEstimator, TransformerMixin):
    """Maps 1-forms to their cohomology representatives; ``predict`` gives exact parts."""

    def __init__(self, presentation: DaggerPresentation | None = None, cutoff=40):
        self.presentation = presentation
        self.cutoff = cutoff

    def fit(self, X=None, y=None):
        if not isinstance(self.presentation, DaggerPresentation):
            raise TypeError("presentation must be a DaggerPresentation")
        self.presentation_ = self.presentation
        return self

    def transform(self, X):
        check_is_fitted(self, "presentation_")
        return [reduce_in_cohomology(w, self.presentation_, self.cutoff).representative
                for w in check_batch(X, DifferentialForm)]

    def predict(self, X):
        check_is_fitted(self, "presentation_")
        return [reduce_in_cohomology(w, self.presentation_, self.cutoff).exact_part
                for w in check_batch(X, DifferentialForm)]
