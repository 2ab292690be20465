from fractions import Fraction

import pytest
from sklearn.base import clone

from daggeralg.algebra import torus
from daggeralg.derham import one_form
from daggeralg.errors import NotDistinguishedError
from daggeralg.estimators import CohomologyReducer, GaussNorm, NormalForm, WeierstrassDivider
from daggeralg.series import OSeries


def Y(terms):
    return OSeries.polynomial(5, ("Y",), {(k,): c for k, c in terms.items()})


def test_params_and_clone():
    est = WeierstrassDivider(t=0, cutoff=30, schedule="step")
    assert est.get_params() == {"var": None, "t": 0, "cutoff": 30, "schedule": "step"}
    assert clone(est).get_params() == est.get_params()
    assert GaussNorm(t=1).set_params(t=2).t == 2


def test_gauss_norm_transform():
    assert GaussNorm(t=0).fit_transform([Y({1: 5}), Y({0: 1})]) == [1, 0]


def test_divider():
    est = WeierstrassDivider(t=0).fit(Y({2: 1, 0: -5}))
    assert [r.terms for r in est.transform([Y({3: 1}), Y({2: 1})])] == [{(1,): 5}, {(0,): 5}]
    assert est.predict(Y({3: 1}))[0].terms == {(1,): 1}
    with pytest.raises(RuntimeError):
        WeierstrassDivider().transform([Y({1: 1})])
    with pytest.raises(NotDistinguishedError):
        WeierstrassDivider().fit(OSeries.polynomial(5, ("X", "Y"), {(1, 1): 1}))
    with pytest.raises(TypeError):
        est.transform([3])


def test_normal_form_and_cohomology():
    P = torus(5)
    nf = NormalForm(P).fit()
    assert nf.transform(OSeries.polynomial(5, P.vars, {(2, 1): 1}))[0].normal_form.terms == {(1,): 1}
    red = CohomologyReducer(P).fit()
    w = one_form(P, {(-1,): 2, (1,): 1})
    assert red.transform([w])[0].components[(0,)].terms == {(-1,): 2}
    assert red.predict([w])[0].normal_form.terms == {(2,): Fraction(1, 2)}
    with pytest.raises(TypeError):
        NormalForm().fit()
