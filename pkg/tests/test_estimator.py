import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from succession.codec import evaluate_stream
from succession.estimator import SuccessionEstimator
from succession.laws import JEFFREYS_PERKS, parse_law


def test_params_and_clone():
    est = SuccessionEstimator(law="abs:0.5", alphabet_size=16)
    assert est.get_params() == {"law": "abs:0.5", "alphabet_size": 16}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    est.set_params(law="jp")
    assert est.law == "jp"


def test_fit_predict_proba():
    est = SuccessionEstimator("natural", alphabet_size=3).fit([0, 0, 1])
    np.testing.assert_allclose(est.predict_proba(), [6 / 16, 4 / 16, 6 / 16])
    assert est.predict() == 0
    assert est.law_ == parse_law("natural")
    assert est.frequencies_.as_tuple() == (2, 1, 0)


def test_accepts_law_objects_and_bytes():
    est = SuccessionEstimator(JEFFREYS_PERKS).fit(b"aab")
    p = est.predict_proba()
    assert p.shape == (256,) and math.isclose(p.sum(), 1.0)
    assert math.isclose(p[ord("a")], 2.5 / 131)


def test_partial_fit_accumulates():
    a = SuccessionEstimator(alphabet_size=4).fit([0, 1])
    a.partial_fit([1, 3])
    b = SuccessionEstimator(alphabet_size=4).fit([0, 1, 1, 3])
    assert a.frequencies_ == b.frequencies_
    c = SuccessionEstimator(alphabet_size=4).partial_fit([2])
    assert c.frequencies_.as_tuple() == (0, 0, 1, 0)


def test_codelength_continues_from_counts():
    data = b"mississippi river"
    est = SuccessionEstimator("laplace").fit(b"")
    assert math.isclose(est.codelength(data), evaluate_stream(data, est.law_).bits)
    warm = SuccessionEstimator("laplace").fit(data)
    before = warm.frequencies_.copy()
    assert warm.codelength(b"ssi") < est.codelength(b"ssi")
    assert warm.frequencies_ == before
    assert math.isclose(warm.score(b"ssi"), -warm.codelength(b"ssi") / 3)
    assert warm.score(b"") == 0.0


def test_errors():
    with pytest.raises(NotFittedError):
        SuccessionEstimator().predict_proba()
    with pytest.raises(ValueError):
        SuccessionEstimator(alphabet_size=0).fit([])
    with pytest.raises(ValueError):
        SuccessionEstimator(alphabet_size=2).fit([0, 2])
    with pytest.raises(ValueError):
        SuccessionEstimator(law="nope").fit([0])
