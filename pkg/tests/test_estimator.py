from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from torusgrowth.estimator import GrowthSeriesEstimator, WordMetricTransformer
from torusgrowth.group import GroupParams, bfs_ball
from torusgrowth.series import CertificationError


def test_transformer_on_geodesics():
    table = bfs_ball(GroupParams(2), 5, keep_words=True)
    items = list(table.distances.items())[::37]
    words = [table.geodesic(g) for g, _ in items]
    got = WordMetricTransformer(k=2).fit_transform(words)
    assert got.shape == (len(words), 1)
    assert got.ravel().tolist() == [d for _, d in items]


def test_estimator_params_and_clone():
    est = GrowthSeriesEstimator(k=3, verify_to=4)
    assert est.get_params() == {"k": 3, "mode": "sphere", "verify_to": 4}
    assert clone(est).get_params() == est.get_params()


def test_predict_requires_fit():
    with pytest.raises(NotFittedError):
        GrowthSeriesEstimator().predict([0, 1])


def test_fit_certifies():
    # the assembled series does not match the oracle; fit must say so
    with pytest.raises(CertificationError):
        GrowthSeriesEstimator(k=2).fit(verify_to=3)


def test_predict_after_manual_series():
    est = GrowthSeriesEstimator(k=2)
    from torusgrowth.series import PolyT, RationalT

    est.series_ = RationalT(PolyT([1, 1]) ** 2, PolyT([1, -1]) ** 2)
    assert est.predict(np.array([0, 2, 4])).tolist() == [1, 8, 16]
