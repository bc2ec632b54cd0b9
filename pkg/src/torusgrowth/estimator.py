"""scikit-learn style wrappers.

``GrowthSeriesEstimator`` has nothing to learn from data: ``fit`` assembles
the rational series and certifies it against breadth-first search, and
``predict`` expands it at the requested radii.  ``WordMetricTransformer``
maps words over ``a A b B t T`` to their word lengths.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .laurent import n_length, word_representative
from .reduction import reduce_full
from .series import assemble_growth_series, expand_coeffs

__all__ = ["GrowthSeriesEstimator", "WordMetricTransformer"]


class GrowthSeriesEstimator(BaseEstimator):
    """Growth series of the group with parameter ``k``.

    ``fit`` raises :class:`~torusgrowth.series.CertificationError` when the
    assembled series disagrees with the oracle up to ``verify_to``.
    """

    def __init__(self, k: int = 2, mode: str = "sphere", verify_to: int = 10):
        self.k = k
        self.mode = mode
        self.verify_to = verify_to

    def fit(self, X=None, y=None, verify_to: int | None = None):
        # X and y are accepted for pipeline compatibility and ignored
        r = self.verify_to if verify_to is None else verify_to
        res = assemble_growth_series(self.k, r, mode=self.mode)
        self.series_ = res.series
        self.verified_radius_ = res.verified_radius
        return self

    def predict(self, X):
        if not hasattr(self, "series_"):
            raise NotFittedError("call fit before predict")
        radii = np.asarray(X, dtype=int).ravel()
        if radii.size == 0:
            return np.zeros(0, dtype=object)
        if radii.min() < 0:
            raise ValueError("radii must be non-negative")
        coeffs = expand_coeffs(self.series_, int(radii.max()))
        return np.array([coeffs[r] for r in radii], dtype=object)


class WordMetricTransformer(TransformerMixin, BaseEstimator):
    """Word length of each input word, via reduction of its representative.

    Exact when the input word is geodesic; otherwise an upper bound.
    """

    def __init__(self, k: int = 2):
        self.k = k

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        out = []
        for w in X:
            F, n = word_representative(str(w))
            out.append(n_length(reduce_full(F, n, self.k), n)[0])
        return np.asarray(out, dtype=int).reshape(-1, 1)
