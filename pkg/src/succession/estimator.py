"""Scikit-learn style wrapper around an adaptive order-0 model."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .codec import as_symbols, step_codelengths
from .freq import FrequencyVector
from .laws import SuccessionLaw, distribution, parse_law


class SuccessionEstimator(BaseEstimator):
    """Next-symbol estimator driven by a law of succession.

    Parameters
    ----------
    law : str or SuccessionLaw, default="natural"
        Estimation rule, e.g. ``"natural"``, ``"jp"``, ``"abs:0.5"``.
    alphabet_size : int, default=256
        Number of distinct symbols ``k``.

    Attributes
    ----------
    law_ : SuccessionLaw
    frequencies_ : FrequencyVector
        Counts of everything passed to ``fit`` / ``partial_fit``.

    Examples
    --------
    >>> est = SuccessionEstimator("natural", alphabet_size=3).fit([0, 0, 1])
    >>> est.predict_proba().round(4).tolist()
    [0.375, 0.25, 0.375]
    """

    def __init__(self, law="natural", alphabet_size=256):
        self.law = law
        self.alphabet_size = alphabet_size

    def _resolve_law(self) -> SuccessionLaw:
        if isinstance(self.law, SuccessionLaw):
            return self.law
        return parse_law(str(self.law))

    def fit(self, X, y=None):
        """Count the symbols of ``X`` (a 1-D symbol sequence or bytes)."""
        self.law_ = self._resolve_law()
        k = int(self.alphabet_size)
        if k < 1:
            raise ValueError("alphabet_size must be >= 1")
        x = as_symbols(X, k)
        counts = np.bincount(x, minlength=k) if x.size else [0]
        self.frequencies_ = FrequencyVector.from_counts(k, list(counts))
        return self

    def partial_fit(self, X, y=None):
        if not hasattr(self, "frequencies_"):
            return self.fit(X)
        for s in as_symbols(X, self.frequencies_.k).tolist():
            self.frequencies_.observe(s)
        return self

    def predict_proba(self) -> np.ndarray:
        """Distribution of the next symbol given the counts so far, shape ``(k,)``."""
        check_is_fitted(self, "frequencies_")
        return np.asarray(distribution(self.frequencies_, self.law_), dtype=float)

    def predict(self) -> int:
        """Most probable next symbol (lowest index on ties)."""
        return int(np.argmax(self.predict_proba()))

    def codelength(self, X) -> float:
        """Bits to code ``X`` adaptively, continuing from the fitted counts.

        The fitted state is left unchanged.
        """
        check_is_fitted(self, "frequencies_")
        x = as_symbols(X, self.frequencies_.k)
        if x.size == 0:
            return 0.0
        return math.fsum(step_codelengths(x, self.law_, self.frequencies_.k,
                                          start=self.frequencies_))

    def score(self, X, y=None) -> float:
        """Mean log2-probability per symbol of ``X`` (higher is better)."""
        x = as_symbols(X, self.alphabet_size)
        if x.size == 0:
            return 0.0
        return -self.codelength(x) / x.size
