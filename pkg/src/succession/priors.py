"""Closed-form string probabilities under the priors behind the laws.

Log-probabilities are base 2 throughout. The float path uses ``math.lgamma``;
the ``*_exact`` functions use integers and ``Fraction`` and are meant for
small oracle checks (say ``n <= 100``, ``k <= 16``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .freq import FrequencyVector
from .laws import Kind, SuccessionLaw

LN2 = math.log(2.0)

CLOSED_FORM_KINDS = frozenset({Kind.LAPLACE, Kind.LIDSTONE, Kind.SUBSETS,
                               Kind.NATURAL, Kind.ABSOLUTE, Kind.LINEAR})


class NoClosedForm(ValueError):
    """The law has no closed-form string probability."""


def _require_closed_form(law: SuccessionLaw) -> None:
    if law.kind not in CLOSED_FORM_KINDS:
        raise NoClosedForm(f"{law.name} has no closed-form string probability")


def _lg(x: float) -> float:
    return math.lgamma(x) / LN2


def log2_binom(a: int, b: int) -> float:
    return _lg(a + 1) - _lg(b + 1) - _lg(a - b + 1)


def log2_subsets_upto(k: int, m: int) -> float:
    """``log2 sum_{i=1}^{m} C(k, i)``, the number of nonempty subsets of size <= m."""
    if m >= k:
        return k + math.log1p(-(2.0 ** -k)) / LN2
    i = np.arange(1, m + 1, dtype=float)
    terms = (math.lgamma(k + 1) - gammaln(i + 1) - gammaln(k - i + 1)) / LN2
    top = terms.max()
    return float(top + np.log2(np.sum(np.exp2(terms - top))))


def multinomial_log(fv: FrequencyVector) -> float:
    """``log2(n! / prod n_i!)``."""
    return _lg(fv.n + 1) - math.fsum(_lg(c + 1) for c in fv.positive_counts())


def multinomial(fv: FrequencyVector) -> int:
    out = math.factorial(fv.n)
    for c in fv.positive_counts():
        out //= math.factorial(c)
    return out


def string_logprob(fv: FrequencyVector, law: SuccessionLaw) -> float:
    """log2 of the probability of any single string whose counts are ``fv``.

    For ``LINEAR`` the value is that of strings in which every distinct
    symbol appears before the first repeat; other orders differ.
    """
    _require_closed_form(law)
    n, q, k = fv.n, fv.q, fv.k
    if n == 0:
        return 0.0
    counts = fv.positive_counts()
    kind = law.kind
    if kind is Kind.LAPLACE:
        return -(log2_binom(n + k - 1, k - 1) + multinomial_log(fv))
    if kind is Kind.SUBSETS:
        return -(log2_subsets_upto(k, min(k, n)) + log2_binom(n - 1, q - 1)
                 + multinomial_log(fv))
    if kind is Kind.NATURAL:
        return -(math.log2(min(k, n)) + log2_binom(k, q) + log2_binom(n - 1, q - 1)
                 + multinomial_log(fv))
    if kind is Kind.LIDSTONE:
        lam = float(law.lam)
        return (math.fsum(_lg(c + lam) for c in counts) - q * _lg(lam)
                + _lg(k * lam) - _lg(n + k * lam))
    if kind is Kind.ABSOLUTE:
        d = float(law.delta)
        head = ((q - 1) * math.log2(d) + _lg(q) + _lg(k - q + 1)
                - _lg(k + 1) - _lg(n))
        return head + math.fsum(_lg(c - d) for c in counts) - q * _lg(1 - d)
    # LINEAR
    a = float(law.alpha)
    head = ((q - 1) * math.log2(a) + (n - q) * math.log2(1 - a)
            + _lg(k - q + 1) + _lg(q) - _lg(k + 1) - _lg(n))
    return head + math.fsum(_lg(c) for c in counts)


def _rising(x: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for j in range(m):
        out *= x + j
    return out


def string_prob_exact(fv: FrequencyVector, law: SuccessionLaw) -> Fraction:
    """Exact rational counterpart of :func:`string_logprob`."""
    _require_closed_form(law)
    n, q, k = fv.n, fv.q, fv.k
    if n == 0:
        return Fraction(1)
    counts = fv.positive_counts()
    kind = law.kind
    comb, fact = math.comb, math.factorial
    if kind is Kind.LAPLACE:
        return Fraction(1, comb(n + k - 1, k - 1) * multinomial(fv))
    if kind is Kind.SUBSETS:
        subsets = sum(comb(k, i) for i in range(1, min(k, n) + 1))
        return Fraction(1, subsets * comb(n - 1, q - 1) * multinomial(fv))
    if kind is Kind.NATURAL:
        return Fraction(1, min(k, n) * comb(k, q) * comb(n - 1, q - 1) * multinomial(fv))
    if kind is Kind.LIDSTONE:
        lam = Fraction(law.lam)
        num = Fraction(1)
        for c in counts:
            num *= _rising(lam, c)
        return num / _rising(k * lam, n)
    if kind is Kind.ABSOLUTE:
        d = Fraction(law.delta)
        out = d ** (q - 1) * Fraction(fact(q - 1) * fact(k - q), fact(k) * fact(n - 1))
        for c in counts:
            out *= _rising(1 - d, c - 1)
        return out
    a = Fraction(law.alpha)
    out = a ** (q - 1) * (1 - a) ** (n - q) * Fraction(
        fact(k - q) * fact(q - 1), fact(k) * fact(n - 1))
    for c in counts:
        out *= fact(c - 1)
    return out


def freqvec_logprob(fv: FrequencyVector, law: SuccessionLaw) -> float:
    """log2 of the total probability of all strings with counts ``fv``."""
    return string_logprob(fv, law) + multinomial_log(fv)


def prior_distribution(fv: FrequencyVector, law: SuccessionLaw,
                       exact: bool = False) -> list:
    """Next-symbol distribution from relative odds of the extended strings.

    ``p(i | x^n) = p(x^n i) / sum_j p(x^n j)``, computed from the prior alone.
    """
    _require_closed_form(law)
    if exact:
        weights = [string_prob_exact(fv.observed(j), law) for j in range(fv.k)]
        total = sum(weights, Fraction(0))
        return [w / total for w in weights]
    logs = np.array([string_logprob(fv.observed(j), law) for j in range(fv.k)])
    w = np.exp2(logs - logs.max())
    return list(w / w.sum())


def conditional_from_prior(fv: FrequencyVector, i: int, law: SuccessionLaw,
                           exact: bool = False):
    _require_closed_form(law)
    if exact:
        target = string_prob_exact(fv.observed(i), law)
        total = sum((string_prob_exact(fv.observed(j), law) for j in range(fv.k)),
                    Fraction(0))
        return target / total
    return prior_distribution(fv, law)[i]


def log_ratio(fv: FrequencyVector, a: SuccessionLaw, b: SuccessionLaw) -> float:
    """``log2 p_a(x^n) - log2 p_b(x^n)`` in bits."""
    return string_logprob(fv, a) - string_logprob(fv, b)


# --- probability of the strings over a sub-alphabet --------------------------

_POSSIBLE_SET_KINDS = frozenset({Kind.LAPLACE, Kind.LIDSTONE, Kind.NATURAL, Kind.SUBSETS})


@dataclass(frozen=True)
class SubsetScenario:
    """Strings of length ``n`` confined to ``b`` of the ``k`` alphabet symbols."""

    k: int
    b: int
    n: int
    law: SuccessionLaw

    def __post_init__(self):
        if not 1 <= self.b <= self.k:
            raise ValueError(f"need 1 <= b <= k, got b={self.b}, k={self.k}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.law.kind not in _POSSIBLE_SET_KINDS:
            raise NoClosedForm(f"no possible-set total for {self.law.name}")


def _stratum_log(s: SubsetScenario, q: int) -> float:
    # Total over strings using exactly q given symbols, times C(b, q) choices.
    k, b, n = s.k, s.b, s.n
    if s.law.kind is Kind.NATURAL:
        return log2_binom(b, q) - math.log2(min(k, n)) - log2_binom(k, q)
    return log2_binom(b, q) - log2_subsets_upto(k, min(k, n))


def possible_set_logprob(s: SubsetScenario) -> float:
    """log2 of the total probability given to all ``b**n`` strings over the sub-alphabet."""
    k, b, n, law = s.k, s.b, s.n, s.law
    if law.kind is Kind.LAPLACE:
        return log2_binom(n + b - 1, b - 1) - log2_binom(n + k - 1, k - 1)
    if law.kind is Kind.LIDSTONE:
        lam = float(law.lam)
        return (_lg(n + b * lam) - _lg(b * lam)) - (_lg(n + k * lam) - _lg(k * lam))
    logs = np.array([_stratum_log(s, q) for q in range(1, min(b, n) + 1)])
    top = logs.max()
    return float(top + np.log2(np.sum(np.exp2(logs - top))))


def possible_set_stratum_logprob(s: SubsetScenario, q: int | None = None) -> float:
    """Contribution of the strings with exactly ``q`` distinct symbols (default ``b``).

    For the cardinality law and ``q = b <= n`` this is
    ``-log2(min(k, n) * C(k, b))``, which no longer depends on ``n`` once ``n >= k``.
    """
    q = s.b if q is None else q
    if s.law.kind not in (Kind.NATURAL, Kind.SUBSETS):
        raise NoClosedForm("strata are defined for the subset-based laws only")
    if not 1 <= q <= min(s.b, s.n):
        return -math.inf
    return _stratum_log(s, q)


def possible_set_prob_exact(s: SubsetScenario) -> Fraction:
    k, b, n, law = s.k, s.b, s.n, s.law
    comb = math.comb
    if law.kind is Kind.LAPLACE:
        return Fraction(comb(n + b - 1, b - 1), comb(n + k - 1, k - 1))
    if law.kind is Kind.LIDSTONE:
        lam = Fraction(law.lam)
        return _rising(b * lam, n) / _rising(k * lam, n)
    if law.kind is Kind.NATURAL:
        return sum((Fraction(comb(b, q), min(k, n) * comb(k, q))
                    for q in range(1, min(b, n) + 1)), Fraction(0))
    subsets = sum(comb(k, i) for i in range(1, min(k, n) + 1))
    return Fraction(sum(comb(b, q) for q in range(1, min(b, n) + 1)), subsets)


def laplace_decay_bound_log(k: int, b: int, n: int) -> float:
    """log2 of ``((k-1)/(n+k-1))**(k-b)``, an upper bound on the Laplace total."""
    return (k - b) * (math.log2(k - 1) - math.log2(n + k - 1)) if k > 1 else 0.0


def lidstone_stirling_log(k: int, b: int, n: int, lam: float) -> float:
    """Stirling approximation ``Gamma(k*lam)/Gamma(b*lam) * (1/(n-1))**(lam*(k-b))``.

    Numeric companion to :func:`possible_set_logprob` for the Lidstone decay.
    """
    return _lg(k * lam) - _lg(b * lam) - lam * (k - b) * math.log2(n - 1)
