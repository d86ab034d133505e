"""Curves over n for the escape mass, inter-law ratios and sub-alphabet totals."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .freq import FrequencyVector
from .laws import SuccessionLaw, escape_mass
from .priors import SubsetScenario, log_ratio, possible_set_logprob


def balanced_vector(k: int, q: int, n: int) -> FrequencyVector:
    """``n`` observations spread as evenly as possible over the first ``q`` symbols."""
    if not 1 <= q <= min(k, n):
        raise ValueError(f"need 1 <= q <= min(k, n), got q={q}, k={k}, n={n}")
    base, extra = divmod(n, q)
    return FrequencyVector.from_counts(k, [base + (i < extra) for i in range(q)])


def skewed_vector(k: int, q: int, n: int) -> FrequencyVector:
    """One dominant symbol, the other ``q - 1`` attested once each."""
    if not 1 <= q <= min(k, n):
        raise ValueError(f"need 1 <= q <= min(k, n), got q={q}, k={k}, n={n}")
    return FrequencyVector.from_counts(k, [n - q + 1] + [1] * (q - 1))


SHAPES = {"balanced": balanced_vector, "skewed": skewed_vector}


def n_grid(n_min: int, n_max: int, points: int, log: bool = True) -> list[int]:
    if n_min < 1 or n_max < n_min:
        raise ValueError("need 1 <= n_min <= n_max")
    if log:
        grid = np.geomspace(n_min, n_max, points)
    else:
        grid = np.linspace(n_min, n_max, points)
    return sorted({int(round(v)) for v in grid})


def escape_curve(laws: Sequence[SuccessionLaw], k: int, q: int, ns: Sequence[int],
                 shape: str = "balanced") -> list[tuple]:
    rows = []
    for n in ns:
        fv = SHAPES[shape](k, q, n)
        rows.append((n, *(float(escape_mass(fv, law)) for law in laws)))
    return rows


def ratio_curve(a: SuccessionLaw, b: SuccessionLaw, k: int, q: int, ns: Sequence[int],
                shape: str = "balanced") -> list[tuple]:
    """``(n, log2 p_a - log2 p_b)`` rows."""
    return [(n, log_ratio(SHAPES[shape](k, q, n), a, b)) for n in ns]


def possible_set_curve(laws: Sequence[SuccessionLaw], k: int, b: int,
                       ns: Sequence[int]) -> list[tuple]:
    """``(n, log2 p(B^n))`` rows, one column per law."""
    return [(n, *(possible_set_logprob(SubsetScenario(k, b, n, law)) for law in laws))
            for n in ns]


def slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``ys`` against ``xs``."""
    return float(np.polyfit(np.asarray(xs, float), np.asarray(ys, float), 1)[0])
