"""Sequential codelength of a symbol stream under a law of succession.

Nothing is actually entropy coded. The codelength is the analytic sum of
``-log2 p(x_{t+1} | x^t)`` over the stream, which is what an ideal
arithmetic coder would spend. Evaluation is vectorized: for every position
the statistics the laws need (count of the current symbol, ``n``, ``q``,
``q'``) are computed with numpy in one pass, then each law is a closed-form
array expression.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass

import numpy as np

from .freq import FrequencyVector, empirical_entropy_bits
from .laws import Kind, SuccessionLaw

LN2 = math.log(2.0)
SUNRISE_BYTE = ord("1")


def as_symbols(stream, k: int = 256) -> np.ndarray:
    """Validate a stream and return it as a 1-D int64 array.

    Accepts bytes-like objects, sequences of integers and integer arrays.
    """
    if isinstance(stream, (bytes, bytearray, memoryview)):
        x = np.frombuffer(stream, dtype=np.uint8).astype(np.int64)
    else:
        x = np.asarray(stream)
        if x.size == 0:
            x = x.astype(np.int64)
        if x.ndim != 1:
            raise ValueError(f"stream must be one-dimensional, got shape {x.shape}")
        if x.dtype.kind not in "iu":
            raise ValueError(f"stream must hold integers, got dtype {x.dtype}")
        x = x.astype(np.int64, copy=False)
    if x.size and (x.min() < 0 or x.max() >= k):
        bad = int(x[(x < 0) | (x >= k)][0])
        raise ValueError(f"symbol {bad} outside alphabet [0, {k})")
    return x


@dataclass
class StepStats:
    """Per-position statistics, each taken just before that symbol is seen."""

    count: np.ndarray    # occurrences of x[t] in the prefix
    n: np.ndarray
    q: np.ndarray
    q_prime: np.ndarray


def step_stats(x: np.ndarray, start: FrequencyVector | None = None) -> StepStats:
    """Statistics for every position of ``x``, optionally continuing from ``start``."""
    size = x.size
    order = np.argsort(x, kind="stable")
    sx = x[order]
    first = np.ones(size, dtype=bool)
    first[1:] = sx[1:] != sx[:-1]
    group_start = np.maximum.accumulate(np.where(first, np.arange(size), 0))
    rank = np.empty(size, dtype=np.int64)
    rank[order] = np.arange(size) - group_start
    n0 = q0 = q20 = 0
    if start is not None and start.n:
        offset = np.zeros(start.k, dtype=np.int64)
        for i, c in start.nonzero():
            offset[i] = c
        rank += offset[x]
        n0, q0, q20 = start.n, start.q, start.q_prime
    novel = rank == 0
    second = rank == 1
    q = q0 + np.cumsum(novel) - novel
    q2 = q20 + np.cumsum(second) - second
    n = n0 + np.arange(size, dtype=np.int64)
    return StepStats(rank, n, q, q2)


def step_probabilities(x: np.ndarray, law: SuccessionLaw, k: int,
                       start: FrequencyVector | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-symbol probability as a ``(numerator, denominator)`` pair of float arrays.

    Keeping the pair lets :func:`step_codelengths` evaluate ``-log2 p`` through
    ``log1p`` so probabilities close to one keep their precision.
    """
    if law.kind is Kind.GOOD_TURING:
        raise ValueError("Good-Turing is not normalized and cannot be used for coding")
    st = step_stats(x, start)
    c = st.count.astype(float)
    n = st.n.astype(float)
    q = st.q.astype(float)
    q2 = st.q_prime.astype(float)
    att = c > 0
    full = q == k
    kind = law.kind

    if kind is Kind.LAPLACE or kind is Kind.NATURAL:
        num = np.where(att, c + 1, 1.0)
        den = n + k
        if kind is Kind.NATURAL:
            e = n * n + n + 2 * q
            nat_num = np.where(att, (c + 1) * (n + 1 - q), q * (q + 1))
            nat_den = np.where(att, e, np.maximum(k - q, 1) * e)
            num = np.where(full, num, nat_num)
            den = np.where(full, den, nat_den)
    elif kind is Kind.LIDSTONE:
        lam = float(law.lam)
        num = np.where(att, c + lam, lam)
        den = n + k * lam
    elif kind is Kind.SUBSETS:
        d = (n + q) * (n + 1 - q) + q * (k - q)
        num = np.where(att, (c + 1) * (n + 1 - q), q)
        den = d
    elif kind is Kind.SHARP_SUBSETS:
        d = (n + q) * (n + 1 - q) + q * (k - q)
        num = np.where(att, c * (n + q) * (n + 1 - q), q)
        den = np.where(att, n * d, d)
    elif kind is Kind.SHARP_NATURAL:
        e = n * n + n + 2 * q
        num = np.where(att, c * (n * (n + 1) + q * (1 - q)), q * (q + 1))
        den = np.where(att, n * e, np.maximum(k - q, 1) * e)
        num = np.where(full, c, num)
        den = np.where(full, n, den)
    elif kind is Kind.METHOD_B:
        low = np.maximum(k - q2, 1) * n
        num = np.where(c >= 2, c - 1, q)
        den = np.where(c >= 2, n, low)
        all_twice = q2 == k
        num = np.where(all_twice, c, num)
        den = np.where(all_twice, n, den)
    else:
        num, den = _escape_family(kind, law, c, n, q, att, full, k)

    # Before any observation every law is uniform.
    empty = st.n == 0
    num = np.where(empty, 1.0, num)
    den = np.where(empty, float(k), den)
    return num, den


def _escape_family(kind, law, c, n, q, att, full, k):
    # Attested a/b, escape e/f split over the k - q novel symbols; when q == k
    # the escape mass is spread over all k symbols instead.
    if kind is Kind.METHOD_A:
        a, b = c, n + 1
        e, f = np.ones_like(n), n + 1
    elif kind is Kind.METHOD_C:
        a, b = c, n + q
        e, f = q, n + q
    elif kind is Kind.METHOD_D:
        a, b = 2 * c - 1, 2 * n
        e, f = q, 2 * n
    elif kind is Kind.ABSOLUTE:
        d = float(law.delta)
        a, b = c - d, n
        e, f = q * d, n
    elif kind is Kind.LINEAR:
        al = float(law.alpha)
        a, b = (1 - al) * c, n
        e, f = np.full_like(n, al), np.ones_like(n)
    else:  # pragma: no cover
        raise AssertionError(kind)
    b = np.where(b == 0, 1.0, b)
    f = np.where(f == 0, 1.0, f)
    num = np.where(att, a, e)
    den = np.where(att, b, f * np.maximum(k - q, 1))
    num = np.where(full, a * f * k + e * b, num)
    den = np.where(full, b * f * k, den)
    return num, den


def step_codelengths(x: np.ndarray, law: SuccessionLaw, k: int,
                     start: FrequencyVector | None = None) -> np.ndarray:
    """``-log2 p`` for each position of the stream."""
    num, den = step_probabilities(x, law, k, start)
    with np.errstate(divide="ignore", invalid="ignore"):
        bits = -np.log1p((num - den) / den) / LN2
    return bits


@dataclass
class CodelengthReport:
    law: str
    n: int
    q: int
    bits: float
    bytes_ceil: int
    entropy_bits: float
    entropy_bytes_ceil: int
    score_bytes: int

    def to_dict(self) -> dict:
        return asdict(self)


def _final_counts(x: np.ndarray, k: int) -> FrequencyVector:
    counts = np.bincount(x, minlength=k) if x.size else np.zeros(min(k, 1), int)
    return FrequencyVector.from_counts(k, counts.tolist())


def evaluate_stream(stream, law: SuccessionLaw, k: int = 256) -> CodelengthReport:
    """Adaptive order-0 codelength of ``stream`` and its whole-byte score.

    The score is ``ceil(bits/8) - ceil(entropy_bits/8)``, where the entropy is
    that of the final counts.
    """
    x = as_symbols(stream, k)
    bits = math.fsum(step_codelengths(x, law, k)) if x.size else 0.0
    if not math.isfinite(bits):
        raise ValueError(f"{law.name} assigned zero probability to an observed symbol")
    fv = _final_counts(x, k)
    entropy = empirical_entropy_bits(fv)
    bytes_ceil = math.ceil(bits / 8)
    entropy_bytes = math.ceil(entropy / 8)
    return CodelengthReport(law=law.name, n=int(x.size), q=fv.q, bits=bits,
                            bytes_ceil=bytes_ceil, entropy_bits=entropy,
                            entropy_bytes_ceil=entropy_bytes,
                            score_bytes=bytes_ceil - entropy_bytes)


def prefix_entropy_bits(x: np.ndarray) -> np.ndarray:
    """Empirical entropy (in bits) of every prefix ``x[:t+1]``."""
    st = step_stats(x)
    c = st.count.astype(float)
    # sum_i n_i log2 n_i gains (c+1)log2(c+1) - c log2 c at each step
    with np.errstate(divide="ignore", invalid="ignore"):
        gain = (c + 1) * np.log2(c + 1) - np.where(c > 0, c * np.log2(c), 0.0)
    t = np.arange(1, x.size + 1, dtype=float)
    return np.maximum(t * np.log2(t) - np.cumsum(gain), 0.0)


def emit_curve(stream, law: SuccessionLaw, k: int = 256, stride: int = 1,
               relative: bool = False) -> list[tuple[int, float]]:
    """Cumulative codelength after every ``stride`` symbols and at the end.

    With ``relative=True`` each point has the empirical entropy of the
    prefix subtracted.
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    x = as_symbols(stream, k)
    if x.size == 0:
        return []
    steps = step_codelengths(x, law, k)
    if not np.all(np.isfinite(steps)):
        raise ValueError(f"{law.name} assigned zero probability to an observed symbol")
    cum = np.cumsum(steps)
    # The last point is the compensated total reported by evaluate_stream.
    cum[-1] = max(math.fsum(steps), cum[-2] if x.size > 1 else 0.0)
    idx = list(range(stride - 1, x.size, stride))
    if not idx or idx[-1] != x.size - 1:
        idx.append(x.size - 1)
    idx = np.asarray(idx)
    values = cum[idx]
    if relative:
        values = values - prefix_entropy_bits(x)[idx]
    return [(int(i) + 1, float(v)) for i, v in zip(idx, values)]


def synthesize_sunrise(days: int) -> bytes:
    """``days`` successful sunrises, one ``'1'`` byte each."""
    if days < 1:
        raise ValueError("days must be >= 1")
    return bytes([SUNRISE_BYTE]) * days


def evaluate_many(stream, laws: Sequence[SuccessionLaw], k: int = 256) -> list[CodelengthReport]:
    return [evaluate_stream(stream, law, k) for law in laws]
