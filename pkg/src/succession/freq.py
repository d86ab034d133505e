"""Frequency statistics of an observed symbol stream.

Counts are stored sparsely so that alphabets as large as 2**32 stay cheap;
only symbols that have actually been observed occupy memory.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator


class FrequencyVector:
    """Counts ``n_i`` over an alphabet of ``k`` symbols plus derived statistics.

    Maintained incrementally:

    * ``n`` -- total number of observations
    * ``q`` -- number of attested symbols (``n_i > 0``)
    * ``q_prime`` -- number of symbols seen at least twice
    * ``fof(j)`` -- frequency of frequencies, with ``fof(0) == k - q``
    """

    __slots__ = ("k", "n", "q", "q_prime", "_counts", "_fof")

    def __init__(self, k: int):
        k = int(k)
        if k < 1:
            raise ValueError(f"alphabet size must be >= 1, got {k}")
        self.k = k
        self.n = 0
        self.q = 0
        self.q_prime = 0
        self._counts: dict[int, int] = {}
        self._fof: dict[int, int] = {}

    @classmethod
    def from_counts(cls, k: int, counts: Iterable[int]) -> FrequencyVector:
        fv = cls(k)
        for i, c in enumerate(counts):
            if i >= fv.k:
                raise ValueError(f"more counts than alphabet size {fv.k}")
            c = int(c)
            if c < 0:
                raise ValueError(f"negative count {c} for symbol {i}")
            if c:
                fv._counts[i] = c
                fv._fof[c] = fv._fof.get(c, 0) + 1
                fv.n += c
                fv.q += 1
                if c > 1:
                    fv.q_prime += 1
        return fv

    def _check(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.k:
            raise ValueError(f"symbol {i} outside alphabet [0, {self.k})")
        return i

    def observe(self, i: int) -> FrequencyVector:
        """Record one occurrence of symbol ``i`` in place; returns ``self``."""
        i = self._check(i)
        c = self._counts.get(i, 0)
        self._counts[i] = c + 1
        self.n += 1
        if c == 0:
            self.q += 1
        else:
            left = self._fof[c] - 1
            if left:
                self._fof[c] = left
            else:
                del self._fof[c]
            if c == 1:
                self.q_prime += 1
        self._fof[c + 1] = self._fof.get(c + 1, 0) + 1
        return self

    def observed(self, i: int) -> FrequencyVector:
        """A copy with one more occurrence of ``i``."""
        return self.copy().observe(i)

    def copy(self) -> FrequencyVector:
        other = FrequencyVector(self.k)
        other.n, other.q, other.q_prime = self.n, self.q, self.q_prime
        other._counts = dict(self._counts)
        other._fof = dict(self._fof)
        return other

    def count(self, i: int) -> int:
        return self._counts.get(self._check(i), 0)

    def fof(self, j: int) -> int:
        if j == 0:
            return self.k - self.q
        return self._fof.get(j, 0)

    def fof_items(self) -> list[tuple[int, int]]:
        """Nonzero ``(j, f_j)`` pairs for ``j >= 1``, sorted by ``j``."""
        return sorted(self._fof.items())

    def nonzero(self) -> Iterator[tuple[int, int]]:
        """``(symbol, count)`` pairs for attested symbols, in symbol order."""
        return iter(sorted(self._counts.items()))

    def positive_counts(self) -> list[int]:
        return [c for _, c in self.nonzero()]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self._counts.get(i, 0) for i in range(self.k))

    def __len__(self) -> int:
        return self.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencyVector):
            return NotImplemented
        return self.k == other.k and self._counts == other._counts

    def __hash__(self) -> int:
        return hash((self.k, frozenset(self._counts.items())))

    def __repr__(self) -> str:
        if self.k <= 16:
            return f"FrequencyVector(k={self.k}, counts={self.as_tuple()})"
        return f"FrequencyVector(k={self.k}, n={self.n}, q={self.q})"


def from_counts(k: int, counts: Iterable[int]) -> FrequencyVector:
    return FrequencyVector.from_counts(k, counts)


def observe(fv: FrequencyVector, i: int) -> FrequencyVector:
    return fv.observe(i)


def empirical_entropy_bits(fv: FrequencyVector) -> float:
    """Self-information of the counts, ``sum n_i * log2(n / n_i)``."""
    if fv.n == 0 or fv.q == 1:
        return 0.0
    n = fv.n
    return math.fsum(c * math.log2(n / c) for _, c in fv.nonzero())
