"""Brute-force checks of the laws against independent routes.

Each suite enumerates small cases exhaustively (or samples them with a fixed
seed) and compares two computations that share no code path:

* normalization: the per-symbol conditionals of every law sum to one;
* oracle equivalence: relative odds of the prior-based string probabilities
  reproduce the closed-form conditionals;
* telescoping: the product of sequential conditionals equals the closed-form
  string probability;
* totality: string probabilities summed over every string of length n give 1.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .freq import FrequencyVector
from .laws import (LAPLACE, Kind, NATURAL, SUBSETS, SuccessionLaw,
                   TABLE_LAWS, SHARP_NATURAL, SHARP_SUBSETS, absolute,
                   conditional, distribution, lidstone, linear)
from .priors import prior_distribution, string_logprob, string_prob_exact

NORMALIZED_LAWS: tuple[SuccessionLaw, ...] = (
    *TABLE_LAWS, lidstone(0.25), lidstone(1), lidstone(2), SHARP_SUBSETS,
    SHARP_NATURAL, absolute(0.25), absolute(0.5), absolute(0.75),
    linear(0.1), linear(0.5))

PRIOR_LAWS: tuple[SuccessionLaw, ...] = (
    LAPLACE, SUBSETS, NATURAL, lidstone(Fraction(1, 4)), lidstone(Fraction(1, 2)),
    lidstone(1), lidstone(2))


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{self.name}: {verdict} ({self.cases} cases, "
                f"{len(self.failures)} failures, {self.seconds:.2f}s)")


def iter_frequency_vectors(k: int, max_n: int) -> Iterator[FrequencyVector]:
    """Every count vector over ``k`` symbols with total ``0..max_n``."""
    for n in range(max_n + 1):
        # stars and bars
        for bars in itertools.combinations(range(n + k - 1), k - 1):
            prev = -1
            counts = []
            for b in bars:
                counts.append(b - prev - 1)
                prev = b
            counts.append(n + k - 1 - prev - 1)
            yield FrequencyVector.from_counts(k, counts)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def check_normalization(max_k: int = 6, max_n: int = 10, tol: float = 1e-9,
                        laws=NORMALIZED_LAWS, random_cases: int = 0,
                        seed: int = 0) -> CheckResult:
    start = time.perf_counter()
    res = CheckResult("normalization")

    def check(fv):
        for law in laws:
            total = math.fsum(distribution(fv, law))
            res.cases += 1
            if abs(total - 1.0) > tol:
                res.failures.append(f"{law.name} {fv!r}: sum={total!r}")

    for k in range(1, max_k + 1):
        for fv in iter_frequency_vectors(k, max_n):
            check(fv)
    rng = random.Random(seed)
    for _ in range(random_cases):
        k = rng.choice((2, 3, 5, 256))
        n = rng.randint(0, 10_000)
        # random composition drawn from a random sub-alphabet
        b = rng.randint(1, k)
        symbols = rng.sample(range(k), b)
        counts = [0] * k
        for s in rng.choices(symbols, k=n):
            counts[s] += 1
        check(FrequencyVector.from_counts(k, counts))
    res.seconds = time.perf_counter() - start
    return res


def check_oracle_equivalence(max_k: int = 6, max_n: int = 10, tol: float = 1e-9,
                             exact: bool = False, laws=PRIOR_LAWS) -> CheckResult:
    start = time.perf_counter()
    res = CheckResult("oracle equivalence" + (" (exact)" if exact else ""))
    for k in range(1, max_k + 1):
        for fv in iter_frequency_vectors(k, max_n):
            for law in laws:
                res.cases += 1
                want = distribution(fv, law, exact=exact)
                got = prior_distribution(fv, law, exact=exact)
                if exact:
                    bad = got != want
                else:
                    bad = any(_rel(g, w) > tol for g, w in zip(got, want))
                if bad:
                    res.failures.append(f"{law.name} {fv!r}")
    res.seconds = time.perf_counter() - start
    return res


def sequential_logprob(string, law: SuccessionLaw, k: int) -> float:
    """log2 of the product of sequential conditionals along ``string``."""
    fv = FrequencyVector(k)
    total = []
    for s in string:
        total.append(math.log2(conditional(fv, s, law)))
        fv.observe(s)
    return math.fsum(total)


def sequential_prob_exact(string, law: SuccessionLaw, k: int) -> Fraction:
    fv = FrequencyVector(k)
    out = Fraction(1)
    for s in string:
        out *= conditional(fv, s, law, exact=True)
        fv.observe(s)
    return out


TELESCOPING_LAWS: tuple[SuccessionLaw, ...] = (
    LAPLACE, lidstone(0.25), lidstone(0.5), lidstone(1), lidstone(2),
    absolute(0.25), absolute(0.5), absolute(0.75))


def random_strings(count: int, max_k: int = 8, max_n: int = 200, seed: int = 0,
                   proper_subset: bool = False) -> list[tuple[int, list[int]]]:
    """``(k, string)`` pairs; with ``proper_subset`` each string misses a symbol."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(2, max_k)
        n = rng.randint(1, max_n)
        b = rng.randint(1, k - 1) if proper_subset else k
        symbols = rng.sample(range(k), b)
        out.append((k, [rng.choice(symbols) for _ in range(n)]))
    return out


def check_telescoping(count: int = 500, tol: float = 1e-7, seed: int = 0,
                      laws=TELESCOPING_LAWS) -> CheckResult:
    """Sequential product against the closed form.

    The discounting closed forms hold while a novel symbol remains
    (``q < k``), so their strings are drawn from a proper sub-alphabet.
    """
    start = time.perf_counter()
    res = CheckResult("telescoping")
    full = random_strings(count, seed=seed)
    partial = random_strings(count, seed=seed + 1, proper_subset=True)
    for law in laws:
        cases = partial if law.kind in (Kind.ABSOLUTE, Kind.LINEAR) else full
        for k, s in cases:
            fv = FrequencyVector.from_counts(k, [s.count(i) for i in range(k)])
            res.cases += 1
            a, b = sequential_logprob(s, law, k), string_logprob(fv, law)
            if _rel(a, b) > tol:
                res.failures.append(f"{law.name} k={k} n={len(s)}: {a!r} vs {b!r}")
    res.seconds = time.perf_counter() - start
    return res


def check_totality(max_k: int = 4, max_n: int = 8,
                   laws=(LAPLACE, SUBSETS, NATURAL)) -> CheckResult:
    """Exact sum over all ``k**n`` strings of the per-string probability."""
    start = time.perf_counter()
    res = CheckResult("totality")
    for k in range(1, max_k + 1):
        for n in range(1, max_n + 1):
            tally = Counter()
            for string in itertools.product(range(k), repeat=n):
                counts = [0] * k
                for s in string:
                    counts[s] += 1
                tally[tuple(counts)] += 1
            for law in laws:
                res.cases += 1
                total = sum((m * string_prob_exact(FrequencyVector.from_counts(k, c), law)
                             for c, m in tally.items()), Fraction(0))
                if total != 1:
                    res.failures.append(f"{law.name} k={k} n={n}: total {total}")
    res.seconds = time.perf_counter() - start
    return res


def compatibility_witness(law: SuccessionLaw, max_k: int = 3, max_n: int = 4):
    """Shortest string whose sequential product differs from its prior probability.

    Returns ``(k, string, sequential, closed_form)`` or ``None``.
    """
    for n in range(1, max_n + 1):
        for k in range(2, max_k + 1):
            for string in itertools.product(range(k), repeat=n):
                fv = FrequencyVector.from_counts(k, [string.count(i) for i in range(k)])
                seq = sequential_prob_exact(string, law, k)
                closed = string_prob_exact(fv, law)
                if seq != closed:
                    return k, list(string), seq, closed
    return None


def run_all(max_k: int = 6, max_n: int = 10) -> list[CheckResult]:
    return [
        check_normalization(max_k, max_n),
        check_oracle_equivalence(max_k, max_n),
        check_telescoping(),
        check_totality(min(max_k, 4), min(max_n, 8)),
    ]
