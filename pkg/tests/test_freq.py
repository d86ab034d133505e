import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from succession.freq import FrequencyVector, empirical_entropy_bits, from_counts, observe


@pytest.mark.parametrize("k, counts, n, q, qp, fof", [
    (3, (2, 1, 0), 3, 2, 1, {0: 1, 1: 1, 2: 1}),
    (2, (0, 0), 0, 0, 0, {0: 2}),
    (4, (2, 1, 1, 0), 4, 3, 1, {0: 1, 1: 2, 2: 1}),
])
def test_from_counts(k, counts, n, q, qp, fof):
    fv = from_counts(k, counts)
    assert (fv.n, fv.q, fv.q_prime) == (n, q, qp)
    for j, f in fof.items():
        assert fv.fof(j) == f
    assert fv.fof(7) == 0


def test_observe_first_symbol():
    fv = observe(from_counts(2, [0, 0]), 0)
    assert fv.as_tuple() == (1, 0) and fv.q == 1


def test_observe_novel_symbol(fv210):
    fv = fv210.observed(2)
    assert fv.q == 3 and fv.fof(1) == 2
    assert fv210.q == 2  # observed() leaves the original alone


def test_observe_repeat(fv210):
    fv210.observe(1)
    assert (fv210.q_prime, fv210.fof(2), fv210.fof(1)) == (2, 2, 0)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        from_counts(2, [1, 2, 3])
    with pytest.raises(ValueError):
        from_counts(2, [-1, 0])
    with pytest.raises(ValueError):
        FrequencyVector(0)
    with pytest.raises(ValueError):
        FrequencyVector(3).observe(3)


def test_huge_alphabet_is_sparse():
    fv = FrequencyVector(2**32)
    fv.observe(2**32 - 1)
    assert fv.fof(0) == 2**32 - 1
    assert list(fv.nonzero()) == [(2**32 - 1, 1)]


@given(st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(0, k - 1), max_size=40))))
def test_incremental_matches_from_scratch(case):
    k, seq = case
    fv = FrequencyVector(k)
    for s in seq:
        fv.observe(s)
    ref = from_counts(k, [seq.count(i) for i in range(k)])
    assert fv == ref and hash(fv) == hash(ref)
    assert fv.fof_items() == ref.fof_items()
    assert sum(j * f for j, f in fv.fof_items() if j) == fv.n


@pytest.mark.parametrize("k, counts, bits", [
    (2, (5, 0), 0.0),
    (2, (1, 1), 2.0),
    (3, (2, 1, 1), 6.0),
    (3, (0, 0, 0), 0.0),
])
def test_empirical_entropy(k, counts, bits):
    assert math.isclose(empirical_entropy_bits(from_counts(k, counts)), bits, abs_tol=1e-12)
