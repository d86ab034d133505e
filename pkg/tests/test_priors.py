import itertools
import math
from fractions import Fraction as F

import pytest

from succession.freq import from_counts
from succession.laws import (LAPLACE, METHOD_A, NATURAL, SUBSETS, absolute, distribution,
                             lidstone, linear)
from succession.oracle import (check_oracle_equivalence, check_totality,
                               compatibility_witness, sequential_logprob,
                               sequential_prob_exact)
from succession.priors import (NoClosedForm, SubsetScenario, conditional_from_prior,
                               freqvec_logprob, laplace_decay_bound_log,
                               lidstone_stirling_log, log_ratio, multinomial,
                               multinomial_log, possible_set_logprob,
                               possible_set_prob_exact, possible_set_stratum_logprob,
                               prior_distribution, string_logprob, string_prob_exact)


@pytest.mark.parametrize("counts, value", [((7, 0, 0), 1), ((2, 1), 3), ((3, 2, 1), 60)])
def test_multinomial(counts, value):
    fv = from_counts(len(counts), counts)
    assert multinomial(fv) == value
    assert math.isclose(multinomial_log(fv), math.log2(value), abs_tol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 10, 1000])
def test_sunrise_string_has_probability_one_quarter(n):
    fv = from_counts(2, [n, 0])
    assert math.isclose(string_logprob(fv, NATURAL), -2.0, abs_tol=1e-9)
    assert string_prob_exact(fv, NATURAL) == F(1, 4)


def test_lidstone_string_example():
    fv = from_counts(2, [2, 1])
    assert string_prob_exact(fv, lidstone(1)) == F(1, 12)
    assert math.isclose(string_logprob(fv, lidstone(1)), math.log2(1 / 12), rel_tol=1e-12)
    assert sequential_prob_exact([0, 0, 1], lidstone(1), 2) == F(1, 2) * F(2, 3) * F(1, 4)


@pytest.mark.parametrize("k", [2, 5, 256])
@pytest.mark.parametrize("delta", [F(1, 4), F(1, 2), F(3, 4)])
def test_absolute_two_symbol_string(k, delta):
    fv = from_counts(k, [1, 1])
    assert string_prob_exact(fv, absolute(delta)) == delta / (k * (k - 1))
    assert sequential_prob_exact([0, 1], absolute(delta), k) == delta / (k * (k - 1))


@pytest.mark.parametrize("n", [1, 4, 50])
def test_freqvec_examples(n):
    assert math.isclose(freqvec_logprob(from_counts(2, [n + 1, 0]), LAPLACE),
                        -math.log2(n + 2), abs_tol=1e-9)
    if n >= 2:
        assert math.isclose(freqvec_logprob(from_counts(2, [n, 1]), NATURAL),
                            -math.log2(2 * n), abs_tol=1e-9)


def test_freqvec_single_observation():
    for counts in ((1, 0), (0, 1)):
        assert math.isclose(freqvec_logprob(from_counts(2, counts), LAPLACE), -1.0)


def test_conditional_from_prior_examples(fv210):
    assert prior_distribution(fv210, NATURAL, exact=True) == [F(6, 16), F(4, 16), F(6, 16)]
    assert prior_distribution(fv210, SUBSETS, exact=True) == [F(1, 2), F(1, 3), F(1, 6)]
    assert conditional_from_prior(from_counts(2, [1, 0]), 0, LAPLACE, exact=True) == F(2, 3)
    assert math.isclose(conditional_from_prior(fv210, 1, NATURAL), 0.25, rel_tol=1e-12)


def test_oracle_equivalence_exact_small():
    res = check_oracle_equivalence(max_k=4, max_n=6, exact=True)
    assert res.passed, res.failures[:3]


def test_totality_small():
    res = check_totality(max_k=3, max_n=5)
    assert res.passed, res.failures


def test_linear_discounting_is_not_a_prior():
    fv = from_counts(3, [2, 1, 0])
    assert prior_distribution(fv, linear(0.5)) != pytest.approx(distribution(fv, linear(0.5)))


@pytest.mark.parametrize("alpha", [F(1, 10), F(1, 2)])
def test_linear_closed_form_needs_canonical_order(alpha):
    law = linear(alpha)
    fv = from_counts(4, [3, 2, 1, 0])
    canonical = [0, 1, 2, 0, 0, 1]
    assert sequential_prob_exact(canonical, law, 4) == string_prob_exact(fv, law)
    assert sequential_prob_exact([0, 0, 0, 1, 1, 2], law, 4) != string_prob_exact(fv, law)


@pytest.mark.parametrize("law", [SUBSETS, NATURAL], ids=lambda l: l.name)
def test_compatibility_witness(law):
    # "11" over two symbols is not a witness: both routes agree there
    assert sequential_prob_exact([1, 1], law, 2) == string_prob_exact(from_counts(2, [0, 2]), law)
    k, string, seq, closed = compatibility_witness(law)
    assert (k, string) == (2, [0, 0, 0])
    assert seq != closed
    assert (seq, closed) == {"natural": (F(3, 16), F(1, 4)),
                             "subsets": (F(2, 7), F(1, 3))}[law.name]


def test_laplace_has_no_witness():
    assert compatibility_witness(LAPLACE) is None


def test_no_closed_form_rejected(fv210):
    with pytest.raises(NoClosedForm):
        string_logprob(fv210, METHOD_A)
    with pytest.raises(NoClosedForm):
        SubsetScenario(4, 2, 3, absolute(0.5))


# --- sub-alphabet totals ------------------------------------------------------

def _brute_possible_set(k, b, n, law):
    total = F(0)
    for s in itertools.product(range(b), repeat=n):
        total += string_prob_exact(from_counts(k, [s.count(i) for i in range(k)]), law)
    return total


@pytest.mark.parametrize("law", [LAPLACE, lidstone(F(1, 2)), NATURAL, SUBSETS],
                         ids=lambda l: l.name)
@pytest.mark.parametrize("k, b, n", [(2, 1, 4), (3, 2, 5), (4, 2, 6), (4, 4, 3)])
def test_possible_set_matches_brute_force(law, k, b, n):
    s = SubsetScenario(k, b, n, law)
    want = _brute_possible_set(k, b, n, law)
    assert possible_set_prob_exact(s) == want
    assert math.isclose(possible_set_logprob(s), math.log2(want), rel_tol=1e-9, abs_tol=1e-12)


@pytest.mark.parametrize("n", [1, 5, 40])
def test_possible_set_examples(n):
    assert math.isclose(possible_set_logprob(SubsetScenario(2, 1, n, LAPLACE)),
                        -math.log2(n + 1), abs_tol=1e-9)
    assert possible_set_logprob(SubsetScenario(7, 7, n, lidstone(0.3))) == pytest.approx(0, abs=1e-12)


def test_cardinality_stratum_constant():
    for n in range(4, 11):
        s = SubsetScenario(4, 2, n, NATURAL)
        assert math.isclose(possible_set_stratum_logprob(s), -math.log2(24), rel_tol=1e-12)
        exact_stratum = sum((string_prob_exact(from_counts(4, [a, n - a, 0, 0]), NATURAL)
                             * math.comb(n, a) for a in range(1, n)), F(0))
        assert exact_stratum == F(1, 24)


def test_stratum_outside_range_is_impossible():
    s = SubsetScenario(4, 2, 3, NATURAL)
    assert possible_set_stratum_logprob(s, q=3) == -math.inf
    with pytest.raises(NoClosedForm):
        possible_set_stratum_logprob(SubsetScenario(4, 2, 3, LAPLACE))


@pytest.mark.parametrize("b", [2, 66, 128])
@pytest.mark.parametrize("n", [256, 1000, 10_000])
def test_laplace_decay_bound(b, n):
    s = SubsetScenario(256, b, n, LAPLACE)
    assert possible_set_logprob(s) < laplace_decay_bound_log(256, b, n)


def test_lidstone_stirling_tracks_exact():
    k, b, lam = 16, 4, 0.5
    errors = [abs(possible_set_logprob(SubsetScenario(k, b, n, lidstone(lam)))
                  - lidstone_stirling_log(k, b, n, lam)) for n in (10**2, 10**4, 10**6)]
    assert errors[-1] < errors[0] and errors[-1] < 1e-3


def test_scenario_validation():
    with pytest.raises(ValueError):
        SubsetScenario(4, 5, 3, LAPLACE)
    with pytest.raises(ValueError):
        SubsetScenario(4, 2, 0, LAPLACE)


# --- ratios -------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 9, 100, 10**5])
def test_log_ratio_sunrise(n):
    fv = from_counts(2, [n, 0])
    assert math.isclose(log_ratio(fv, NATURAL, LAPLACE), math.log2((n + 1) / 4), rel_tol=1e-9)
    assert log_ratio(fv, NATURAL, NATURAL) == 0.0


def test_logprob_never_exceeds_one():
    for counts in ((5, 0, 0), (1, 1, 1), (40, 3, 0, 0, 1)):
        fv = from_counts(len(counts), counts)
        for law in (LAPLACE, NATURAL, SUBSETS, lidstone(2), absolute(0.5), linear(0.5)):
            assert 2 ** string_logprob(fv, law) <= 1 + 1e-12
            assert 2 ** freqvec_logprob(fv, law) <= 1 + 1e-12


def test_float_and_exact_agree():
    fv = from_counts(6, [9, 4, 0, 1, 1, 0])
    for law in (LAPLACE, NATURAL, SUBSETS, lidstone(F(1, 4)), absolute(F(1, 3)), linear(F(1, 5))):
        assert math.isclose(string_logprob(fv, law),
                            math.log2(string_prob_exact(fv, law)), rel_tol=1e-12)
        assert math.isclose(sequential_logprob([0] * 9 + [1] * 4 + [3, 4], LAPLACE, 6),
                            string_logprob(fv, LAPLACE), rel_tol=1e-12)
