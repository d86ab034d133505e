"""Laws of succession for multinomial estimation and order-0 codelengths."""

from .codec import (CodelengthReport, emit_curve, evaluate_stream,
                    synthesize_sunrise)
from .estimator import SuccessionEstimator
from .freq import FrequencyVector, empirical_entropy_bits, from_counts, observe
from .laws import (GOOD_TURING, JEFFREYS_PERKS, LAPLACE, METHOD_A, METHOD_B,
                   METHOD_C, METHOD_D, NATURAL, SHARP_NATURAL, SHARP_SUBSETS,
                   SUBSETS, TABLE_LAWS, Kind, SuccessionLaw, absolute,
                   conditional, distribution, escape_mass, lidstone, linear,
                   parse_law, parse_laws)
from .priors import (SubsetScenario, conditional_from_prior, freqvec_logprob,
                     log_ratio, multinomial_log, possible_set_logprob,
                     string_logprob)

__all__ = [
    "CodelengthReport", "FrequencyVector", "GOOD_TURING", "JEFFREYS_PERKS",
    "Kind", "LAPLACE", "METHOD_A", "METHOD_B", "METHOD_C", "METHOD_D",
    "NATURAL", "SHARP_NATURAL", "SHARP_SUBSETS", "SUBSETS", "SubsetScenario",
    "SuccessionEstimator", "SuccessionLaw", "TABLE_LAWS", "absolute",
    "conditional", "conditional_from_prior", "distribution",
    "emit_curve", "empirical_entropy_bits", "escape_mass", "evaluate_stream",
    "freqvec_logprob", "from_counts", "lidstone", "linear", "log_ratio",
    "multinomial_log", "observe", "parse_law", "parse_laws",
    "possible_set_logprob", "string_logprob", "synthesize_sunrise",
]

__version__ = "0.1.0"
