"""Hyper pattern matching with nondeterministic asynchronous automata.

The estimator (:class:`HyperPatternMatcher`) pulls in scikit-learn and is
loaded on first access so the command line stays quick to start.
"""

from .automata import (Dfa, Naa, Nfa, coaccessible_states, naa_accepts_tuple,
                       project_extended_word, project_naa, shortest_accepted_length,
                       underlying_nfa)
from .benchmarks import (BenchSpec, XorShift64Star, build_blowup_naa, build_counting_naa,
                         build_interference_naa, build_many_dirs_naa, build_packet_pairs_naa,
                         build_robustness_naa, random_words)
from .engine import (Configuration, Slice, TrialQueue, TrialStart, TrialStats, hpm_naive,
                     init_queue_naive, run_trial, successors)
from .exceptions import (ArityError, AutomatonError, BudgetExceeded, EmptyLanguageError,
                         FormatError, GuardError, HyperPMError)
from .oracle import Cnf, brute_force_match_set, naa_from_cnf, relevant_indices_oracle, sat_brute_force
from .projection import (FilteredWord, dfa_pattern_match, filter_irrelevant, hpm_fjs_proj,
                         hpm_proj, init_queue_projected)
from .skipping import (KmpTable, QsTable, SkipTables, compute_kmp_delta, compute_last_qs,
                       compute_qs_delta, compute_skip_tables, compute_sm_per_dir, hpm_fjs)

__version__ = "0.1.0"


def __getattr__(name):
    if name == "HyperPatternMatcher":
        from .estimator import HyperPatternMatcher

        return HyperPatternMatcher
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
