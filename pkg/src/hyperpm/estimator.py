"""Estimator-style front end.

``fit`` takes the pattern (an NAA) and precomputes everything that depends
only on it; ``transform`` takes a word list and returns its match set.
"""

from __future__ import annotations

import time

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .engine import TrialStats, hpm_naive
from .io import format_match
from .oracle import brute_force_match_set
from .projection import MODES, hpm_fjs_proj, hpm_proj, projections
from .skipping import hpm_fjs, tables_or_none
from .validation import check_algorithm, check_naa, check_words


class HyperPatternMatcher(BaseEstimator):
    """Find every tuple of subwords accepted by an NAA.

    Parameters
    ----------
    algorithm : {"naive", "fjs", "proj", "fjs-proj", "oracle"}
        ``fjs`` adds Quick-Search and KMP style skipping, ``proj`` prunes
        starts through per-direction projections, ``fjs-proj`` does both and
        ``oracle`` evaluates the definition by brute force.
    queue_mode : {"filtered", "exact"}
        How the projection engines select surviving starts.
    tail_bound : bool
        Let the skipping engines drop starts too close to a word's end to fit
        a shortest match.
    prune : bool
        Drop configurations that can never move again.
    n_jobs : int
        Worker processes for running trials.

    Attributes
    ----------
    naa_, skip_tables_, projections_, n_directions_
        Set by ``fit``.  ``skip_tables_`` is None for an empty pattern.
    stats_
        Statistics of the last ``transform``.
    """

    def __init__(self, algorithm="fjs-proj", queue_mode="filtered", tail_bound=False,
                 prune=True, n_jobs=1):
        self.algorithm = algorithm
        self.queue_mode = queue_mode
        self.tail_bound = tail_bound
        self.prune = prune
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        check_algorithm(self.algorithm)
        if self.queue_mode not in MODES:
            raise ValueError(f"unknown queue mode {self.queue_mode!r}")
        self.naa_ = check_naa(X)
        self.n_directions_ = self.naa_.k
        self.skip_tables_ = tables_or_none(self.naa_) if "fjs" in self.algorithm else None
        self.projections_ = projections(self.naa_) if "proj" in self.algorithm else None
        return self

    def match(self, X, stop_on_match=False):
        """``(match_set, stats)`` for the word list ``X``.

        With ``stop_on_match`` the run ends at the first trial that matches.
        """
        check_is_fitted(self, "naa_")
        words = check_words(X)
        naa, alg = self.naa_, self.algorithm
        common = dict(prune=self.prune, n_jobs=self.n_jobs, stop_on_match=stop_on_match)
        if alg == "naive":
            matches, stats = hpm_naive(naa, words, **common)
        elif alg == "fjs":
            matches, stats = hpm_fjs(naa, words, tables=self.skip_tables_,
                                     tail_bound=self.tail_bound, **common)
        elif alg == "proj":
            matches, stats = hpm_proj(naa, words, mode=self.queue_mode, dfas=self.projections_,
                                      **common)
        elif alg == "fjs-proj":
            matches, stats = hpm_fjs_proj(naa, words, mode=self.queue_mode,
                                          dfas=self.projections_, tables=self.skip_tables_,
                                          tail_bound=self.tail_bound, **common)
        else:
            t0 = time.perf_counter()
            matches = brute_force_match_set(naa, words)
            stats = TrialStats(algorithm="oracle", matches=len(matches),
                               elapsed=time.perf_counter() - t0)
        self.stats_ = stats
        return matches, stats

    def transform(self, X):
        """Sorted list of match tuples."""
        return sorted(self.match(X)[0])

    def predict(self, X) -> bool:
        """Whether the match set is non-empty."""
        return bool(self.match(X, stop_on_match=True)[0])

    def format(self, X) -> list:
        return [format_match(m) for m in self.transform(X)]
