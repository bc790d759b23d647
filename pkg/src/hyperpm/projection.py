"""Projection-based pruning of trial starts.

Each direction's projected language is matched against every word with an
ordinary DFA.  A start position survives only if it can begin (``exact``) or
lies inside (``filtered``) some projected match.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Dfa, Naa, project_naa
from .engine import TrialQueue, execute
from .skipping import SkipTables, hpm_fjs

MODES = ("filtered", "exact")


@dataclass(frozen=True)
class FilteredWord:
    """``masked[h]`` is the letter, or ``None`` where it is irrelevant."""

    original: int
    masked: tuple

    def relevant(self) -> frozenset:
        return frozenset(h + 1 for h, x in enumerate(self.masked) if x is not None)

    def render(self, bottom: str = "_") -> str:
        return " ".join(bottom if x is None else x for x in self.masked)


@dataclass
class FilterState:
    c: dict = field(default_factory=dict)
    U: set = field(default_factory=set)
    emitted_prefix_len: int = 0
    updates: int = 0


def dfa_pattern_match(dfa: Dfa, word) -> frozenset:
    """All ``(i, j)`` with ``word[i..j]`` accepted, empty slices included."""
    word = tuple(word)
    live = dfa.live_states
    out = set()
    for i in range(1, len(word) + 1):
        if dfa.accepts_empty:
            out.add((i, i - 1))
        state = dfa.initial
        for j in range(i, len(word) + 1):
            state = dfa.delta[state].get(word[j - 1])
            if state not in live:
                break
            if state in dfa.accepting:
                out.add((i, j))
    return frozenset(out)


def filter_irrelevant(dfa: Dfa, word, word_id: int = 0, state: FilterState | None = None) -> FilteredWord:
    """Single pass marking positions covered by no non-empty accepted slice.

    ``c`` maps each DFA state to the least start index that reaches it on
    the current prefix.  Starts that have entered dead states are dropped,
    since they can never cover anything, which lets output stream sooner.
    """
    word = tuple(word)
    st = state if state is not None else FilterState()
    live = dfa.live_states
    delta, accepting, init = dfa.delta, dfa.accepting, dfa.initial
    out = []
    c = st.c
    U = st.U
    for j in range(1, len(word) + 1):
        if init not in c and init in live:
            c[init] = j
        letter = word[j - 1]
        nxt = {}
        for s, start in c.items():
            # Letters outside the alphabet lead nowhere.
            t = delta[s].get(letter)
            st.updates += 1
            if t in live and start < nxt.get(t, j + 1):
                nxt[t] = start
        c = nxt
        for f in accepting:
            if f in c:
                U.update(range(c[f], j + 1))
        # Everything before the oldest pending start is settled.
        settled = min(c.values(), default=j + 1) - 1
        for h in range(len(out) + 1, settled + 1):
            out.append(word[h - 1] if h in U else None)
    for h in range(len(out) + 1, len(word) + 1):
        out.append(word[h - 1] if h in U else None)
    st.c = c
    st.emitted_prefix_len = len(out)
    return FilteredWord(word_id, tuple(out))


def projections(naa: Naa) -> tuple:
    return tuple(project_naa(naa, m) for m in naa.directions)


def allowed_starts(naa: Naa, words, mode: str = "filtered", dfas=None) -> list:
    """``allowed[m][w]``: bytearray flagging surviving start positions."""
    if mode not in MODES:
        raise ValueError(f"unknown queue mode {mode!r}")
    dfas = dfas or projections(naa)
    allowed = []
    for dfa in dfas:
        per_word = []
        for w_id, word in enumerate(words):
            n = len(word)
            flags = bytearray(n + 2)
            if dfa.accepts_empty:
                # Empty slices may begin anywhere.
                flags[1:n + 1] = b"\x01" * n
            elif mode == "exact":
                for i, _ in dfa_pattern_match(dfa, word):
                    flags[i] = 1
            else:
                for h in filter_irrelevant(dfa, word, w_id).relevant():
                    flags[h] = 1
            per_word.append(flags)
        allowed.append(per_word)
    return allowed


def init_queue_projected(naa: Naa, words, mode: str = "filtered", dfas=None, **kwargs) -> TrialQueue:
    allowed = allowed_starts(naa, words, mode, dfas)
    return TrialQueue([len(w) for w in words], naa.k, allowed=allowed, **kwargs)


def hpm_proj(naa: Naa, words, *, mode: str = "filtered", dfas=None, prune: bool = True,
             n_jobs: int = 1, deadline=None, stop_on_match: bool = False):
    queue = init_queue_projected(naa, words, mode, dfas)
    return execute(naa, words, queue, algorithm="proj", prune=prune, n_jobs=n_jobs,
                   deadline=deadline, stop_on_match=stop_on_match)


def hpm_fjs_proj(naa: Naa, words, *, mode: str = "filtered", dfas=None,
                 tables: SkipTables | None = None, tail_bound: bool = False, prune: bool = True,
                 n_jobs: int = 1, on_invalidate=None, deadline=None,
                 stop_on_match: bool = False):
    allowed = allowed_starts(naa, words, mode, dfas)
    return hpm_fjs(naa, words, tables=tables, tail_bound=tail_bound, prune=prune,
                   n_jobs=n_jobs, on_invalidate=on_invalidate, allowed=allowed,
                   algorithm="fjs-proj", deadline=deadline, stop_on_match=stop_on_match)
