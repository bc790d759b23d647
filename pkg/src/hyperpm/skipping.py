"""Skip values and the skipping matcher.

Skipping never removes a single queue entry; it invalidates start positions
of one word in one direction, which drops every entry using them.

* Quick-Search rule: ``SM`` is the length of a shortest accepted extended
  word and ``SM_m`` the least number of direction-``m`` letters among its
  first ``SM`` letters.  Every projected match on direction ``m`` has its
  ``SM_m``-th letter in ``LastQS_m``; when the letter at ``i + SM_m - 1``
  is not in that set, no match starts in ``[i, i + dQS_m(w[i + SM_m]) - 1]``.
* KMP rule: after a trial from ``i`` reaches state ``s``, no match starts in
  ``i + 1 .. i + dKMP_m(s) - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (Dfa, Naa, coaccessible_states, project_naa,
                       shortest_accepted_length, underlying_nfa)
from .engine import KMP, QS, TrialQueue, execute
from .exceptions import EmptyLanguageError


@dataclass(frozen=True)
class QsTable:
    sm: int
    sm_per_dir: tuple
    last_qs: tuple          # per direction, frozenset of letters
    delta_qs: tuple         # per direction, dict letter -> skip


@dataclass(frozen=True)
class KmpTable:
    delta_kmp: tuple        # per direction, tuple indexed by state
    cap: tuple              # per direction, tuple of search bounds B


@dataclass(frozen=True)
class SkipTables:
    qs: QsTable
    kmp: KmpTable


def compute_sm_per_dir(naa: Naa):
    """``(SM, (SM_1, .., SM_k))``."""
    nfa = underlying_nfa(naa)
    sm = shortest_accepted_length(nfa)
    if sm is None:
        raise EmptyLanguageError("empty pattern language")
    live = coaccessible_states(nfa)
    per_dir = []
    for m in range(naa.k):
        # Least count of direction-m letters so far, per state, at each depth.
        layer = {s: 0 for s in naa.initial if s in live}
        for _ in range(sm):
            nxt = {}
            for s, c in layer.items():
                for d in range(naa.k):
                    step = c + (d == m)
                    for targets in naa.table[s][d].values():
                        for t in targets:
                            if t in live and step < nxt.get(t, sm + 1):
                                nxt[t] = step
            layer = nxt
        per_dir.append(min(layer.values()))
    return sm, tuple(per_dir)


def projected_letter_sets(naa: Naa, direction: int, depth: int) -> list:
    """``L[p]`` for ``p`` in ``1..depth``: letters that occur at position ``p``
    of some word of the direction's projected language (``L[0]`` unused)."""
    m = direction - 1
    live = coaccessible_states(underlying_nfa(naa))
    sets = [set() for _ in range(depth + 1)]
    start = {(s, 0) for s in naa.initial if s in live}
    seen = set(start)
    stack = list(start)
    while stack:
        s, d = stack.pop()
        for dd in range(naa.k):
            for letter, targets in naa.table[s][dd].items():
                for t in targets:
                    if t not in live:
                        continue
                    if dd == m:
                        if d + 1 > depth:
                            continue
                        sets[d + 1].add(letter)
                        nxt = (t, d + 1)
                    else:
                        nxt = (t, d)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return sets


def compute_last_qs(naa: Naa, sm_per_dir=None) -> tuple:
    if sm_per_dir is None:
        sm_per_dir = compute_sm_per_dir(naa)[1]
    out = []
    for m, smm in zip(naa.directions, sm_per_dir):
        out.append(frozenset(projected_letter_sets(naa, m, smm)[smm]) if smm else frozenset())
    return tuple(out)


def compute_qs_delta(naa: Naa, sm_per_dir=None) -> tuple:
    if sm_per_dir is None:
        sm_per_dir = compute_sm_per_dir(naa)[1]
    out = []
    for m, smm in zip(naa.directions, sm_per_dir):
        sets = projected_letter_sets(naa, m, smm)
        table = {}
        for letter in naa.alphabet:
            table[letter] = next((i for i in range(1, smm + 1) if letter in sets[smm + 1 - i]),
                                 smm + 1)
        out.append(table)
    return tuple(out)


def _shift_overlap(ds: Dfa, d: Dfa, n: int) -> bool:
    """Whether ``(L(ds) . S*) & (S^n . L(d) . S*)`` is non-empty."""
    done = -1
    live_s, live = ds.live_states, d.live_states

    def norm(dfa, state, live_set):
        if state == done or state in dfa.accepting:
            return done
        return state if state in live_set else None

    first = norm(ds, ds.initial, live_s)
    if first is None:
        return False
    layer = {first}
    for _ in range(n):
        nxt = set()
        for a in layer:
            for letter in ds.alphabet:
                x = a if a == done else norm(ds, ds.delta[a][letter], live_s)
                if x is not None:
                    nxt.add(x)
        layer = nxt
        if not layer:
            return False
    start_d = norm(d, d.initial, live)
    if start_d is None:
        return False
    start = {(a, start_d) for a in layer}
    seen = set(start)
    stack = list(start)
    while stack:
        a, b = stack.pop()
        if a == done and b == done:
            return True
        for letter in ds.alphabet:
            x = a if a == done else norm(ds, ds.delta[a][letter], live_s)
            y = b if b == done else norm(d, d.delta[b][letter], live)
            if x is None or y is None:
                continue
            if (x, y) not in seen:
                seen.add((x, y))
                stack.append((x, y))
    return False


def compute_kmp_delta(naa: Naa) -> KmpTable:
    deltas, caps = [], []
    for m in naa.directions:
        whole = project_naa(naa, m)
        row, cap_row = [], []
        for s in range(naa.n_states):
            part = project_naa(naa.with_accepting({s}), m)
            bound = part.n_states * whole.n_states + 1
            cap_row.append(bound)
            if not part.live_states or part.initial not in part.live_states \
                    or whole.initial not in whole.live_states:
                row.append(bound)
                continue
            row.append(next((n for n in range(1, bound) if _shift_overlap(part, whole, n)), bound))
        deltas.append(tuple(row))
        caps.append(tuple(cap_row))
    return KmpTable(tuple(deltas), tuple(caps))


def compute_skip_tables(naa: Naa) -> SkipTables:
    sm, per_dir = compute_sm_per_dir(naa)
    qs = QsTable(sm, per_dir, compute_last_qs(naa, per_dir), compute_qs_delta(naa, per_dir))
    return SkipTables(qs, compute_kmp_delta(naa))


def format_skip_tables(naa: Naa, tables: SkipTables) -> str:
    """Line-oriented dump; letters in alphabet order, states in index order."""
    qs, kmp = tables.qs, tables.kmp
    lines = [f"SM {qs.sm}"]
    for m in range(naa.k):
        lines.append(f"SM_{m + 1} {qs.sm_per_dir[m]}")
    for m in range(naa.k):
        letters = [a for a in naa.alphabet if a in qs.last_qs[m]]
        lines.append(" ".join([f"LastQS_{m + 1}"] + letters))
    for m in range(naa.k):
        pairs = [f"{a}={qs.delta_qs[m][a]}" for a in naa.alphabet]
        lines.append(" ".join([f"DeltaQS_{m + 1}"] + pairs))
    for m in range(naa.k):
        pairs = [f"{naa.state_names[s]}={kmp.delta_kmp[m][s]}" for s in range(naa.n_states)]
        lines.append(" ".join([f"DeltaKMP_{m + 1}"] + pairs))
    return "\n".join(lines) + "\n"


class Skipper:
    """Applies both skipping rules to a :class:`TrialQueue`."""

    def __init__(self, naa: Naa, words, tables: SkipTables, queue: TrialQueue):
        self.words = [tuple(w) for w in words]
        self.tables = tables
        self.queue = queue
        self.k = naa.k
        self._kmp_cache = {}

    def qs_check(self, m, w, i):
        qs = self.tables.qs
        smm = qs.sm_per_dir[m]
        if smm == 0:
            return
        word = self.words[w]
        n = len(word)
        if i + smm - 1 > n or word[i + smm - 2] in qs.last_qs[m]:
            return
        if i + smm <= n:
            span = qs.delta_qs[m].get(word[i + smm - 1], smm + 1)
        else:
            # No letter to look up: only the tested start is ruled out.
            span = 1
        for pos in range(i, i + span):
            self.queue.invalidate(w, m + 1, pos, QS)

    def after_trial(self, starts, wids, reached):
        key = frozenset(reached)
        spans = self._kmp_cache.get(key)
        if spans is None:
            table = self.tables.kmp.delta_kmp
            spans = tuple(max(table[m][s] for s in key) for m in range(self.k))
            self._kmp_cache[key] = spans
        for m in range(self.k):
            span = spans[m]
            if span > 1:
                i = starts[m]
                for pos in range(i + 1, i + span):
                    self.queue.invalidate(wids[m], m + 1, pos, KMP)


def skipping_queue(naa: Naa, words, tables: SkipTables, *, allowed=None,
                   tail_bound: bool = False, on_invalidate=None):
    """Queue plus skipper wired together.

    With ``tail_bound`` the queue also drops starts ``i > |w| - SM_m + 1``,
    which cannot begin a match.
    """
    if tables is None:
        # Empty pattern language: nothing to skip by, nothing to find.
        queue = TrialQueue([len(w) for w in words], naa.k, allowed=allowed,
                           on_invalidate=on_invalidate)
        return queue, None
    bounds = [max(0, smm - 1) for smm in tables.qs.sm_per_dir] if tail_bound else None
    queue = TrialQueue([len(w) for w in words], naa.k, allowed=allowed, bounds=bounds,
                       on_invalidate=on_invalidate)
    skipper = Skipper(naa, words, tables, queue)
    queue.check = skipper.qs_check
    return queue, skipper


def tables_or_none(naa: Naa):
    try:
        return compute_skip_tables(naa)
    except EmptyLanguageError:
        return None


def hpm_fjs(naa: Naa, words, *, tables: SkipTables | None = None, tail_bound: bool = False,
            prune: bool = True, n_jobs: int = 1, on_invalidate=None, allowed=None,
            algorithm: str = "fjs", deadline=None, stop_on_match: bool = False):
    """Match set with both skipping rules."""
    tables = tables or tables_or_none(naa)
    queue, skipper = skipping_queue(naa, words, tables, allowed=allowed,
                                    tail_bound=tail_bound, on_invalidate=on_invalidate)
    return execute(naa, words, queue, algorithm=algorithm,
                   after_trial=skipper.after_trial if skipper else None,
                   prune=prune, n_jobs=n_jobs, deadline=deadline, stop_on_match=stop_on_match)
