"""Naive hyper pattern matching: trial queue, configuration stepping, matching.

A configuration is stored as ``(state, c_1, ..., c_k)`` where ``c_m`` is the
last consumed position of direction ``m``.  Together with the per-trial read
pointers ``p_m`` this is a view of the buffer ``w_m[c_m + 1 .. p_m]``, so
appending a letter costs nothing.  :class:`Configuration` is the explicit,
buffer-carrying form used by :func:`successors`.
"""

from __future__ import annotations

import collections
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from operator import eq
from typing import Callable, NamedTuple, Sequence

from .automata import Naa
from .exceptions import BudgetExceeded

QS, KMP, EXTERNAL = 1, 2, 3
REASONS = {QS: "qs", KMP: "kmp", EXTERNAL: "external"}


class Slice(NamedTuple):
    word: int
    begin: int
    end: int


# One Slice per direction, in direction order.
MatchTuple = tuple


@dataclass(frozen=True)
class Configuration:
    buffers: tuple
    state: int


@dataclass(frozen=True, order=True)
class TrialStart:
    starts: tuple
    word_ids: tuple


@dataclass
class TrialStats:
    algorithm: str = ""
    trials: int = 0
    configurations_peak: int = 0
    skipped_qs: int = 0
    skipped_kmp: int = 0
    pruned_by_projection: int = 0
    detections: int = 0
    queue_size: int = 0
    matches: int = 0
    elapsed: float = 0.0

    def as_dict(self):
        return asdict(self)


def successors(naa: Naa, config: Configuration) -> set:
    """All configurations one step away from ``config``."""
    out = set()
    row = naa.table[config.state]
    for m, buf in enumerate(config.buffers):
        if buf:
            for t in row[m].get(buf[0], ()):
                bufs = config.buffers[:m] + (tuple(buf[1:]),) + config.buffers[m + 1:]
                out.add(Configuration(bufs, t))
    return out


class TrialQueue:
    """Lazily enumerated trial starts with per-position invalidation.

    Entries are ``(i_1..i_k, w_1..w_k)`` ordered by positions first, then by
    word ids.  A position ``(word, direction, i)`` can be invalidated at any
    time; every entry using it that has not been yielded yet is dropped.

    ``allowed[m][w]`` optionally restricts the positions of direction ``m``
    (0-based) in word ``w`` (a bytes-like of length ``|w| + 1``, index 0
    unused).  ``bounds[m]`` trims the last ``bounds[m]`` positions of every
    word.  ``check(m, w, i)`` is called once per position before its first
    use and may invalidate positions itself.
    """

    def __init__(self, lengths: Sequence[int], k: int, allowed=None, bounds=None,
                 check: Callable | None = None, on_invalidate: Callable | None = None):
        self.lengths = tuple(lengths)
        self.k = k
        nw = len(self.lengths)
        # Arrays share one size so positions past a shorter word read as 0.
        size = max(self.lengths, default=0) + 2
        self.marks = [[bytearray(size) for _ in self.lengths] for _ in range(k)]
        self.checked = [[bytearray(size) for _ in self.lengths] for _ in range(k)]
        self.check = check
        self.on_invalidate = on_invalidate
        bounds = bounds or (0,) * k
        self.base = []
        # Entries surviving ``allowed`` alone, before the tail bound.
        self.allowed_per_dir = []
        for m in range(k):
            per_word = []
            n_allowed = 0
            for w in range(nw):
                n = self.lengths[w]
                ok = bytearray(size)
                top = n - bounds[m]
                for i in range(1, n + 1):
                    if allowed is None or allowed[m][w][i]:
                        n_allowed += 1
                        if i <= top:
                            ok[i] = 1
                per_word.append(ok)
            self.base.append(per_word)
            self.allowed_per_dir.append(n_allowed)
        self.size_per_dir = [sum(sum(ok) for ok in self.base[m]) for m in range(k)]
        self.skipped = {QS: 0, KMP: 0, EXTERNAL: 0}

    @property
    def total(self) -> int:
        return math.prod(self.size_per_dir)

    @property
    def total_allowed(self) -> int:
        return math.prod(self.allowed_per_dir)

    def invalidate(self, word: int, direction: int, position: int, reason: int = EXTERNAL):
        """Invalidate a position; ``direction`` is 1-based."""
        marks = self.marks[direction - 1][word]
        if 1 <= position <= self.lengths[word] and not marks[position]:
            marks[position] = reason
            if self.on_invalidate is not None:
                self.on_invalidate(REASONS[reason], word, direction, position)

    def is_valid(self, word, direction, position) -> bool:
        return bool(self.base[direction - 1][word][position]) and not self.marks[direction - 1][word][position]

    def raw(self, scout: bool = False):
        """Yield ``(starts, word_ids)`` tuples.

        A ``scout`` pass runs no checks and counts nothing; it yields a
        superset of what a later regular pass yields, in the same order.
        """
        k = self.k
        nw = len(self.lengths)
        maxlen = max(self.lengths, default=0)
        suffix = [math.prod(self.size_per_dir[m + 1:]) for m in range(k)]
        base, marks, checked = self.base, self.marks, self.checked
        check = None if scout else self.check
        skipped = {QS: 0, KMP: 0, EXTERNAL: 0} if scout else self.skipped

        def level(m, starts, cands, weight):
            base_m, marks_m, checked_m = base[m], marks[m], checked[m]
            for i in range(1, maxlen + 1):
                ws = []
                for w in range(nw):
                    if not base_m[w][i]:
                        continue
                    if check is not None and not checked_m[w][i]:
                        checked_m[w][i] = 1
                        check(m, w, i)
                    reason = marks_m[w][i]
                    if reason:
                        skipped[reason] += weight * suffix[m]
                        continue
                    ws.append(w)
                if not ws:
                    continue
                if m == k - 1:
                    pos = starts + (i,)
                    if len(cands) == 0:
                        for w in ws:
                            yield pos, (w,)
                    else:
                        for combo in itertools.product(*cands, ws):
                            yield pos, combo
                else:
                    yield from level(m + 1, starts + (i,), cands + [ws], weight * len(ws))

        yield from level(0, (), [], 1)

    def __iter__(self):
        for starts, wids in self.raw():
            yield TrialStart(starts, wids)


def init_queue_naive(naa: Naa, words: Sequence[Sequence[str]], **kwargs) -> TrialQueue:
    return TrialQueue([len(w) for w in words], naa.k, **kwargs)


class TrialRunner:
    """Runs single matching trials of one NAA against a fixed word list."""

    def __init__(self, naa: Naa, words: Sequence[Sequence[str]], prune: bool = True):
        self.naa = naa
        self.words = [tuple(w) for w in words]
        self.k = naa.k
        self.table = naa.table
        self.accepting = naa.accepting
        self.initial = tuple(sorted(naa.initial))
        self.prune = prune
        # A trial whose first letters enable no initial move dies at once.
        self.init_moves = [set() for _ in range(self.k)]
        for s in self.initial:
            for m in range(self.k):
                self.init_moves[m].update(self.table[s][m])
        self.fast_path = not (set(self.initial) & self.accepting)

    def dies_at_start(self, starts, wids) -> bool:
        if not self.fast_path:
            return False
        words = self.words
        for m in range(self.k):
            if words[wids[m]][starts[m] - 1] in self.init_moves[m]:
                return False
        return True

    def run(self, starts, wids):
        """Returns ``(matches, reached, peak, detections)``.

        A configuration is ``(state, c_1, .., c_k)`` with ``c_m`` the last
        consumed position of direction ``m``.  ``p`` holds the positions read
        so far; after each read the new letter is consumed from every
        configuration waiting on it, and closure runs over all directions.
        """
        k = self.k
        table = self.table
        acc = self.accepting
        prune = self.prune
        ws = [self.words[w] for w in wids]
        ends = [len(w) for w in ws]
        p = list(starts)
        base = tuple(i - 1 for i in starts)
        configs = {(s,) + base for s in self.initial}
        reached = set(self.initial)
        hits = {c[1:] for c in configs if c[0] in acc}
        detections = len(hits)
        all_dirs = range(k)
        work = [(c, None) for c in configs]
        m = -1
        while True:
            while work:
                cfg, only = work.pop()
                row = table[cfg[0]]
                for d in all_dirs if only is None else (only,):
                    c = cfg[d + 1]
                    if c < p[d]:
                        targets = row[d].get(ws[d][c])
                        if targets:
                            head = cfg[1:d + 1]
                            tail = (c + 1,) + cfg[d + 2:]
                            for t in targets:
                                nxt = (t,) + head + tail
                                if nxt not in configs:
                                    configs.add(nxt)
                                    work.append((nxt, None))
                                    reached.add(t)
                                    if t in acc:
                                        detections += 1
                                        hits.add(nxt[1:])
            if m < 0:
                peak = len(configs)
            elif len(configs) > peak:
                peak = len(configs)
            if prune:
                # Keep configurations still waiting for a letter.
                pt = tuple(p)
                configs = {c for c in configs if any(map(eq, c[1:], pt))}
            if not configs:
                break
            # Next direction with letters left, round robin.
            for _ in all_dirs:
                m = (m + 1) % k
                if p[m] < ends[m]:
                    break
            else:
                break
            p[m] += 1
            last = p[m] - 1
            work = [(c, m) for c in configs if c[m + 1] == last]
        matches = {tuple(Slice(wids[d], starts[d], e[d]) for d in all_dirs) for e in hits}
        return matches, reached, peak, detections


def run_trial(naa: Naa, words, start: TrialStart, *, prune: bool = True):
    """Execute one matching trial; returns ``(matches, reached_states)``."""
    matches, reached, _, _ = TrialRunner(naa, words, prune).run(start.starts, start.word_ids)
    return matches, reached


_worker = None


def _init_worker(naa, words, prune):
    global _worker
    _worker = TrialRunner(naa, words, prune)


def _run_batch(batch):
    out = []
    for starts, wids in batch:
        if _worker.dies_at_start(starts, wids):
            out.append(None)
        else:
            out.append(_worker.run(starts, wids))
    return out


def _chunks(items, n):
    size = max(1, -(-len(items) // n))
    return [items[i:i + size] for i in range(0, len(items), size)]


def execute(naa: Naa, words, queue: TrialQueue, *, algorithm: str,
            after_trial: Callable | None = None, prune: bool = True,
            n_jobs: int = 1, deadline: float | None = None, stop_on_match: bool = False):
    """Drain ``queue``, running one trial per entry.

    ``after_trial(starts, wids, reached)`` is invoked in queue order after
    each trial and may invalidate further queue positions.  ``deadline`` is
    a ``time.perf_counter()`` value after which :class:`BudgetExceeded` is
    raised.  ``stop_on_match`` ends the run after the first trial that finds
    a match; counters then describe the partial run.
    """
    t0 = time.perf_counter()
    stats = TrialStats(algorithm=algorithm)
    runner = TrialRunner(naa, words, prune)
    initial_reached = frozenset(runner.initial)
    matches = set()

    def consume(starts, wids, result):
        stats.trials += 1
        if result is None:
            reached = initial_reached
            stats.configurations_peak = max(stats.configurations_peak, len(reached))
        else:
            found, reached, peak, detections = result
            matches.update(found)
            stats.configurations_peak = max(stats.configurations_peak, peak)
            stats.detections += detections
        if after_trial is not None:
            after_trial(starts, wids, reached)

    if n_jobs <= 1:
        for starts, wids in queue.raw():
            if runner.dies_at_start(starts, wids):
                consume(starts, wids, None)
            else:
                consume(starts, wids, runner.run(starts, wids))
            if stop_on_match and matches:
                break
            if deadline is not None and not stats.trials & 4095 and time.perf_counter() > deadline:
                raise BudgetExceeded(f"{algorithm}: deadline passed after {stats.trials} trials")
    else:
        # Trials are consumed in exactly the sequential order; workers run
        # speculative batches picked by a scout pass over the same queue.
        batch_size = 256 * n_jobs
        scout = queue.raw(scout=True)
        ready = collections.deque()
        with ProcessPoolExecutor(max_workers=n_jobs, initializer=_init_worker,
                                 initargs=(naa, [tuple(w) for w in words], prune)) as pool:
            for entry in queue.raw():
                while ready and ready[0][0] != entry:
                    ready.popleft()
                if not ready:
                    for cand in scout:
                        if cand == entry:
                            break
                    batch = [entry] + list(itertools.islice(scout, batch_size - 1))
                    results = itertools.chain.from_iterable(
                        pool.map(_run_batch, _chunks(batch, n_jobs)))
                    ready.extend(zip(batch, results))
                    if deadline is not None and time.perf_counter() > deadline:
                        raise BudgetExceeded(
                            f"{algorithm}: deadline passed after {stats.trials} trials")
                (starts, wids), result = ready.popleft()
                consume(starts, wids, result)
                if stop_on_match and matches:
                    break

    naive_total = sum(len(w) for w in words) ** naa.k
    stats.queue_size = naive_total
    # Entries cut by the tail bound count as QS skips.
    stats.skipped_qs = queue.skipped[QS] + queue.total_allowed - queue.total
    stats.skipped_kmp = queue.skipped[KMP]
    stats.pruned_by_projection = naive_total - queue.total_allowed
    stats.matches = len(matches)
    stats.elapsed = time.perf_counter() - t0
    return frozenset(matches), stats


def hpm_naive(naa: Naa, words, *, prune: bool = True, n_jobs: int = 1, deadline=None,
              stop_on_match: bool = False):
    """Complete match set by trying every trial start."""
    queue = init_queue_naive(naa, words)
    return execute(naa, words, queue, algorithm="naive", prune=prune, n_jobs=n_jobs,
                   deadline=deadline, stop_on_match=stop_on_match)
