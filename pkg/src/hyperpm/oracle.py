"""Brute-force reference implementations, kept independent of the engines."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .automata import Dfa, Naa, naa_accepts_tuple
from .engine import Slice
from .exceptions import AutomatonError, GuardError

SLICE_GUARD = 10**7
FILTER_GUARD = 64
SAT_GUARD = 20

TRUE, FALSE = "T", "F"


@dataclass(frozen=True)
class Cnf:
    """Clauses are tuples of non-zero signed variable indices."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 0:
            raise AutomatonError("negative variable count")
        clauses = tuple(tuple(c) for c in self.clauses)
        for c in clauses:
            if not c:
                raise AutomatonError("empty clause")
            for lit in c:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                    raise AutomatonError(f"literal {lit!r} out of range")
        object.__setattr__(self, "clauses", clauses)


def _slice_count(words) -> int:
    # Non-empty slices plus one empty slice per position.
    return sum(n * (n + 1) // 2 + n for n in map(len, words))


def _check_guard(naa, words):
    total = _slice_count(words) ** naa.k
    if total > SLICE_GUARD:
        raise GuardError(f"{total} slice tuples exceed the oracle guard of {SLICE_GUARD}")


def _ends_from(naa: Naa, ws, starts):
    """All accepting end tuples reachable when reading from ``starts``."""
    k = naa.k
    table = naa.table
    lens = [len(w) for w in ws]
    init = [(s,) + tuple(i - 1 for i in starts) for s in naa.initial]
    seen = set(init)
    stack = list(init)
    ends = set()
    while stack:
        cfg = stack.pop()
        if cfg[0] in naa.accepting:
            ends.add(cfg[1:])
        for m in range(k):
            pos = cfg[m + 1]
            if pos < lens[m]:
                for t in table[cfg[0]][m].get(ws[m][pos], ()):
                    nxt = (t,) + cfg[1:m + 1] + (pos + 1,) + cfg[m + 2:]
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return ends


def brute_force_match_set(naa: Naa, words, method: str = "reach") -> frozenset:
    """The match set straight from its definition.

    ``method="literal"`` tests every tuple of slices (empty ones included)
    with :func:`naa_accepts_tuple`; ``"reach"`` enumerates every tuple of
    begin positions and collects all reachable accepting end positions,
    which gives the same set much faster.
    """
    words = [tuple(w) for w in words]
    _check_guard(naa, words)
    out = set()
    ids = range(len(words))
    for wids in itertools.product(ids, repeat=naa.k):
        ws = [words[w] for w in wids]
        if method == "literal":
            per_dir = [[(i, j) for i in range(1, len(w) + 1) for j in range(i - 1, len(w) + 1)]
                       for w in ws]
            for combo in itertools.product(*per_dir):
                if naa_accepts_tuple(naa, [w[i - 1:j] for w, (i, j) in zip(ws, combo)]):
                    out.add(tuple(Slice(wids[m], i, j) for m, (i, j) in enumerate(combo)))
        elif method == "reach":
            for starts in itertools.product(*[range(1, len(w) + 1) for w in ws]):
                for ends in _ends_from(naa, ws, starts):
                    out.add(tuple(Slice(wids[m], starts[m], ends[m]) for m in range(naa.k)))
        else:
            raise ValueError(f"unknown method {method!r}")
    return frozenset(out)


def relevant_indices_oracle(dfa: Dfa, word) -> frozenset:
    """Positions covered by some non-empty slice accepted by ``dfa``."""
    word = tuple(word)
    if len(word) > FILTER_GUARD:
        raise GuardError(f"word of length {len(word)} exceeds the guard of {FILTER_GUARD}")
    out = set()
    for i in range(1, len(word) + 1):
        for j in range(i, len(word) + 1):
            if dfa.accepts(word[i - 1:j]):
                out.update(range(i, j + 1))
    return frozenset(out)


def naa_from_cnf(cnf: Cnf):
    """NAA and word list whose match set is non-empty iff ``cnf`` is satisfiable.

    State ``l{i}`` means the first ``i`` clauses are satisfied.  Direction
    ``j`` stands for variable ``j``: reading ``T`` on it picks a positive
    literal, ``F`` a negative one.  Words are ``T^i`` and ``F^i`` for
    ``1 <= i <= n`` with ``n`` the clause count.
    """
    if cnf.num_vars < 1:
        raise AutomatonError("the reduction needs at least one variable")
    n = len(cnf.clauses)
    states = [f"l{i}" for i in range(n + 1)]
    trans = []
    for i, clause in enumerate(cnf.clauses, start=1):
        for lit in clause:
            trans.append((f"l{i - 1}", TRUE if lit > 0 else FALSE, abs(lit), f"l{i}"))
    naa = Naa.from_names((TRUE, FALSE), cnf.num_vars, states, ("l0",), (f"l{n}",), trans)
    words = [(sigma,) * i for sigma in (TRUE, FALSE) for i in range(1, n + 1)]
    return naa, words


def sat_brute_force(cnf: Cnf) -> bool:
    if cnf.num_vars > SAT_GUARD:
        raise GuardError(f"{cnf.num_vars} variables exceed the guard of {SAT_GUARD}")
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in cnf.clauses):
            return True
    return False


def naive_queue_size(naa: Naa, words) -> int:
    return math.prod([sum(len(w) for w in words)] * naa.k)
