"""Finite automata over letters and over directed letters.

Words are plain tuples of letter tokens (strings).  Positions in words are
1-based and slices are inclusive, so ``(i, j)`` denotes ``w[i-1:j]`` and the
empty slice at ``i`` is ``(i, i - 1)``.

States are dense integers ``0 .. n_states - 1``; the human readable names are
kept in ``state_names`` only for reporting.  Directions of an NAA are the
integers ``1 .. k``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .exceptions import ArityError, AutomatonError, GuardError

Word = tuple  # tuple[str, ...]

_RESERVED = set(" \t\r\n,")


def check_token(token) -> str:
    if not isinstance(token, str) or not token:
        raise AutomatonError(f"letter must be a non-empty string, got {token!r}")
    if _RESERVED & set(token):
        raise AutomatonError(f"letter {token!r} contains whitespace or a comma")
    return token


def _check_states(states, n_states, what):
    states = frozenset(states)
    for s in states:
        if not isinstance(s, int) or not 0 <= s < n_states:
            raise AutomatonError(f"{what} state {s!r} out of range")
    return states


def _default_names(n):
    return tuple(f"q{i}" for i in range(n))


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton over an arbitrary finite alphabet.

    Letters only need to be hashable, which lets the same class model the
    underlying automaton of an NAA (letters are ``(letter, direction)``).
    """

    alphabet: tuple
    n_states: int
    initial: frozenset
    accepting: frozenset
    transitions: frozenset
    state_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.alphabet:
            raise AutomatonError("alphabet must be non-empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("alphabet has duplicate letters")
        object.__setattr__(self, "initial", _check_states(self.initial, self.n_states, "initial"))
        object.__setattr__(self, "accepting", _check_states(self.accepting, self.n_states, "accepting"))
        letters = set(self.alphabet)
        trans = frozenset(self.transitions)
        for src, letter, dst in trans:
            _check_states((src, dst), self.n_states, "transition")
            if letter not in letters:
                raise AutomatonError(f"transition letter {letter!r} not in alphabet")
        object.__setattr__(self, "transitions", trans)
        if not self.state_names:
            object.__setattr__(self, "state_names", _default_names(self.n_states))

    @cached_property
    def successors(self) -> tuple:
        """``successors[s][letter]`` is the tuple of targets."""
        table = [dict() for _ in range(self.n_states)]
        for src, letter, dst in sorted(self.transitions, key=repr):
            table[src].setdefault(letter, []).append(dst)
        return tuple({a: tuple(t) for a, t in row.items()} for row in table)

    def accepts(self, word: Iterable[Hashable]) -> bool:
        current = set(self.initial)
        for letter in word:
            current = {t for s in current for t in self.successors[s].get(letter, ())}
            if not current:
                return False
        return bool(current & self.accepting)


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton: ``delta[s][letter]`` is always defined."""

    alphabet: tuple
    n_states: int
    initial: int
    accepting: frozenset
    delta: tuple
    state_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.alphabet:
            raise AutomatonError("alphabet must be non-empty")
        if not 0 <= self.initial < self.n_states:
            raise AutomatonError("initial state out of range")
        object.__setattr__(self, "accepting", _check_states(self.accepting, self.n_states, "accepting"))
        if len(self.delta) != self.n_states:
            raise AutomatonError("delta needs one row per state")
        for row in self.delta:
            if set(row) != set(self.alphabet):
                raise AutomatonError("transition function is not total")
            for dst in row.values():
                _check_states((dst,), self.n_states, "transition")
        if not self.state_names:
            object.__setattr__(self, "state_names", _default_names(self.n_states))

    def run(self, word, state=None):
        """Final state, or ``None`` once a letter outside the alphabet is read."""
        state = self.initial if state is None else state
        for letter in word:
            state = self.delta[state].get(letter)
            if state is None:
                return None
        return state

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    @cached_property
    def live_states(self) -> frozenset:
        """States from which an accepting state is reachable."""
        return coaccessible_states(self.to_nfa())

    @property
    def accepts_empty(self) -> bool:
        return self.initial in self.accepting

    def to_nfa(self) -> Nfa:
        trans = {(s, a, t) for s, row in enumerate(self.delta) for a, t in row.items()}
        return Nfa(self.alphabet, self.n_states, frozenset({self.initial}),
                   self.accepting, frozenset(trans), self.state_names)


@dataclass(frozen=True)
class Naa:
    """Nondeterministic asynchronous automaton with directions ``1 .. k``.

    ``transitions`` holds ``(src, letter, direction, dst)`` records.
    """

    alphabet: tuple
    k: int
    n_states: int
    initial: frozenset
    accepting: frozenset
    transitions: frozenset
    state_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.alphabet:
            raise AutomatonError("alphabet must be non-empty")
        for letter in self.alphabet:
            check_token(letter)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("alphabet has duplicate letters")
        if not isinstance(self.k, int) or self.k < 1:
            raise AutomatonError(f"need at least one direction, got {self.k!r}")
        if self.n_states < 1:
            raise AutomatonError("an NAA needs at least one state")
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", _check_states(self.initial, self.n_states, "initial"))
        object.__setattr__(self, "accepting", _check_states(self.accepting, self.n_states, "accepting"))
        letters = set(self.alphabet)
        trans = frozenset(self.transitions)
        for src, letter, direction, dst in trans:
            _check_states((src, dst), self.n_states, "transition")
            if letter not in letters:
                raise AutomatonError(f"transition letter {letter!r} not in alphabet")
            if not isinstance(direction, int) or not 1 <= direction <= self.k:
                raise AutomatonError(f"transition direction {direction!r} not in 1..{self.k}")
        object.__setattr__(self, "transitions", trans)
        names = tuple(self.state_names) or _default_names(self.n_states)
        if len(names) != self.n_states or len(set(names)) != len(names):
            raise AutomatonError("state_names must be unique, one per state")
        object.__setattr__(self, "state_names", names)

    @classmethod
    def from_names(cls, alphabet, k, states, initial, accepting, transitions):
        """Build from named states; ``transitions`` are ``(src, letter, dir, dst)``."""
        states = list(states)
        index = {name: i for i, name in enumerate(states)}
        if len(index) != len(states):
            raise AutomatonError("duplicate state names")

        def lookup(name):
            try:
                return index[name]
            except KeyError:
                raise AutomatonError(f"unknown state {name!r}") from None

        return cls(
            alphabet=tuple(alphabet),
            k=k,
            n_states=len(states),
            initial=frozenset(lookup(s) for s in initial),
            accepting=frozenset(lookup(s) for s in accepting),
            transitions=frozenset((lookup(a), x, d, lookup(b)) for a, x, d, b in transitions),
            state_names=tuple(states),
        )

    @property
    def directions(self) -> range:
        return range(1, self.k + 1)

    def state_index(self, name) -> int:
        return self.state_names.index(name)

    def with_accepting(self, accepting) -> "Naa":
        return Naa(self.alphabet, self.k, self.n_states, self.initial,
                   frozenset(accepting), self.transitions, self.state_names)

    @cached_property
    def table(self) -> tuple:
        """``table[s][m][letter]`` -> targets, with ``m`` the 0-based direction."""
        rows = [[dict() for _ in range(self.k)] for _ in range(self.n_states)]
        for src, letter, direction, dst in sorted(self.transitions):
            rows[src][direction - 1].setdefault(letter, []).append(dst)
        return tuple(tuple({a: tuple(t) for a, t in per_dir.items()} for per_dir in row)
                     for row in rows)


def underlying_nfa(naa: Naa) -> Nfa:
    """The NAA read as an NFA over directed letters ``(letter, direction)``."""
    alphabet = tuple((a, d) for d in naa.directions for a in naa.alphabet)
    trans = frozenset((s, (a, d), t) for s, a, d, t in naa.transitions)
    return Nfa(alphabet, naa.n_states, naa.initial, naa.accepting, trans, naa.state_names)


def project_extended_word(extended: Iterable[tuple], direction: int) -> Word:
    return tuple(letter for letter, d in extended if d == direction)


def shortest_accepted_length(nfa: Nfa):
    """Length of a shortest accepted word, or ``None`` for the empty language."""
    dist = {s: 0 for s in nfa.initial}
    queue = deque(nfa.initial)
    while queue:
        s = queue.popleft()
        if s in nfa.accepting:
            return dist[s]
        for targets in nfa.successors[s].values():
            for t in targets:
                if t not in dist:
                    dist[t] = dist[s] + 1
                    queue.append(t)
    return None


def coaccessible_states(nfa: Nfa) -> frozenset:
    preds = [set() for _ in range(nfa.n_states)]
    for s, _, t in nfa.transitions:
        preds[t].add(s)
    seen = set(nfa.accepting)
    stack = list(seen)
    while stack:
        t = stack.pop()
        for s in preds[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return frozenset(seen)


def naa_accepts_tuple(naa: Naa, words: Sequence[Sequence[str]]) -> bool:
    """Whether the tuple of words (one per direction) is accepted.

    Searches the product of per-direction read positions and states; a move on
    ``(letter, m)`` is enabled when the next unread letter of word ``m`` is
    ``letter``.
    """
    if len(words) != naa.k:
        raise ArityError(f"expected {naa.k} words, got {len(words)}")
    words = [tuple(w) for w in words]
    ends = tuple(len(w) for w in words)
    table = naa.table
    start = [(s,) + (0,) * naa.k for s in naa.initial]
    seen = set(start)
    stack = list(start)
    while stack:
        cfg = stack.pop()
        s = cfg[0]
        if s in naa.accepting and cfg[1:] == ends:
            return True
        for m in range(naa.k):
            pos = cfg[m + 1]
            if pos < ends[m]:
                for t in table[s][m].get(words[m][pos], ()):
                    nxt = (t,) + cfg[1:m + 1] + (pos + 1,) + cfg[m + 2:]
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return False


def _eps_closure(states, eps):
    closure = set(states)
    stack = list(states)
    while stack:
        s = stack.pop()
        for t in eps[s]:
            if t not in closure:
                closure.add(t)
                stack.append(t)
    return frozenset(closure)


def project_naa(naa: Naa, direction: int) -> Dfa:
    """Complete DFA for the projection of the NAA's language onto ``direction``.

    Transitions on other directions become epsilon moves, which the subset
    construction eliminates.  The empty subset serves as the dead sink.
    """
    if direction not in naa.directions:
        raise AutomatonError(f"unknown direction {direction!r}")
    eps = [[] for _ in range(naa.n_states)]
    moves = [dict() for _ in range(naa.n_states)]
    for s, a, d, t in naa.transitions:
        if d == direction:
            moves[s].setdefault(a, []).append(t)
        else:
            eps[s].append(t)
    limit = 2 ** naa.n_states
    start = _eps_closure(naa.initial, eps)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = {}
        for a in naa.alphabet:
            step = {t for s in subset for t in moves[s].get(a, ())}
            target = _eps_closure(step, eps)
            if target not in index:
                if len(index) >= limit:
                    raise GuardError("subset construction exceeded 2^|S| subsets")
                index[target] = len(order)
                order.append(target)
            row[a] = index[target]
        delta.append(row)
        i += 1
    accepting = frozenset(i for i, sub in enumerate(order) if sub & naa.accepting)
    names = tuple("{" + ",".join(naa.state_names[s] for s in sorted(sub)) + "}" for sub in order)
    return Dfa(naa.alphabet, len(order), 0, accepting, tuple(delta), names)
