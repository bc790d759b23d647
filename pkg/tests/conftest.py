"""Shared random-instance builders for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from hyperpm import Dfa, Naa
from hyperpm.benchmarks import build_counting_naa, build_packet_pairs_naa

LETTERS = ("a", "b", "c")

# Example log from the network monitoring scenario, 30 packets.
PACKET_LOG = ("sQ Q eQ sQ Q Q sP eQ P P sQ Q P Q P eP sP Q P P P P P eQ P eP sP P P eP").split()
PACKET_GOLDEN = {
    ((0, 1, 3), (0, 27, 30)),
    ((0, 4, 8), (0, 7, 16)),
    ((0, 11, 24), (0, 17, 26)),
}

BIG_WORD = "d # a a # b b b # a a a # # e".split()
BIG_GOLDEN = {((0, 2, 5), (0, 5, 7)), ((0, 9, 13), (0, 5, 8))} | {
    ((0, 13, 14), (0, i, i)) for i in (2, 5, 9, 13, 14)
}


def random_naa(rng: random.Random, max_k=3, max_states=5, max_letters=3, density=None) -> Naa:
    k = rng.randint(1, max_k)
    n = rng.randint(1, max_states)
    alphabet = LETTERS[:rng.randint(1, max_letters)]
    density = rng.uniform(0.05, 0.3) if density is None else density
    trans = {(s, a, d, t) for s in range(n) for a in alphabet for d in range(1, k + 1)
             for t in range(n) if rng.random() < density}
    initial = {rng.randrange(n)} | {s for s in range(n) if rng.random() < 0.2}
    accepting = {s for s in range(n) if rng.random() < 0.35} or {rng.randrange(n)}
    return Naa(alphabet, k, n, frozenset(initial), frozenset(accepting), frozenset(trans))


def random_words(rng: random.Random, alphabet, max_count=2, max_len=6) -> list:
    return [tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
            for _ in range(rng.randint(1, max_count))]


def random_dfa(rng: random.Random, max_states=4, alphabet=("a", "b")) -> Dfa:
    n = rng.randint(1, max_states)
    delta = tuple({a: rng.randrange(n) for a in alphabet} for _ in range(n))
    accepting = frozenset(s for s in range(n) if rng.random() < 0.4)
    return Dfa(alphabet, n, rng.randrange(n), accepting, delta)


def corpus(seed: int, size: int):
    """Seeded list of ``(naa, words)`` instances."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        naa = random_naa(rng)
        out.append((naa, random_words(rng, naa.alphabet)))
    return out


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def naa_instances(draw, max_k=3, max_states=4, max_letters=2, max_len=5):
    rng = random.Random(draw(seeds))
    naa = random_naa(rng, max_k, max_states, max_letters)
    return naa, random_words(rng, naa.alphabet, max_len=max_len)


@st.composite
def dfas(draw, max_states=4):
    return random_dfa(random.Random(draw(seeds)), max_states)


@pytest.fixture(scope="session")
def counting():
    return build_counting_naa()


@pytest.fixture(scope="session")
def packet_pairs():
    return build_packet_pairs_naa()
