import itertools

import pytest
from hypothesis import given, settings

from hyperpm import (AutomatonError, ArityError, Dfa, Naa, Nfa, coaccessible_states,
                     naa_accepts_tuple, project_extended_word, project_naa,
                     shortest_accepted_length, underlying_nfa)
from hyperpm.automata import check_token
from hyperpm.benchmarks import build_counting_naa

from conftest import naa_instances


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_counting_accepts_balanced_pairs():
    naa = build_counting_naa()
    assert naa_accepts_tuple(naa, ["# a #".split(), "# b".split()])
    assert naa_accepts_tuple(naa, ["# a a #".split(), "# b b".split()])
    assert naa_accepts_tuple(naa, ["# #".split(), "#".split()])
    assert not naa_accepts_tuple(naa, ["# a a #".split(), "# b".split()])
    assert not naa_accepts_tuple(naa, ["# a #".split(), "# b b".split()])


def test_arity_is_checked():
    with pytest.raises(ArityError):
        naa_accepts_tuple(build_counting_naa(), [("#",)])


@pytest.mark.parametrize("token", ["", "a b", "a,b", 3])
def test_bad_tokens(token):
    with pytest.raises(AutomatonError):
        check_token(token)


def test_naa_rejects_bad_transitions():
    with pytest.raises(AutomatonError):
        Naa(("a",), 2, 2, frozenset({0}), frozenset({1}), frozenset({(0, "a", 3, 1)}))
    with pytest.raises(AutomatonError):
        Naa(("a",), 1, 2, frozenset({0}), frozenset({1}), frozenset({(0, "z", 1, 1)}))
    with pytest.raises(AutomatonError):
        Naa(("a",), 1, 2, frozenset({5}), frozenset({1}), frozenset())
    with pytest.raises(AutomatonError):
        Naa.from_names(("a",), 1, ["x", "x"], ["x"], ["x"], [])


def test_dfa_must_be_total():
    with pytest.raises(AutomatonError):
        Dfa(("a", "b"), 1, 0, frozenset(), ({"a": 0},))


def test_dfa_foreign_letter_is_dead():
    dfa = Dfa(("a",), 1, 0, frozenset({0}), ({"a": 0},))
    assert dfa.accepts(("a", "a"))
    assert dfa.run(("a", "z")) is None
    assert not dfa.accepts(("z",))


def test_shortest_and_coaccessible():
    nfa = Nfa(("x",), 4, frozenset({0}), frozenset({2}),
              frozenset({(0, "x", 1), (1, "x", 2), (0, "x", 3)}))
    assert shortest_accepted_length(nfa) == 2
    assert coaccessible_states(nfa) == {0, 1, 2}
    empty = Nfa(("x",), 2, frozenset({0}), frozenset({1}), frozenset())
    assert shortest_accepted_length(empty) is None


def test_counting_projection_languages():
    naa = build_counting_naa()
    d1, d2 = project_naa(naa, 1), project_naa(naa, 2)
    assert d1.accepts("# a a #".split()) and d1.accepts(("#", "#"))
    assert not d1.accepts(("#",)) and not d1.accepts("# b #".split())
    assert d2.accepts("# b b".split()) and d2.accepts(("#",))
    assert not d2.accepts("# a".split())


def test_projection_rejects_unknown_direction():
    with pytest.raises(AutomatonError):
        project_naa(build_counting_naa(), 3)


def extended_language(naa, max_len):
    """Accepted extended words up to ``max_len`` letters, by NFA simulation."""
    nfa = underlying_nfa(naa)
    layer = {(w, s) for w in [()] for s in nfa.initial}
    out = {w for w, s in layer if s in nfa.accepting}
    for _ in range(max_len):
        nxt = set()
        for w, s in layer:
            for letter, targets in nfa.successors[s].items():
                for t in targets:
                    nxt.add((w + (letter,), t))
        layer = nxt
        out |= {w for w, s in layer if s in nfa.accepting}
    return out


def projected_accepts(naa, m, word):
    """Search over (state, position); other directions move freely."""
    start = {(s, 0) for s in naa.initial}
    seen, stack = set(start), list(start)
    while stack:
        s, i = stack.pop()
        if i == len(word) and s in naa.accepting:
            return True
        for src, a, d, t in naa.transitions:
            if src != s:
                continue
            if d != m:
                nxt = (t, i)
            elif i < len(word) and word[i] == a:
                nxt = (t, i + 1)
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


@settings(max_examples=60, deadline=None)
@given(naa_instances(max_k=2, max_states=3, max_letters=2))
def test_projection_language_matches_extended_words(instance):
    naa, _ = instance
    ext = extended_language(naa, 5)
    for m in naa.directions:
        dfa = project_naa(naa, m)
        projected = {project_extended_word(w, m) for w in ext}
        for word in all_words(naa.alphabet, 4):
            expected = projected_accepts(naa, m, word)
            assert dfa.accepts(word) == expected
            if word in projected:
                assert expected


@settings(max_examples=60, deadline=None)
@given(naa_instances(max_k=2, max_states=3, max_letters=2))
def test_tuple_acceptance_agrees_with_extended_words(instance):
    naa, _ = instance
    ext = extended_language(naa, 4)
    for w in ext:
        assert naa_accepts_tuple(naa, [project_extended_word(w, m) for m in naa.directions])
    for tup in itertools.product(list(all_words(naa.alphabet, 2)), repeat=naa.k):
        if naa_accepts_tuple(naa, tup) and sum(map(len, tup)) <= 4:
            assert any(all(project_extended_word(w, m) == tup[m - 1] for m in naa.directions)
                       for w in ext)
