import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpm import (brute_force_match_set, dfa_pattern_match, filter_irrelevant, hpm_fjs_proj,
                     hpm_naive, hpm_proj, init_queue_projected, project_naa,
                     relevant_indices_oracle)
from hyperpm.benchmarks import blowup_words, build_blowup_naa, build_counting_naa
from hyperpm.projection import allowed_starts, projections

from conftest import BIG_WORD, dfas, naa_instances

words_ab = st.lists(st.sampled_from("ab"), min_size=0, max_size=10).map(tuple)


def brute_pattern_match(dfa, word):
    out = set()
    for i in range(1, len(word) + 1):
        for j in range(i - 1, len(word) + 1):
            if dfa.accepts(word[i - 1:j]):
                out.add((i, j))
    return out


@settings(max_examples=200, deadline=None)
@given(dfas(), words_ab)
def test_filter_matches_oracle(dfa, word):
    fw = filter_irrelevant(dfa, word)
    assert fw.relevant() == relevant_indices_oracle(dfa, word)
    assert len(fw.masked) == len(word)
    assert all(x is None or x == word[h] for h, x in enumerate(fw.masked))


@settings(max_examples=200, deadline=None)
@given(dfas(), words_ab)
def test_pattern_match_matches_brute_force(dfa, word):
    assert dfa_pattern_match(dfa, word) == brute_pattern_match(dfa, word)


def test_counting_masks_on_big_word():
    naa = build_counting_naa()
    d1, d2 = projections(naa)
    assert filter_irrelevant(d1, BIG_WORD).render() == "_ # a a # _ _ _ # a a a # # _"
    assert filter_irrelevant(d2, BIG_WORD).render() == "_ # _ _ # b b b # _ _ _ # # _"


def test_foreign_letters_are_irrelevant():
    d1 = project_naa(build_counting_naa(), 1)
    assert filter_irrelevant(d1, ("z", "#", "#", "z")).relevant() == {2, 3}


def test_blowup_queue_sizes():
    naa, words = build_blowup_naa(3), blowup_words(3, 6)
    exact = init_queue_projected(naa, words, "exact")
    filtered = init_queue_projected(naa, words, "filtered")
    assert exact.total == 1
    assert filtered.total == 4 ** 3
    assert hpm_proj(naa, words, mode="exact")[0] == hpm_naive(naa, words)[0]


def test_unknown_mode():
    with pytest.raises(ValueError):
        allowed_starts(build_counting_naa(), [BIG_WORD], mode="fuzzy")


@settings(max_examples=100, deadline=None)
@given(naa_instances())
def test_exact_starts_within_filtered_starts(instance):
    naa, words = instance
    ex = allowed_starts(naa, words, "exact")
    fi = allowed_starts(naa, words, "filtered")
    for m in range(naa.k):
        for w in range(len(words)):
            for i in range(1, len(words[w]) + 1):
                assert not ex[m][w][i] or fi[m][w][i]


@settings(max_examples=100, deadline=None)
@given(naa_instances())
def test_projected_engines_equal_oracle(instance):
    naa, words = instance
    expected = brute_force_match_set(naa, words)
    for mode in ("filtered", "exact"):
        assert hpm_proj(naa, words, mode=mode)[0] == expected
        assert hpm_fjs_proj(naa, words, mode=mode)[0] == expected
