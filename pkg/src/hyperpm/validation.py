"""Input validation shared by the estimator and the CLI."""

from __future__ import annotations

import os
from collections.abc import Mapping

from .automata import Naa, check_token
from .exceptions import AutomatonError, FormatError

ALGORITHMS = ("naive", "fjs", "proj", "fjs-proj", "oracle")


def check_naa(naa) -> Naa:
    """Accept an :class:`Naa`, an NAA document (dict) or a path to one."""
    from . import io

    if isinstance(naa, Naa):
        return naa
    if isinstance(naa, Mapping):
        return io.naa_from_dict(dict(naa))
    if isinstance(naa, (str, os.PathLike)):
        return io.load_naa(naa)
    raise AutomatonError(f"cannot interpret {type(naa).__name__} as an NAA")


def check_word(word, where="word") -> tuple:
    if isinstance(word, str):
        word = word.split()
    try:
        word = tuple(word)
    except TypeError:
        raise FormatError("a word must be a string or a sequence of letters", where) from None
    if not word:
        raise FormatError("words must be non-empty", where)
    for letter in word:
        try:
            check_token(letter)
        except AutomatonError as exc:
            raise FormatError(str(exc), where) from None
    return word


def check_words(words) -> list:
    """Normalise a word list to tuples of letters.

    A bare string counts as a single word with whitespace-separated letters.
    Letters outside the NAA alphabet are allowed; no transition reads them.
    """
    if isinstance(words, str):
        words = [words]
    return [check_word(w, f"word {i}") for i, w in enumerate(words)]


def check_algorithm(name: str) -> str:
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")
    return name
