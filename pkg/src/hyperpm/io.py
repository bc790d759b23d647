"""File formats.

NAA files are JSON objects::

    {"alphabet": ["#", "a", "b"], "directions": 2,
     "states": ["l0", "l1"], "initial": ["l0"], "accepting": ["l1"],
     "transitions": [{"from": "l0", "letter": "#", "direction": 1, "to": "l1"}]}

Word files hold one word per line with whitespace-separated letters; blank
lines are skipped and word ids count the remaining lines from 0.

CNF files use DIMACS clause lines: an optional ``p cnf <vars> <clauses>``
header, ``c`` comment lines, and clauses terminated by ``0``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .automata import Naa
from .exceptions import AutomatonError, FormatError
from .oracle import Cnf

NAA_FIELDS = ("alphabet", "directions", "states", "initial", "accepting", "transitions")


def naa_to_dict(naa: Naa) -> dict:
    names = naa.state_names
    return {
        "alphabet": list(naa.alphabet),
        "directions": naa.k,
        "states": list(names),
        "initial": [names[s] for s in sorted(naa.initial)],
        "accepting": [names[s] for s in sorted(naa.accepting)],
        "transitions": [
            {"from": names[s], "letter": a, "direction": d, "to": names[t]}
            for s, a, d, t in sorted(naa.transitions, key=lambda r: (r[0], r[2], naa.alphabet.index(r[1]), r[3]))
        ],
    }


def _expect(cond, message, location):
    if not cond:
        raise FormatError(message, location)


def _string_list(doc, key):
    value = doc[key]
    _expect(isinstance(value, list), "expected a list", key)
    for i, x in enumerate(value):
        _expect(isinstance(x, str) and x != "", "expected a non-empty string", f"{key}[{i}]")
    return value


def naa_from_dict(doc) -> Naa:
    _expect(isinstance(doc, dict), "expected a JSON object", "$")
    for key in NAA_FIELDS:
        _expect(key in doc, "missing field", key)
    alphabet = _string_list(doc, "alphabet")
    k = doc["directions"]
    _expect(isinstance(k, int) and not isinstance(k, bool) and k >= 1,
            "expected an integer >= 1", "directions")
    states = _string_list(doc, "states")
    initial = _string_list(doc, "initial")
    accepting = _string_list(doc, "accepting")
    known = set(states)
    for key, names in (("initial", initial), ("accepting", accepting)):
        for i, name in enumerate(names):
            _expect(name in known, f"unknown state {name!r}", f"{key}[{i}]")
    _expect(isinstance(doc["transitions"], list), "expected a list", "transitions")
    letters = set(alphabet)
    trans = []
    for i, rec in enumerate(doc["transitions"]):
        loc = f"transitions[{i}]"
        _expect(isinstance(rec, dict), "expected an object", loc)
        for key in ("from", "letter", "direction", "to"):
            _expect(key in rec, "missing field", f"{loc}.{key}")
        _expect(rec["from"] in known, f"unknown state {rec['from']!r}", f"{loc}.from")
        _expect(rec["to"] in known, f"unknown state {rec['to']!r}", f"{loc}.to")
        _expect(rec["letter"] in letters, f"letter {rec['letter']!r} not in alphabet", f"{loc}.letter")
        d = rec["direction"]
        _expect(isinstance(d, int) and not isinstance(d, bool) and 1 <= d <= k,
                f"direction must be an integer in 1..{k}", f"{loc}.direction")
        trans.append((rec["from"], rec["letter"], d, rec["to"]))
    try:
        return Naa.from_names(alphabet, k, states, initial, accepting, trans)
    except AutomatonError as exc:
        raise FormatError(str(exc), "$") from exc


def parse_naa(text: str, source: str = "<naa>") -> Naa:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    try:
        return naa_from_dict(doc)
    except FormatError as exc:
        raise FormatError(str(exc), source) from None


def load_naa(path) -> Naa:
    path = Path(path)
    return parse_naa(_read(path), str(path))


def dump_naa(naa: Naa, path=None) -> str:
    text = json.dumps(naa_to_dict(naa), indent=1, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def parse_words(text: str, source: str = "<words>") -> list:
    words = []
    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        for tok in tokens:
            if "," in tok:
                raise FormatError(f"letter {tok!r} contains a comma", f"{source}:{len(words) + 1}")
        words.append(tuple(tokens))
    return words


def load_words(path) -> list:
    path = Path(path)
    return parse_words(_read(path), str(path))


def dump_words(words, path=None) -> str:
    text = "".join(" ".join(w) + "\n" for w in words)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def parse_dimacs(text: str, source: str = "<cnf>") -> Cnf:
    declared = None
    clauses, current = [], []
    max_var = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("malformed header", f"{source}:{lineno}")
            try:
                declared = int(parts[2])
            except ValueError:
                raise FormatError("malformed header", f"{source}:{lineno}") from None
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", f"{source}:{lineno}") from None
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", f"{source}:{lineno}")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
                max_var = max(max_var, abs(lit))
    if current:
        clauses.append(tuple(current))
    num_vars = declared if declared is not None else max_var
    try:
        return Cnf(num_vars, tuple(clauses))
    except AutomatonError as exc:
        raise FormatError(str(exc), source) from None


def load_dimacs(path) -> Cnf:
    path = Path(path)
    return parse_dimacs(_read(path), str(path))


def format_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def format_match(match) -> str:
    return "[" + ",".join(f"({w},{i},{j})" for w, i, j in match) + "]"


def format_matches(matches) -> str:
    return "".join(format_match(m) + "\n" for m in sorted(matches))


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read file: {exc}", str(path)) from None
