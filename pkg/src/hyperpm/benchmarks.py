"""Benchmark automata and seeded input generation.

Letters that pair an input with an output bit are spelled ``<input>_T`` and
``<input>_F`` (``a_T`` is input ``a`` with output true), since file formats
reserve commas.  The delimiter of the counting pattern is ``#``.

Random words come from :class:`XorShift64Star`:

* seeding: ``state = splitmix64(seed)``, replaced by ``0x9E3779B97F4A7C15``
  if it is zero;
* step: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (all mod 2**64), output
  ``x * 0x2545F4914F6CDD1D mod 2**64``;
* ``below(n)`` maps an output ``r`` to ``((r >> 32) * n) >> 32``.

Words are drawn letter by letter, word by word, in order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Naa
from .exceptions import AutomatonError

MASK64 = (1 << 64) - 1

FAMILIES = ("counting", "interference", "robustness", "packet-pairs", "many-dirs", "blowup", "cnf")

IO_LETTERS = ("a_T", "a_F", "b_T", "b_F")
PACKET_LETTERS = ("sQ", "Q", "eQ", "sP", "P", "eP")


def splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """64-bit xorshift* generator; bit-exact across platforms."""

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        return ((self.next() >> 32) * n) >> 32

    def choice(self, seq):
        return seq[self.below(len(seq))]


def random_words(alphabet, count: int, length: int, seed: int) -> list:
    rng = XorShift64Star(seed)
    alphabet = tuple(alphabet)
    return [tuple(rng.choice(alphabet) for _ in range(length)) for _ in range(count)]


def build_counting_naa() -> Naa:
    """Delimited ``a`` block on direction 1 as long as the ``b`` block on direction 2."""
    return Naa.from_names(
        alphabet=("#", "a", "b"), k=2,
        states=("l0", "l1", "l2", "l3", "lf"),
        initial=("l0",), accepting=("lf",),
        transitions=[
            ("l0", "#", 1, "l1"),
            ("l1", "#", 2, "l2"),
            ("l2", "a", 1, "l3"),
            ("l3", "b", 2, "l2"),
            ("l2", "#", 1, "lf"),
        ],
    )


def _flip(letter: str) -> str:
    base, out = letter.rsplit("_", 1)
    return f"{base}_{'F' if out == 'T' else 'T'}"


def build_interference_naa() -> Naa:
    """Pairs of runs that agree on inputs so far but disagree on an output."""
    order = ("a_F", "a_T", "b_F", "b_T")
    states = [f"s{i}" for i in range(11)]
    trans = []
    for n, x in enumerate(order):
        first, loop = f"s{n + 1}", f"s{n + 6}"
        trans.append(("s0", x, 1, first))
        trans.append((first, x, 2, "s5"))
        trans.append(("s5", x, 1, loop))
        trans.append((loop, x, 2, "s5"))
        trans.append((loop, _flip(x), 2, "s10"))
    return Naa.from_names(order, 2, states, ("s0",), ("s10",), trans)


def _input(letter: str) -> str:
    return letter.rsplit("_", 1)[0]


def build_robustness_naa() -> Naa:
    """Stutter-equivalent input sequences with diverging outputs.

    ``A1:x`` holds the first block of ``x`` on direction 1, ``A2:x`` the same
    block on direction 2, and ``B:x:y`` a new direction-1 block ``y`` after
    an aligned ``x`` block.
    """
    letters = IO_LETTERS
    states = ["init"] + [f"A1:{x}" for x in letters] + [f"A2:{x}" for x in letters]
    states += [f"B:{x}:{y}" for x in letters for y in letters if y != x]
    states.append("acc")
    trans = []
    for x in letters:
        a1, a2 = f"A1:{x}", f"A2:{x}"
        trans += [("init", x, 1, a1), (a1, x, 1, a1), (a1, x, 2, a2), (a2, x, 2, a2)]
        # Entered from the initial state: divergence on the first block.
        trans.append((a1, _flip(x), 2, "acc"))
        for y in letters:
            if y == x:
                continue
            b = f"B:{x}:{y}"
            trans += [(a2, y, 1, b), (b, y, 1, b), (b, y, 2, f"A2:{y}")]
            if _input(y) != _input(x):
                trans.append((b, _flip(y), 2, "acc"))
    return Naa.from_names(letters, 2, states, ("init",), ("acc",), trans)


def build_packet_pairs_naa() -> Naa:
    """Request on direction 1 answered by a response twice its size on direction 2."""
    states = ("l0", "l1", "l2", "l3", "l4", "l5", "lf")
    trans = [
        ("l0", "sQ", 1, "l1"),
        ("l1", "sP", 2, "l2"),
        ("l2", "Q", 1, "l3"),
        ("l3", "P", 2, "l4"),
        ("l4", "P", 2, "l2"),
        ("l2", "eQ", 1, "l5"),
        ("l5", "eP", 2, "lf"),
    ]
    for s in ("l2", "l3", "l4"):
        trans += [(s, x, 1, s) for x in ("sP", "P", "eP")]
        trans += [(s, x, 2, s) for x in ("sQ", "Q", "eQ")]
    return Naa.from_names(PACKET_LETTERS, 2, states, ("l0",), ("lf",), trans)


def blowup_letters(k: int) -> tuple:
    return tuple(f"a{i}" for i in range(1, k + 1)) + ("b",)


def build_blowup_naa(k: int) -> Naa:
    """``a_m a_m a_m b`` on each direction ``m`` in turn."""
    if k < 1:
        raise AutomatonError("blowup needs k >= 1")
    states = [f"s{j}_{m}" for m in range(1, k + 1) for j in range(1, 5)] + ["lf"]
    trans = []
    for m in range(1, k + 1):
        chain = [f"s{j}_{m}" for j in range(1, 5)]
        nxt = f"s1_{m + 1}" if m < k else "lf"
        a = f"a{m}"
        trans += [(chain[0], a, m, chain[1]), (chain[1], a, m, chain[2]),
                  (chain[2], a, m, chain[3]), (chain[3], "b", m, nxt)]
    return Naa.from_names(blowup_letters(k), k, states, ("s1_1",), ("lf",), trans)


def blowup_words(k: int, n: int) -> list:
    return [(f"a{i}",) * n + ("b",) for i in range(1, k + 1)]


def many_dirs_letters(k: int) -> tuple:
    if k <= 26:
        loop = tuple(chr(ord("a") + i) for i in range(k))
    else:
        loop = tuple(f"c{i}" for i in range(1, k + 1))
    return ("#",) + loop


def build_many_dirs_naa(k: int) -> Naa:
    """Counting pattern over ``k`` directions with a round-robin loop.

    Opens with ``#`` on each direction in order, then repeats one letter per
    direction (the ``m``-th loop letter on direction ``m``), and closes with
    ``#`` on direction 1.  For ``k = 2`` this is the counting pattern.
    """
    if k < 2:
        raise AutomatonError("many-dirs needs k >= 2")
    letters = many_dirs_letters(k)
    states = [f"o{m}" for m in range(k)] + ["loop"] + [f"r{m}" for m in range(1, k)] + ["lf"]
    trans = []
    for m in range(k):
        trans.append((f"o{m}", "#", m + 1, f"o{m + 1}" if m + 1 < k else "loop"))
    ring = ["loop"] + [f"r{m}" for m in range(1, k)] + ["loop"]
    for m in range(k):
        trans.append((ring[m], letters[m + 1], m + 1, ring[m + 1]))
    trans.append(("loop", "#", 1, "lf"))
    return Naa.from_names(letters, k, states, ("o0",), ("lf",), trans)


@dataclass(frozen=True)
class BenchSpec:
    family: str
    k: int = 2
    word_len: int = 100
    word_count: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family in ("many-dirs", "blowup") and self.k < 2:
            raise ValueError(f"{self.family} needs k >= 2")
        if self.word_len < 1:
            raise ValueError("word length must be positive")
        if self.word_count < 0:
            raise ValueError("word count must be non-negative")


def random_cnf(num_vars: int, num_clauses: int, rng: XorShift64Star, max_width: int = 3):
    from .oracle import Cnf

    clauses = []
    for _ in range(num_clauses):
        width = 1 + rng.below(min(max_width, num_vars))
        chosen = []
        pool = list(range(1, num_vars + 1))
        for _ in range(width):
            v = pool.pop(rng.below(len(pool)))
            chosen.append(v if rng.below(2) else -v)
        clauses.append(tuple(chosen))
    return Cnf(num_vars, tuple(clauses))


def generate(spec: BenchSpec):
    """``(naa, words)`` for a benchmark spec."""
    fam = spec.family
    if fam == "counting":
        naa = build_counting_naa()
    elif fam == "interference":
        naa = build_interference_naa()
    elif fam == "robustness":
        naa = build_robustness_naa()
    elif fam == "packet-pairs":
        naa = build_packet_pairs_naa()
    elif fam == "many-dirs":
        naa = build_many_dirs_naa(spec.k)
    elif fam == "blowup":
        # The pattern fixes the words; word_len counts the trailing b.
        return build_blowup_naa(spec.k), blowup_words(spec.k, spec.word_len - 1)
    else:
        from .oracle import naa_from_cnf

        # k variables, word_len clauses.
        cnf = random_cnf(spec.k, spec.word_len, XorShift64Star(spec.seed))
        return naa_from_cnf(cnf)
    return naa, random_words(naa.alphabet, spec.word_count, spec.word_len, spec.seed)
