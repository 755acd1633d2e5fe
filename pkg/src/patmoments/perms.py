"""
Permutations in one-line notation, cycle types, and pattern counting.

Everything is 1-based: a permutation of S_n is a word pi_1 ... pi_n on the
alphabet {1..n}.  An occurrence of the pattern sigma in S_k inside pi is an
index tuple i_1 < ... < i_k whose values pi_{i_1}, ..., pi_{i_k} are
order-isomorphic to sigma.

Patterns are generalized to arbitrary surjections [K] -> {1..r}: a word w is
"sorted as" the pattern p when w_a < w_b exactly when p_a < p_b for all a, b
(repeated pattern values therefore force equal word letters).  Every word has
a unique normalized pattern, its sorting pattern.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation.

    >>> Permutation.parse("231").word
    (2, 3, 1)
    >>> Permutation.identity(3)(2)
    2
    """

    word: tuple[int, ...]

    def __post_init__(self):
        n = len(self.word)
        if sorted(self.word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.word!r}")

    @property
    def n(self) -> int:
        return len(self.word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse one-line notation: compact ("231"), spaced ("2 3 1"), or
        comma-separated ("10,1,2,...") for entries beyond 9."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation string")
        if "," in text:
            values = [int(p) for p in text.split(",")]
        elif any(ch.isspace() for ch in text):
            values = [int(p) for p in text.split()]
        else:
            values = [int(ch) for ch in text]
        return cls(tuple(values))

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least element, ordered by it."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            pos = start
            while not seen[pos - 1]:
                seen[pos - 1] = True
                cyc.append(pos)
                pos = self.word[pos - 1]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.word)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, stored as sorted (length, multiplicity) pairs.

    >>> str(CycleType.from_parts((3, 1, 1)))
    '1^2 3^1'
    """

    mults: tuple[tuple[int, int], ...]

    def __post_init__(self):
        lengths = [i for i, _ in self.mults]
        if lengths != sorted(set(lengths)):
            raise ValueError("cycle lengths must be strictly increasing and unique")
        if any(i < 1 or m < 1 for i, m in self.mults):
            raise ValueError("cycle lengths and multiplicities must be positive")

    @classmethod
    def from_mults(cls, mapping: Mapping[int, int]) -> "CycleType":
        return cls(tuple(sorted((i, m) for i, m in mapping.items() if m > 0)))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "CycleType":
        mults: dict[int, int] = {}
        for p in parts:
            mults[p] = mults.get(p, 0) + 1
        return cls.from_mults(mults)

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        """Parse "1^2 2^1" (a bare "i" means i^1)."""
        mults: dict[int, int] = {}
        for token in text.split():
            if "^" in token:
                i, m = token.split("^")
                mults[int(i)] = mults.get(int(i), 0) + int(m)
            else:
                mults[int(token)] = mults.get(int(token), 0) + 1
        return cls.from_mults(mults)

    @property
    def n(self) -> int:
        return sum(i * m for i, m in self.mults)

    def m(self, i: int) -> int:
        for j, mult in self.mults:
            if j == i:
                return mult
        return 0

    def m_values(self, num_m: int) -> dict[int, int]:
        """Multiplicities m_1..m_K as a dense dict (zeros included)."""
        return {i: self.m(i) for i in range(1, num_m + 1)}

    def parts(self) -> tuple[int, ...]:
        """The cycle type as a weakly decreasing partition of n."""
        out: list[int] = []
        for i, m in reversed(self.mults):
            out.extend([i] * m)
        return tuple(out)

    def __str__(self) -> str:
        return " ".join(f"{i}^{m}" for i, m in self.mults)


@dataclass(frozen=True)
class GeneralizedPattern:
    """A surjection [K] -> {1..r} recorded as its value word, normalized so the
    image is exactly {1..r}.

    >>> GeneralizedPattern.from_word((5, 5)).values
    (1, 1)
    >>> GeneralizedPattern.from_word((2, 9, 4)).values
    (1, 3, 2)
    """

    values: tuple[int, ...]

    def __post_init__(self):
        r = max(self.values, default=0)
        if set(self.values) != set(range(1, r + 1)):
            raise ValueError(f"pattern image must be {{1..r}}: {self.values!r}")

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "GeneralizedPattern":
        """The sorting pattern of a word: values replaced by their ranks, ties collapsed."""
        ranks = {v: i + 1 for i, v in enumerate(sorted(set(word)))}
        return cls(tuple(ranks[v] for v in word))

    @classmethod
    def from_permutation(cls, perm: Permutation) -> "GeneralizedPattern":
        return cls(perm.word)

    @property
    def K(self) -> int:
        return len(self.values)

    @property
    def r(self) -> int:
        return max(self.values, default=0)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def is_sorted_as(word: Sequence[int], pattern: GeneralizedPattern) -> bool:
    """Whether word_a < word_b exactly when pattern_a < pattern_b, for all a, b.

    >>> is_sorted_as((3, 7), GeneralizedPattern((1, 2)))
    True
    >>> is_sorted_as((5, 5), GeneralizedPattern((1, 1)))
    True
    >>> is_sorted_as((2, 9, 4), GeneralizedPattern((1, 3, 2)))
    True
    """
    vals = pattern.values
    if len(word) != len(vals):
        raise ValueError(f"word length {len(word)} != pattern length {len(vals)}")
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            if (word[a] < word[b]) != (vals[a] < vals[b]):
                return False
            if (word[b] < word[a]) != (vals[b] < vals[a]):
                return False
    return True


def count_occurrences(sigma_word: Sequence[int], pi_word: Sequence[int]) -> int:
    """Occurrences of the pattern word sigma in the permutation word pi.

    Enumerates index tuples i_1 < ... < i_k left to right, pruning as soon as a
    chosen prefix violates one of sigma's pairwise order relations.
    """
    k, n = len(sigma_word), len(pi_word)
    if k == 0:
        return 1
    if k > n:
        return 0
    count = 0
    chosen_vals: list[int] = []

    def extend(depth: int, start: int) -> None:
        nonlocal count
        for i in range(start, n - (k - depth) + 1):
            v = pi_word[i]
            ok = True
            for a in range(depth):
                if (chosen_vals[a] < v) != (sigma_word[a] < sigma_word[depth]):
                    ok = False
                    break
            if not ok:
                continue
            if depth == k - 1:
                count += 1
            else:
                chosen_vals.append(v)
                extend(depth + 1, i + 1)
                chosen_vals.pop()

    extend(0, 0)
    return count


def pattern_occurrences(sigma: Permutation, pi: Permutation) -> int:
    """N_sigma(pi): the number of index tuples in pi order-isomorphic to sigma.

    >>> pattern_occurrences(Permutation.parse("231"), Permutation.parse("41523"))
    2
    """
    return count_occurrences(sigma.word, pi.word)


def cycle_type(pi: Permutation) -> CycleType:
    """Cycle type of a permutation.

    >>> str(cycle_type(Permutation.parse("21435")))
    '1^1 2^2'
    """
    return CycleType.from_parts(len(c) for c in pi.cycles())


def class_size(ct: CycleType) -> int:
    """Size of the conjugacy class: n! / prod_i (i^{m_i} m_i!)."""
    n = ct.n
    denom = 1
    for i, m in ct.mults:
        denom *= i**m * math.factorial(m)
    return math.factorial(n) // denom


def class_representative(ct: CycleType) -> Permutation:
    """Canonical member of the class: cycles laid out consecutively by increasing
    length, each cycle a left-rotation on its block.

    >>> str(class_representative(CycleType.parse("1^1 3^1")))
    '1 3 4 2'
    """
    word: list[int] = []
    base = 0
    for i, m in ct.mults:
        for _ in range(m):
            block = list(range(base + 1, base + i + 1))
            word.extend(block[1:] + block[:1])
            base += i
    return Permutation(tuple(word))


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in reverse-lexicographic order; parts bounded by max_part.

    >>> list(partitions(3))
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _cycle_types_tuple(n: int) -> tuple[CycleType, ...]:
    return tuple(CycleType.from_parts(p) for p in partitions(n))


def enumerate_cycle_types(n: int) -> list[CycleType]:
    """All cycle types of S_n, in reverse-lexicographic partition order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(_cycle_types_tuple(n))


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All words of S_n in lexicographic order (constant memory per step)."""
    return itertools.permutations(range(1, n + 1))
