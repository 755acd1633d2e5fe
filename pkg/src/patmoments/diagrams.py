"""
Diagram basis of the partition algebra and its matrix realization.

A (k,k)-set partition divides the 2k vertices {1..k, 1'..k'} into parts; the
vertex order is 1 < ... < k < 1' < ... < k' and internally vertex r is r-1,
vertex r' is k+r-1.  Canonical form sorts each part and lists parts by least
vertex, so diagrams are hashable values.

The algebra product stacks one diagram on top of another, identifies the
interface rows, counts the connected components confined to the interface
(each contributes a factor of the parameter t), and reads off the composite
diagram from the outer rows.

The x-basis is the unitriangular change of basis defined by the recursion
"every diagram is the sum of x over its coarsenings"; its coefficients are
integers independent of t.  The map phi realizes a diagram as an n^k x n^k
matrix acting on words over {1..n}: a diagram routes word I to word J when the
joint labeling (unprimed vertex r gets J_r, primed vertex r' gets I_r) is
constant on every part.  On the x-basis the same rule applies with the extra
requirement that distinct parts receive distinct labels.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import GuardrailError
from .mpoly import UPoly

DEFAULT_PHI_MAX_ENTRIES = 10_000_000


@dataclass(frozen=True)
class SetPartitionKK:
    """A set partition of {1..k, 1'..k'} in canonical form."""

    k: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vertices = [v for part in self.parts for v in part]
        if sorted(vertices) != list(range(2 * self.k)):
            raise ValueError(f"parts must partition the {2 * self.k} vertices")
        if any(not part for part in self.parts):
            raise ValueError("empty part")
        canonical = tuple(sorted((tuple(sorted(p)) for p in self.parts), key=lambda p: p[0]))
        object.__setattr__(self, "parts", canonical)

    @classmethod
    def from_parts(cls, k: int, parts: Iterable[Iterable[int]]) -> "SetPartitionKK":
        return cls(k, tuple(tuple(p) for p in parts))

    @classmethod
    def identity(cls, k: int) -> "SetPartitionKK":
        return cls(k, tuple((r, k + r) for r in range(k)))

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "SetPartitionKK":
        """Parse the text form "{1,1'}|{2'}|{2,3,3'}" (k inferred if omitted)."""
        labels: list[list[tuple[int, bool]]] = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            if not (chunk.startswith("{") and chunk.endswith("}")):
                raise ValueError(f"malformed part {chunk!r}")
            part = []
            for token in chunk[1:-1].split(","):
                token = token.strip()
                m = re.fullmatch(r"(\d+)('?)", token)
                if not m:
                    raise ValueError(f"malformed vertex {token!r}")
                part.append((int(m.group(1)), m.group(2) == "'"))
            labels.append(part)
        max_label = max(lbl for part in labels for lbl, _ in part)
        if k is None:
            k = max_label
        elif max_label > k:
            raise ValueError(f"vertex label {max_label} exceeds k={k}")
        parts = tuple(tuple((lbl - 1) + (k if primed else 0) for lbl, primed in part) for part in labels)
        return cls(k, parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def part_index(self, vertex: int) -> int:
        for i, part in enumerate(self.parts):
            if vertex in part:
                return i
        raise ValueError(f"vertex {vertex} out of range")

    def vertex_name(self, vertex: int) -> str:
        return f"{vertex + 1}" if vertex < self.k else f"{vertex - self.k + 1}'"

    def __str__(self) -> str:
        return "|".join("{" + ",".join(self.vertex_name(v) for v in part) + "}" for part in self.parts)


def set_partitions(seq: Sequence) -> Iterator[tuple[tuple, ...]]:
    """All set partitions of seq, streamed via restricted-growth strings.

    >>> sum(1 for _ in set_partitions(range(4)))
    15
    """
    items = list(seq)
    m = len(items)
    if m == 0:
        yield ()
        return
    a = [0] * m  # restricted growth string: a[0] = 0, a[i] <= max(a[:i]) + 1
    b = [0] * m  # running prefix maximum of a
    while True:
        nblocks = b[m - 1] + 1
        blocks: list[list] = [[] for _ in range(nblocks)]
        for i, code in enumerate(a):
            blocks[code].append(items[i])
        yield tuple(tuple(block) for block in blocks)
        i = m - 1
        while i > 0 and a[i] > b[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        b[i] = max(b[i - 1], a[i])
        for j in range(i + 1, m):
            a[j] = 0
            b[j] = b[i]


def all_diagrams(k: int) -> Iterator[SetPartitionKK]:
    """All (k,k)-set partitions (Bell(2k) of them), in a fixed streaming order."""
    for blocks in set_partitions(range(2 * k)):
        yield SetPartitionKK(k, blocks)


def bell_number(p: int) -> int:
    row = [1]
    for _ in range(p):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def multiply_diagrams(P1: SetPartitionKK, P2: SetPartitionKK) -> tuple[int, SetPartitionKK]:
    """Product of diagram basis elements: P1 * P2 = t^c * P3.

    Stacks P1 above P2 (P1's primed row identified with P2's unprimed row),
    merges parts across the interface, counts components that live entirely in
    the interface row, and restricts the rest to the outer rows.
    """
    if P1.k != P2.k:
        raise ValueError("diagrams must have the same k")
    k = P1.k
    parent = list(range(3 * k))  # rows: top 0..k-1, middle k..2k-1, bottom 2k..3k-1

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(u: int, v: int) -> None:
        parent[find(u)] = find(v)

    for part in P1.parts:  # P1 vertices map to global 0..2k-1
        for v in part[1:]:
            union(part[0], v)
    for part in P2.parts:  # P2 vertices shift up one row: +k
        for v in part[1:]:
            union(part[0] + k, v + k)
    components: dict[int, list[int]] = {}
    for v in range(3 * k):
        components.setdefault(find(v), []).append(v)
    c = sum(1 for comp in components.values() if all(k <= v < 2 * k for v in comp))
    outer_parts = []
    for comp in components.values():
        outer = [v if v < k else v - k for v in comp if v < k or v >= 2 * k]
        if outer:
            outer_parts.append(tuple(outer))
    return c, SetPartitionKK(k, tuple(outer_parts))


def coarsenings(P: SetPartitionKK) -> list[SetPartitionKK]:
    """All coarsenings of P (unions of its parts), P itself included.

    The count is the Bell number of the number of parts.
    """
    out = []
    for grouping in set_partitions(P.parts):
        merged = tuple(tuple(v for part in group for v in part) for group in grouping)
        out.append(SetPartitionKK(P.k, merged))
    return out


class DiagramCombo:
    """A linear combination of (k,k)-diagrams with coefficients in Q[t]."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: dict[SetPartitionKK, UPoly]):
        self.k = k
        self.terms = {P: c for P, c in terms.items() if not c.is_zero()}

    @classmethod
    def single(cls, P: SetPartitionKK, coeff=1) -> "DiagramCombo":
        c = coeff if isinstance(coeff, UPoly) else UPoly.const(coeff, "t")
        return cls(P.k, {P: c})

    @classmethod
    def zero(cls, k: int) -> "DiagramCombo":
        return cls(k, {})

    def items(self) -> list[tuple[SetPartitionKK, UPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagramCombo) and self.k == other.k and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "DiagramCombo") -> "DiagramCombo":
        if self.k != other.k:
            raise ValueError("mixed k")
        out = dict(self.terms)
        for P, c in other.terms.items():
            out[P] = out.get(P, UPoly.zero("t")) + c
        return DiagramCombo(self.k, out)

    def __sub__(self, other: "DiagramCombo") -> "DiagramCombo":
        return self + other.scale(-1)

    def scale(self, factor) -> "DiagramCombo":
        f = factor if isinstance(factor, UPoly) else UPoly.const(factor, "t")
        return DiagramCombo(self.k, {P: c * f for P, c in self.terms.items()})

    def __mul__(self, other: "DiagramCombo") -> "DiagramCombo":
        """Algebra product with t kept formal: diagram products carry t^c."""
        if not isinstance(other, DiagramCombo):
            return self.scale(other)
        out: dict[SetPartitionKK, UPoly] = {}
        for P1, c1 in self.terms.items():
            for P2, c2 in other.terms.items():
                c, P3 = multiply_diagrams(P1, P2)
                coeff = c1 * c2 * UPoly.monomial(c, 1, "t")
                out[P3] = out.get(P3, UPoly.zero("t")) + coeff
        return DiagramCombo(self.k, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {P}" for P, c in self.items())


_X_CACHE: dict[SetPartitionKK, dict[SetPartitionKK, int]] = {}


def _x_expand_ints(P: SetPartitionKK) -> dict[SetPartitionKK, int]:
    cached = _X_CACHE.get(P)
    if cached is not None:
        return cached
    acc: dict[SetPartitionKK, int] = {P: 1}
    for Q in coarsenings(P):
        if Q != P:
            for R, c in _x_expand_ints(Q).items():
                acc[R] = acc.get(R, 0) - c
    acc = {R: c for R, c in acc.items() if c}
    _X_CACHE[P] = acc
    return acc


def x_basis_expand(P: SetPartitionKK) -> DiagramCombo:
    """x_P in the diagram basis, by inverting the coarsening-sum recursion.

    The defining identity is P = sum of x_Q over all coarsenings Q of P; the
    system is unitriangular in the coarsening order, so x_P = P - sum of x_Q
    over proper coarsenings.  Coefficients are integers independent of t.
    """
    return DiagramCombo(P.k, {R: UPoly.const(c, "t") for R, c in _x_expand_ints(P).items()})


def _word_index(word: tuple[int, ...], n: int) -> int:
    idx = 0
    for w in word:
        idx = idx * n + (w - 1)
    return idx


def _check_phi_guardrail(k: int, n: int, max_entries: int) -> int:
    dim = n**k
    if dim * dim > max_entries:
        raise GuardrailError(
            f"phi matrix would have {dim}^2 = {dim * dim} entries > limit {max_entries}"
        )
    return dim


def _phi_single(P: SetPartitionKK, n: int, matrix: list[list], scalar) -> None:
    """Accumulate scalar * phi(P) into matrix.

    Monochromatic pairs (J, I) correspond bijectively to labelings of the
    parts by {1..n}: J reads the unprimed labels, I the primed ones.
    """
    k = P.k
    unprimed = [P.part_index(r) for r in range(k)]
    primed = [P.part_index(k + r) for r in range(k)]
    for labels in itertools.product(range(1, n + 1), repeat=P.num_parts):
        j_idx = _word_index(tuple(labels[i] for i in unprimed), n)
        i_idx = _word_index(tuple(labels[i] for i in primed), n)
        matrix[j_idx][i_idx] += scalar


def phi_matrix(element: SetPartitionKK | DiagramCombo, n: int, max_entries: int = DEFAULT_PHI_MAX_ENTRIES):
    """Matrix of the diagram action on words {1..n}^k, t specialized to n.

    Row index J, column index I, words ordered lexicographically; the (J, I)
    entry of a single diagram is 1 exactly when labeling unprimed vertex r
    with J_r and primed vertex r' with I_r is constant on every part.
    Entries stay plain ints unless a coefficient is a non-integer rational.
    """
    if isinstance(element, SetPartitionKK):
        element = DiagramCombo.single(element)
    dim = _check_phi_guardrail(element.k, n, max_entries)
    matrix = [[0] * dim for _ in range(dim)]
    for P, coeff in element.items():
        scalar = coeff(n)
        if scalar != 0:
            _phi_single(P, n, matrix, int(scalar) if scalar.denominator == 1 else scalar)
    return matrix


def phi_matrix_x(P: SetPartitionKK, n: int, max_entries: int = DEFAULT_PHI_MAX_ENTRIES):
    """Matrix of the x-basis element x_P directly from the distinct-labels rule:
    monochromatic labelings in which distinct parts get distinct labels."""
    dim = _check_phi_guardrail(P.k, n, max_entries)
    matrix = [[0] * dim for _ in range(dim)]
    k = P.k
    unprimed = [P.part_index(r) for r in range(k)]
    primed = [P.part_index(k + r) for r in range(k)]
    for labels in itertools.permutations(range(1, n + 1), P.num_parts):
        j_idx = _word_index(tuple(labels[i] for i in unprimed), n)
        i_idx = _word_index(tuple(labels[i] for i in primed), n)
        matrix[j_idx][i_idx] += 1
    return matrix


def kernel_check(P: SetPartitionKK, n: int, max_entries: int = DEFAULT_PHI_MAX_ENTRIES) -> bool:
    """Whether phi(x_P) is the zero matrix at this n.

    By the kernel theorem this happens exactly when P has more than n parts.
    """
    matrix = phi_matrix(x_basis_expand(P), n, max_entries)
    return all(v == 0 for row in matrix for v in row)


def mat_mul(A: list[list], B: list[list]) -> list[list]:
    """Dense matrix product; rows of A are usually sparse, zeros are skipped."""
    dim_i, dim_k, dim_j = len(A), len(B), len(B[0])
    out = [[0] * dim_j for _ in range(dim_i)]
    for i in range(dim_i):
        row_a = A[i]
        row_out = out[i]
        for kk in range(dim_k):
            a = row_a[kk]
            if a:
                row_b = B[kk]
                for j in range(dim_j):
                    if row_b[j]:
                        row_out[j] += a * row_b[j]
    return out


def mat_scale(A: list[list], factor) -> list[list]:
    return [[v * factor for v in row] for row in A]


def mat_eq(A: list[list], B: list[list]) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))
