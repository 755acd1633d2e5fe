"""
Irreducible symmetric-group characters and stable decompositions.

Character values chi^lambda(cycle type) are computed by the Murnaghan-Nakayama
rule, implemented as border-strip removal on beta-sets (first-column hook
lengths): removing a strip of size r from lambda is subtracting r from one
beta number, with sign (-1)^(number of beta numbers jumped over).  Calls are
memoized on (partition, remaining cycle multiset).

Partitions are plain weakly-decreasing tuples of positive ints.  The padded
family lambda[n] = (n - |lambda|, lambda_1, ...) indexes the stable basis:
`decompose_stable` writes a polynomial class statistic M(n, m_1, ...) as
sum_lambda a^lambda(n) * chi^(lambda[n]) with each a^lambda an exact
polynomial in n, by sampling small symmetric groups, taking character inner
products, and interpolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import InternalCheckError
from .mpoly import MPoly, UPoly, interpolate_univariate, solve_unique_exact
from .perms import CycleType, class_size, enumerate_cycle_types, partitions

PartitionT = tuple[int, ...]


def check_partition(parts: Sequence[int]) -> PartitionT:
    parts = tuple(parts)
    if any(p < 1 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"not a partition (weakly decreasing, positive): {parts!r}")
    return parts


def partitions_up_to(size: int) -> list[PartitionT]:
    """All partitions of 0..size, ordered by size then reverse-lexicographic."""
    return [lam for s in range(size + 1) for lam in partitions(s)]


@lru_cache(maxsize=None)
def _mn(lam: PartitionT, cycles: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion; cycles is the remaining cycle-length multiset."""
    if not cycles:
        return 1
    r, rest = cycles[0], cycles[1:]
    L = len(lam)
    beta = [lam[i] + (L - 1 - i) for i in range(L)]  # strictly decreasing
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bset:
            continue
        crossed = sum(1 for x in beta if c < x < b)
        newbeta = sorted((bset - {b}) | {c}, reverse=True)
        newlam = tuple(nb - (L - 1 - i) for i, nb in enumerate(newbeta))
        while newlam and newlam[-1] == 0:
            newlam = newlam[:-1]
        total += (-1) ** crossed * _mn(newlam, rest)
    return total


def mn_character(lam: Sequence[int], ct: CycleType) -> int:
    """chi^lambda evaluated on a conjugacy class, |lambda| = n.

    >>> mn_character((2, 1), CycleType.parse("1^3"))
    2
    """
    lam = check_partition(lam)
    if sum(lam) != ct.n:
        raise ValueError(f"|lambda|={sum(lam)} but cycle type has n={ct.n}")
    return _mn(lam, ct.parts())


def pad_partition(lam: Sequence[int], n: int) -> PartitionT:
    """lambda[n] = (n - |lambda|, lambda_1, ..., lambda_l); needs n - |lambda| >= lambda_1.

    >>> pad_partition((2, 1), 8)
    (5, 2, 1)
    """
    lam = check_partition(lam)
    size = sum(lam)
    first = lam[0] if lam else 0
    if n - size < first:
        raise ValueError(f"cannot pad {lam} to n={n}: requires n - |lambda| >= lambda_1")
    return (n - size, *lam)


@dataclass(frozen=True)
class ClassFunction:
    """A function on the conjugacy classes of S_n, defined on all of them."""

    n: int
    values: Mapping[CycleType, Fraction]

    def __post_init__(self):
        expected = set(enumerate_cycle_types(self.n))
        if set(self.values) != expected:
            raise ValueError(f"class function must be defined on all {len(expected)} classes of S_{self.n}")

    def __call__(self, ct: CycleType) -> Fraction:
        return self.values[ct]


@lru_cache(maxsize=None)
def _character_row(lam: PartitionT, n: int) -> tuple[int, ...]:
    return tuple(_mn(lam, ct.parts()) for ct in enumerate_cycle_types(n))


def character_class_function(lam: Sequence[int]) -> ClassFunction:
    """chi^lambda as a ClassFunction on S_{|lambda|}."""
    lam = check_partition(lam)
    n = sum(lam)
    row = _character_row(lam, n)
    cts = enumerate_cycle_types(n)
    return ClassFunction(n, {ct: Fraction(v) for ct, v in zip(cts, row)})


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    """(1/n!) sum over classes of |class| * f * g."""
    if f.n != g.n:
        raise ValueError(f"class functions on different groups: {f.n} != {g.n}")
    total = Fraction(0)
    for ct in enumerate_cycle_types(f.n):
        total += class_size(ct) * f(ct) * g(ct)
    return total / math.factorial(f.n)


def _monomials_of_weight_at_most(r: int) -> list[tuple[int, ...]]:
    """Exponent vectors (a_1..a_r) with sum i*a_i <= r, ordered deterministically."""
    out = []
    for w in range(r + 1):
        for lam in partitions(w, max_part=r):
            a = [0] * r
            for p in lam:
                a[p - 1] += 1
            out.append(tuple(a))
    return out


def _tail_vectors(r: int) -> list[tuple[int, ...]]:
    """Multiplicity vectors (m_2..m_r) with sum i*m_i <= r."""
    out = []
    for w in range(r + 1):
        for lam in partitions(w):
            if any(p == 1 for p in lam):
                continue
            tail = [0] * max(r - 1, 0)
            for p in lam:
                tail[p - 2] += 1
            out.append(tuple(tail))
    return out


@lru_cache(maxsize=None)
def character_polynomial(mu: PartitionT) -> MPoly:
    """The polynomial P_mu(m_1..m_r) agreeing with chi^(mu[n]) on every S_n, n >= 2r.

    Computed by exact interpolation: evaluate the padded character on cycle
    types 1^{m_1} 2^{m_2} ... r^{m_r} (tail weight <= r, m_1 swept over a full
    window with n >= 2r), solve for the coefficients on the monomial basis of
    weighted degree <= r, and validate the solution on held-out points.  The
    linear system is overdetermined and rank-checked, so a sampling artifact
    cannot slip through.

    >>> str(character_polynomial((1,)))
    'm_1 - 1'
    """
    mu = check_partition(mu)
    r = sum(mu)
    if r == 0:
        return MPoly.const(1)
    monomials = _monomials_of_weight_at_most(r)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def sample(m_vec: tuple[int, ...]) -> tuple[list[Fraction], Fraction]:
        mults = {i: m for i, m in enumerate(m_vec, start=1) if m}
        n = sum(i * m for i, m in mults.items())
        ct = CycleType.from_mults(mults)
        value = Fraction(mn_character(pad_partition(mu, n), ct))
        row = [Fraction(_eval_monomial(a, m_vec)) for a in monomials]
        return row, value

    samples: list[tuple[int, ...]] = []
    held_out: list[tuple[int, ...]] = []
    for tail in _tail_vectors(r):
        w = sum(i * m for i, m in enumerate(tail, start=2))
        m1_lo = max(0, 2 * r - w)
        for m1 in range(m1_lo, m1_lo + r + 2):
            samples.append((m1, *tail))
        held_out.append((m1_lo + r + 2, *tail))
    for vec in samples:
        row, value = sample(vec)
        rows.append(row)
        rhs.append(value)
    coeffs = solve_unique_exact(rows, rhs)
    terms = {(0, *a): c for a, c in zip(monomials, coeffs)}
    poly = MPoly(r, terms)
    for vec in held_out:
        row, value = sample(vec)
        if poly.evaluate(0, {i: m for i, m in enumerate(vec, start=1)}) != value:
            raise InternalCheckError(f"character polynomial for {mu} fails held-out check at {vec}")
    return poly


def _eval_monomial(a: tuple[int, ...], m_vec: tuple[int, ...]) -> int:
    v = 1
    for e, m in zip(a, m_vec):
        if e:
            v *= m**e
    return v


@dataclass(frozen=True)
class StableDecomposition:
    """Coefficients a^lambda(n) of a class statistic in the padded character basis.

    Valid for every n >= 2*dk: statistic(n, ct) = sum_lambda a^lambda(n) *
    chi^(lambda[n])(ct), with deg a^lambda <= dk - |lambda|.
    """

    dk: int
    coeffs: Mapping[PartitionT, UPoly]

    def __post_init__(self):
        for lam, a in self.coeffs.items():
            if sum(lam) > self.dk:
                raise ValueError(f"partition {lam} exceeds the stable range |lambda| <= {self.dk}")
            if a.degree() > self.dk - sum(lam):
                raise ValueError(f"a^{lam} has degree {a.degree()} > {self.dk - sum(lam)}")

    def a(self, lam: Sequence[int]) -> UPoly:
        return self.coeffs.get(tuple(lam), UPoly.zero())

    def support(self) -> list[PartitionT]:
        return [lam for lam in partitions_up_to(self.dk) if not self.a(lam).is_zero()]

    def synthesize(self, n: int) -> ClassFunction:
        """Reassemble the class function sum_lambda a^lambda(n) chi^(lambda[n]) on S_n."""
        values = {ct: Fraction(0) for ct in enumerate_cycle_types(n)}
        for lam in partitions_up_to(self.dk):
            a_val = self.a(lam)(n)
            if a_val == 0:
                continue
            padded = pad_partition(lam, n)
            for ct in values:
                values[ct] += a_val * mn_character(padded, ct)
        return ClassFunction(n, values)

    def __str__(self) -> str:
        lines = []
        for lam in partitions_up_to(self.dk):
            a = self.a(lam)
            if a.is_zero():
                continue
            name = "[" + ",".join(map(str, lam)) + "]" if lam else "[]"
            lines.append(f"a^{name} = {a}")
        return "\n".join(lines) if lines else "0"

    def to_json(self) -> dict:
        terms = []
        for lam in partitions_up_to(self.dk):
            a = self.a(lam)
            if not a.is_zero():
                terms.append({"lambda": list(lam), "a": a.to_json()})
        return {"dk": self.dk, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "StableDecomposition":
        coeffs = {tuple(t["lambda"]): UPoly.from_json(t["a"]) for t in data["terms"]}
        return cls(data["dk"], coeffs)


def decompose_stable(M: MPoly, dk: int) -> StableDecomposition:
    """Decompose a polynomial class statistic into the padded character basis.

    Samples n0 = 2dk .. 3dk+1: at each n0 the statistic is a genuine class
    function of S_{n0}, so a^lambda(n0) is an exact character inner product;
    the dk+2 samples over-determine every a^lambda (degree <= dk - |lambda|)
    and the interpolation verifies the extra points.  Finally the full class
    function is re-synthesized at the last grid point and compared against M
    on every class, which checks that no character outside the stable family
    carries weight.
    """
    if dk < 1:
        raise ValueError("dk must be >= 1")
    if M.weighted_degree() > dk:
        raise ValueError(f"statistic has weighted degree {M.weighted_degree()} > dk={dk}")
    lams = partitions_up_to(dk)
    grid = list(range(2 * dk, 3 * dk + 2))
    samples: dict[PartitionT, list[tuple[int, Fraction]]] = {lam: [] for lam in lams}
    m_cache: dict[int, ClassFunction] = {}
    for n0 in grid:
        cts = enumerate_cycle_types(n0)
        f = ClassFunction(n0, {ct: M.evaluate(n0, ct.m_values(M.num_m)) for ct in cts})
        m_cache[n0] = f
        for lam in lams:
            chi = character_class_function(pad_partition(lam, n0))
            samples[lam].append((n0, inner_product(f, chi)))
    coeffs = {}
    for lam in lams:
        a = interpolate_univariate(samples[lam], dk - sum(lam))
        if not a.is_zero():
            coeffs[lam] = a
    decomp = StableDecomposition(dk, coeffs)
    n_res = grid[-1]
    synth = decomp.synthesize(n_res)
    for ct in enumerate_cycle_types(n_res):
        if synth(ct) != m_cache[n_res](ct):
            raise InternalCheckError(
                f"residual check failed at n={n_res}, class {ct}: statistic is not supported on the stable family"
            )
    return decomp
