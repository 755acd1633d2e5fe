"""
From sorted-word operators to exact moment polynomials.

The d-th moment of the pattern count N_sigma over a conjugacy class is
assembled without ever materializing the n^(dk)-dimensional word space:

1. The d-fold tensor power of a sorted-sum operator E (the 0/1 vector marking
   sigma-sorted words) expands as a multiplicity-one sum of E_gamma over
   generalized patterns gamma whose restrictions to the d blocks are sorted as
   the factors (`shuffle_expand`, `tensor_power_expand`).

2. Averaging E_alpha E_beta^T over the whole group yields an operator
   commuting with the group action, hence a rational combination of x-basis
   diagram operators.  The coefficient b_P of x_P depends only on the diagram:
   number the p parts of P, read off the canonical words I (primed slots) and
   J (unprimed slots), and count label orderings x in S_p with x(I) sorted as
   beta and x(J) sorted as alpha; b_P is that count over p!
   (`averaging_coefficients`).

3. Each diagram contributes its exact trace polynomial in n, m_1, ..., m_dk.

The assembled polynomial has weighted degree at most dk and evaluates to the
exact moment on every conjugacy class of every symmetric group; its expansion
in the padded character basis (`stable_decomposition`) has polynomial
coefficients a^lambda(n) supported on |lambda| <= dk.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .characters import StableDecomposition, decompose_stable
from .diagrams import SetPartitionKK, all_diagrams, set_partitions, x_basis_expand
from .errors import GuardrailError, InternalCheckError
from .mpoly import MPoly
from .perms import GeneralizedPattern, Permutation, is_sorted_as
from .tracepoly import trace_polynomial

DEFAULT_MAX_DK = 4


@dataclass(frozen=True)
class PatternCombo:
    """A formal linear combination of generalized patterns of one length."""

    K: int
    terms: Mapping[GeneralizedPattern, Fraction]

    def patterns(self) -> list[GeneralizedPattern]:
        return sorted(self.terms, key=lambda p: p.values)

    def coefficient(self, pattern: GeneralizedPattern) -> Fraction:
        return self.terms.get(pattern, Fraction(0))


@dataclass(frozen=True)
class AveragingExpansion:
    """x-basis coefficients b_P of a group-averaged operator E_alpha E_beta^T."""

    K: int
    coeffs: Mapping[SetPartitionKK, Fraction]

    def b(self, P: SetPartitionKK) -> Fraction:
        return self.coeffs.get(P, Fraction(0))

    def to_diagram_combo(self):
        """The operator as a diagram-basis combination (sum of b_P x_P expanded)."""
        from .diagrams import DiagramCombo

        combo = DiagramCombo.zero(self.K)
        for P, b in sorted(self.coeffs.items(), key=lambda kv: kv[0].parts):
            combo = combo + x_basis_expand(P).scale(b)
        return combo


def all_patterns(K: int) -> Iterator[GeneralizedPattern]:
    """All normalized patterns [K] -> {1..r}: a set partition of the positions
    into level classes together with an ordering of the levels."""
    for blocks in set_partitions(range(K)):
        r = len(blocks)
        for order in itertools.permutations(range(1, r + 1)):
            values = [0] * K
            for level, block in zip(order, blocks):
                for pos in block:
                    values[pos] = level
            yield GeneralizedPattern(tuple(values))


def shuffle_expand(alpha: GeneralizedPattern, beta: GeneralizedPattern) -> PatternCombo:
    """Expansion of E_alpha tensor E_beta as a sum of single E_gamma.

    gamma runs over normalized patterns of length K1+K2 whose first K1 values
    are sorted as alpha and last K2 values as beta; every gamma occurs with
    coefficient exactly 1.

    >>> [str(g) for g in shuffle_expand(GeneralizedPattern((1,)), GeneralizedPattern((1,))).patterns()]
    ['(1,1)', '(1,2)', '(2,1)']
    """
    K1, K2 = alpha.K, beta.K
    terms = {}
    for gamma in all_patterns(K1 + K2):
        if is_sorted_as(gamma.values[:K1], alpha) and is_sorted_as(gamma.values[K1:], beta):
            terms[gamma] = Fraction(1)
    return PatternCombo(K1 + K2, terms)


def tensor_power_expand(
    sigma: Permutation, d: int, which: str = "terminal", max_dk: int = DEFAULT_MAX_DK
) -> PatternCombo:
    """Expansion of the d-fold tensor power of a sorted-sum operator.

    which="initial" expands the increasing-word operator (identity pattern),
    which="terminal" expands sigma's own operator.  Folding the pairwise
    shuffle keeps every coefficient equal to 1; this is asserted rather than
    assumed.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if which not in ("initial", "terminal"):
        raise ValueError(f"which must be 'initial' or 'terminal', not {which!r}")
    k = sigma.n
    dk = d * k
    if dk > max_dk:
        raise GuardrailError(
            f"dk = {d}*{k} = {dk} exceeds the guardrail {max_dk}; pass a larger max_dk "
            f"to proceed (cost grows like the ordered Bell number of 2*dk)"
        )
    base_word = Permutation.identity(k).word if which == "initial" else sigma.word
    base = GeneralizedPattern.from_word(base_word)
    terms: dict[GeneralizedPattern, Fraction] = {base: Fraction(1)}
    for _ in range(d - 1):
        nxt: dict[GeneralizedPattern, Fraction] = {}
        for gamma, coeff in terms.items():
            for delta, c2 in shuffle_expand(gamma, base).terms.items():
                nxt[delta] = nxt.get(delta, Fraction(0)) + coeff * c2
        terms = nxt
    if any(c != 1 for c in terms.values()):
        raise InternalCheckError("tensor power expansion produced a coefficient != 1")
    return PatternCombo(dk, terms)


def _canonical_words(P: SetPartitionKK) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical words (I, J) over the part numbers 1..p: J labels the unprimed
    slots, I the primed slots; distinct parts get distinct labels."""
    J = tuple(P.part_index(r) + 1 for r in range(P.k))
    I = tuple(P.part_index(P.k + r) + 1 for r in range(P.k))
    return I, J


def _ranks(word: tuple[int, ...]) -> tuple[int, ...]:
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(word)))}
    return tuple(ranks[v] for v in word)


def averaging_coefficients(alpha: GeneralizedPattern, beta: GeneralizedPattern) -> AveragingExpansion:
    """b_P for every (K,K)-diagram P: the fraction of label orderings x in S_p
    with x(I) sorted as beta and x(J) sorted as alpha.

    Each b_P lies in [0,1] with denominator dividing p!, and is meaningful for
    every n at once (diagrams with more parts than n act by zero anyway).
    """
    if alpha.K != beta.K:
        raise ValueError("alpha and beta must have the same length")
    K = alpha.K
    coeffs: dict[SetPartitionKK, Fraction] = {}
    for P in all_diagrams(K):
        I, J = _canonical_words(P)
        p = P.num_parts
        count = 0
        for x in itertools.permutations(range(1, p + 1)):
            xI = tuple(x[v - 1] for v in I)
            if not is_sorted_as(xI, beta):
                continue
            xJ = tuple(x[v - 1] for v in J)
            if is_sorted_as(xJ, alpha):
                count += 1
        if count:
            coeffs[P] = Fraction(count, math.factorial(p))
    return AveragingExpansion(K, coeffs)


_MOMENT_CACHE: dict[tuple[tuple[int, ...], int], MPoly] = {}


def moment_polynomial(sigma: Permutation, d: int, max_dk: int = DEFAULT_MAX_DK) -> MPoly:
    """The d-th moment of N_sigma on any conjugacy class, as an exact polynomial
    in n, m_1, ..., m_dk of weighted degree at most dk.

    Sums, over all diagrams P on 2*dk vertices, the total averaging weight of
    x_P against the two tensor-power expansions, times the trace polynomial of
    the x-basis expansion of P.  The weight for one P needs a single sweep of
    S_p (p = parts of P) shared by all pattern pairs.
    """
    k = sigma.n
    dk = d * k
    key = (sigma.word, d)
    cached = _MOMENT_CACHE.get(key)
    if cached is not None:
        return cached
    initial = tensor_power_expand(sigma, d, "initial", max_dk)
    terminal = tensor_power_expand(sigma, d, "terminal", max_dk)
    alpha_set = {p.values for p in initial.patterns()}
    beta_set = {p.values for p in terminal.patterns()}
    diagram_weight: dict[SetPartitionKK, Fraction] = {}
    for P in all_diagrams(dk):
        I, J = _canonical_words(P)
        p = P.num_parts
        count = 0
        for x in itertools.permutations(range(1, p + 1)):
            if _ranks(tuple(x[v - 1] for v in I)) in beta_set:
                if _ranks(tuple(x[v - 1] for v in J)) in alpha_set:
                    count += 1
        if count:
            diagram_weight[P] = Fraction(count, math.factorial(p))
    trace_coeff: dict[SetPartitionKK, Fraction] = {}
    for P, w in diagram_weight.items():
        for Q, c in x_basis_expand(P).terms.items():
            trace_coeff[Q] = trace_coeff.get(Q, Fraction(0)) + w * c.constant_value()
    poly = MPoly.zero(dk)
    for Q in sorted(trace_coeff, key=lambda q: q.parts):
        c = trace_coeff[Q]
        if c != 0:
            poly = poly + trace_polynomial(Q) * c
    if poly.weighted_degree() > dk:
        raise InternalCheckError(f"moment polynomial degree {poly.weighted_degree()} exceeds dk={dk}")
    poly = poly.promote(dk)
    _MOMENT_CACHE[key] = poly
    return poly


def stable_decomposition(sigma: Permutation, d: int, max_dk: int = DEFAULT_MAX_DK) -> StableDecomposition:
    """Expansion of the moment polynomial in the padded character basis.

    The empty-partition coefficient a^() is the plain d-th moment of N_sigma
    over the whole symmetric group, as a polynomial in n (valid for n >= 2dk).
    """
    return decompose_stable(moment_polynomial(sigma, d, max_dk), d * sigma.n)
