"""
Brute-force oracles and the cross-validation suites.

Every quantity the production pipeline computes has an independent naive
counterpart here: moments by enumerating entire symmetric groups, traces by
summing indicator values over all words, averaged operators by literally
conjugating matrices over the whole group.  The brute functions never call the
trace or pipeline machinery they are used to validate; they rely only on word
operations and the diagram data type.

The suite functions compare pipeline and oracle values exactly (everything is
rational; there is no tolerance anywhere) and aggregate into a report.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GuardrailError
from .perms import (
    CycleType,
    GeneralizedPattern,
    Permutation,
    all_permutations,
    class_representative,
    class_size,
    enumerate_cycle_types,
    is_sorted_as,
    partitions,
    pattern_occurrences,
)
from .diagrams import SetPartitionKK

DEFAULT_ORACLE_N_MAX = 9
DEFAULT_MAX_WORDS = 10_000_000

# (k, n) -> {cycle type -> {sigma word -> Counter of N_sigma values}}
_HISTOGRAMS: dict[tuple[int, int], dict] = {}


def _word_cycle_type(word: tuple[int, ...]) -> CycleType:
    n = len(word)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        pos = start
        while not seen[pos]:
            seen[pos] = True
            length += 1
            pos = word[pos] - 1
        lengths.append(length)
    return CycleType.from_parts(lengths)


def _pattern_histograms(k: int, n: int) -> dict:
    """One full sweep of S_n recording, per conjugacy class and per pattern in
    S_k, the histogram of N_sigma values.  Shared by every moment query."""
    key = (k, n)
    cached = _HISTOGRAMS.get(key)
    if cached is not None:
        return cached
    sigma_words = list(itertools.permutations(range(1, k + 1)))
    combos = list(itertools.combinations(range(n), k))
    hist = {
        ct: {sw: Counter() for sw in sigma_words}
        for ct in enumerate_cycle_types(n)
    }
    for word in all_permutations(n):
        counts = dict.fromkeys(sigma_words, 0)
        for combo in combos:
            vals = tuple(word[i] for i in combo)
            pattern = tuple(sum(1 for u in vals if u <= v) for v in vals)
            counts[pattern] += 1
        ct = _word_cycle_type(word)
        per_class = hist[ct]
        for sw, c in counts.items():
            per_class[sw][c] += 1
    for ct, per_class in hist.items():
        size = class_size(ct)
        for sw, counter in per_class.items():
            assert sum(counter.values()) == size
    _HISTOGRAMS[key] = hist
    return hist


def brute_moment(sigma: Permutation, d: int, ct: CycleType, n_max: int = DEFAULT_ORACLE_N_MAX) -> Fraction:
    """d-th moment of N_sigma over the class of ct, by full enumeration of S_n.

    >>> brute_moment(Permutation.parse("21"), 1, CycleType.parse("2^1"))
    Fraction(1, 1)
    """
    n = ct.n
    if n > n_max:
        raise GuardrailError(f"brute_moment refuses n={n} > {n_max}")
    hist = _pattern_histograms(sigma.n, n)[ct][sigma.word]
    total = sum(Fraction(value**d) * mult for value, mult in hist.items())
    return total / class_size(ct)


def brute_group_moment(sigma: Permutation, d: int, n: int, n_max: int = DEFAULT_ORACLE_N_MAX) -> Fraction:
    """Plain d-th moment of N_sigma over all of S_n."""
    if n > n_max:
        raise GuardrailError(f"brute_group_moment refuses n={n} > {n_max}")
    total = Fraction(0)
    for per_class in _pattern_histograms(sigma.n, n).values():
        total += sum(Fraction(value**d) * mult for value, mult in per_class[sigma.word].items())
    return total / math.factorial(n)


def brute_trace(P: SetPartitionKK, ct: CycleType, max_words: int = DEFAULT_MAX_WORDS) -> int:
    """Trace of (g with P) on words, by direct summation over all of {1..n}^k.

    >>> brute_trace(SetPartitionKK.parse("{1}|{1'}"), CycleType.parse("1^1 2^1"))
    3
    """
    n, k = ct.n, P.k
    if n**k > max_words:
        raise GuardrailError(f"brute_trace refuses {n}^{k} words > {max_words}")
    g = class_representative(ct)
    ginv = g.inverse().word
    parts = P.parts
    total = 0
    for I in itertools.product(range(1, n + 1), repeat=k):
        J = tuple(ginv[i - 1] for i in I)
        ok = True
        for part in parts:
            v0 = part[0]
            label = J[v0] if v0 < k else I[v0 - k]
            for v in part[1:]:
                if (J[v] if v < k else I[v - k]) != label:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            total += 1
    return total


def brute_average_operator(
    alpha: GeneralizedPattern, beta: GeneralizedPattern, n: int, max_words: int = DEFAULT_MAX_WORDS
):
    """(1/n!) sum over x in S_n of conjugated E_alpha E_beta^T, as an explicit
    matrix over the words {1..n}^K (row J, column I, lex word order)."""
    if alpha.K != beta.K:
        raise ValueError("alpha and beta must have the same length")
    K = alpha.K
    dim = n**K
    if dim * dim > max_words:
        raise GuardrailError(f"brute_average_operator refuses {dim}^2 entries > {max_words}")
    words = list(itertools.product(range(1, n + 1), repeat=K))
    index = {w: i for i, w in enumerate(words)}
    ea = [i for i, w in enumerate(words) if is_sorted_as(w, alpha)]
    eb = [i for i, w in enumerate(words) if is_sorted_as(w, beta)]
    acc = [[0] * dim for _ in range(dim)]
    for x in itertools.permutations(range(1, n + 1)):
        remap = [index[tuple(x[c - 1] for c in w)] for w in words]
        for j in ea:
            row = acc[remap[j]]
            for i in eb:
                row[remap[i]] += 1
    fact = math.factorial(n)
    return [[Fraction(v, fact) for v in row] for row in acc]


def brute_pattern_trace(sigma: Permutation, g: Permutation, n_max: int = DEFAULT_ORACLE_N_MAX) -> int:
    """N_sigma(g) computed operator-style: feed every increasing word through g
    and count the images sorted as sigma."""
    if g.n > n_max:
        raise GuardrailError(f"brute_pattern_trace refuses n={g.n} > {n_max}")
    pattern = GeneralizedPattern.from_permutation(sigma)
    count = 0
    for combo in itertools.combinations(range(1, g.n + 1), sigma.n):
        if is_sorted_as(tuple(g.word[i - 1] for i in combo), pattern):
            count += 1
    return count


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)

    def check(self, description: str, expected, actual) -> None:
        self.cases += 1
        if expected != actual:
            self.failures.append((description, str(expected), str(actual)))

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": [
                {"description": d, "expected": e, "actual": a} for d, e, a in self.failures
            ],
        }


@dataclass
class VerificationReport:
    suites: list[SuiteResult]

    @property
    def cases_run(self) -> int:
        return sum(s.cases for s in self.suites)

    @property
    def cases_passed(self) -> int:
        return self.cases_run - sum(len(s.failures) for s in self.suites)

    @property
    def failures(self) -> list[tuple[str, str, str]]:
        return [f for s in self.suites for f in s.failures]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "suites": [s.to_json() for s in self.suites],
        }

    def __str__(self) -> str:
        lines = []
        for s in self.suites:
            status = "PASS" if s.passed else "FAIL"
            lines.append(f"{status} {s.suite} ({s.cases} cases, {len(s.failures)} failures)")
            for d, e, a in s.failures[:10]:
                lines.append(f"  {d}: expected {e}, got {a}")
            if len(s.failures) > 10:
                lines.append(f"  ... {len(s.failures) - 10} more")
        lines.append(f"total: {self.cases_passed}/{self.cases_run} cases passed")
        return "\n".join(lines)


@dataclass(frozen=True)
class OracleConfig:
    """Bounds for the verification suites; defaults match the shipped checks."""

    suites: tuple[str, ...] | None = None
    moment_n_max: int = 8
    trace_n_max: int = 6
    trace_k_max: int = 3
    pattern_n: int = 5
    pattern_random_n: int = 6
    random_samples: int = 100
    homom_random_pairs: int = 200
    averaging_n_max: int = 4
    char_n_max: int = 8
    seed: int = 52
    max_dk: int = 4
    include_second_moment: bool = True
    threads: int = 0  # accepted for interface compatibility; runs sequentially


def _sigmas_s2_s3() -> list[Permutation]:
    out = [Permutation(w) for w in itertools.permutations((1, 2))]
    out += [Permutation(w) for w in itertools.permutations((1, 2, 3))]
    return out


def suite_paper_example(config: OracleConfig) -> SuiteResult:
    """The worked (3,3)-diagram product: P1 * P2 = t^1 * P3."""
    res = SuiteResult("paper-example")
    from .diagrams import multiply_diagrams

    P1 = SetPartitionKK.parse("{1,1'}|{2'}|{2,3,3'}")
    P2 = SetPartitionKK.parse("{1}|{1'}|{2}|{2',3}|{3'}")
    expected = SetPartitionKK.parse("{1}|{1'}|{2,2',3}|{3'}")
    c, P3 = multiply_diagrams(P1, P2)
    res.check("interface component count", 1, c)
    res.check("composite diagram", str(expected), str(P3))
    return res


def suite_homomorphism(config: OracleConfig) -> SuiteResult:
    """phi(P1) phi(P2) = n^c phi(P3): exhaustive at k=2, random pairs at k=3."""
    res = SuiteResult("homomorphism")
    from .diagrams import all_diagrams, mat_eq, mat_mul, mat_scale, multiply_diagrams, phi_matrix

    def run_pairs(pairs, n, mats):
        for P1, P2 in pairs:
            c, P3 = multiply_diagrams(P1, P2)
            lhs = mat_mul(mats[P1], mats[P2])
            rhs = mat_scale(mats[P3], n**c)
            res.check(f"phi({P1})phi({P2}) at n={n}", True, mat_eq(lhs, rhs))

    diags2 = list(all_diagrams(2))
    for n in (2, 3, 4):
        mats = {P: phi_matrix(P, n) for P in diags2}
        run_pairs(itertools.product(diags2, diags2), n, mats)
    diags3 = list(all_diagrams(3))
    rng = random.Random(config.seed)
    pairs3 = [(rng.choice(diags3), rng.choice(diags3)) for _ in range(config.homom_random_pairs)]
    for n in (3, 4):
        needed = {P for pair in pairs3 for P in pair}
        needed |= {multiply_diagrams(P1, P2)[1] for P1, P2 in pairs3}
        mats = {P: phi_matrix(P, n) for P in needed}
        run_pairs(pairs3, n, mats)
    return res


def suite_kernel(config: OracleConfig) -> SuiteResult:
    """phi(x_P) vanishes exactly when P has more than n parts."""
    res = SuiteResult("kernel")
    from .diagrams import all_diagrams, kernel_check

    for k, ns in ((2, (1, 2, 3, 4)), (3, (2, 3))):
        for P in all_diagrams(k):
            for n in ns:
                res.check(f"kernel_check({P}, n={n})", P.num_parts > n, kernel_check(P, n))
    return res


def suite_trace(config: OracleConfig) -> SuiteResult:
    """trace_polynomial evaluated at every class equals the direct word sum."""
    res = SuiteResult("trace")
    from .diagrams import all_diagrams
    from .tracepoly import trace_polynomial

    for k in range(1, config.trace_k_max + 1):
        for P in all_diagrams(k):
            poly = trace_polynomial(P)
            for n in range(1, config.trace_n_max + 1):
                for ct in enumerate_cycle_types(n):
                    res.check(
                        f"trace of {P} at {ct}",
                        Fraction(brute_trace(P, ct)),
                        poly.evaluate(n, ct.m_values(k)),
                    )
    return res


def suite_pattern_trace(config: OracleConfig) -> SuiteResult:
    """Operator-style pattern count agrees with direct occurrence counting."""
    res = SuiteResult("pattern-trace")
    sigmas = _sigmas_s2_s3()
    for pi_word in all_permutations(config.pattern_n):
        pi = Permutation(pi_word)
        for sigma in sigmas:
            res.check(
                f"N_{sigma.word}({pi_word})",
                pattern_occurrences(sigma, pi),
                brute_pattern_trace(sigma, pi),
            )
    rng = random.Random(config.seed)
    base = list(range(1, config.pattern_random_n + 1))
    for _ in range(config.random_samples):
        word = base[:]
        rng.shuffle(word)
        pi = Permutation(tuple(word))
        for sigma in sigmas:
            res.check(
                f"N_{sigma.word}({tuple(word)})",
                pattern_occurrences(sigma, pi),
                brute_pattern_trace(sigma, pi),
            )
    return res


def suite_averaging(config: OracleConfig) -> SuiteResult:
    """phi of the x-basis averaging expansion equals the matrix average."""
    res = SuiteResult("averaging")
    from .diagrams import mat_eq, phi_matrix
    from .pipeline import all_patterns, averaging_coefficients

    for K in (1, 2):
        pats = list(all_patterns(K))
        for alpha in pats:
            for beta in pats:
                expansion = averaging_coefficients(alpha, beta)
                combo = expansion.to_diagram_combo()
                for n in range(2, config.averaging_n_max + 1):
                    res.check(
                        f"averaged operator alpha={alpha} beta={beta} n={n}",
                        True,
                        mat_eq(brute_average_operator(alpha, beta, n), phi_matrix(combo, n)),
                    )
    return res


def suite_moment(config: OracleConfig, d: int) -> SuiteResult:
    """End-to-end: the moment polynomial equals brute enumeration on every class."""
    res = SuiteResult(f"moment-d{d}")
    from .pipeline import moment_polynomial

    sigmas = _sigmas_s2_s3() if d == 1 else [Permutation((1, 2)), Permutation((2, 1))]
    for sigma in sigmas:
        poly = moment_polynomial(sigma, d, max_dk=config.max_dk)
        dk = d * sigma.n
        for n in range(1, config.moment_n_max + 1):
            for ct in enumerate_cycle_types(n):
                res.check(
                    f"moment sigma={sigma.word} d={d} at {ct}",
                    brute_moment(sigma, d, ct, n_max=config.moment_n_max),
                    poly.evaluate(n, ct.m_values(dk)),
                )
    return res


def suite_decomposition(config: OracleConfig) -> SuiteResult:
    """Stable-basis structure: degree bounds and exact re-synthesis."""
    res = SuiteResult("decomposition")
    from .characters import partitions_up_to
    from .pipeline import moment_polynomial, stable_decomposition

    jobs = [(sigma, 1) for sigma in _sigmas_s2_s3()]
    if config.include_second_moment:
        jobs += [(Permutation((1, 2)), 2), (Permutation((2, 1)), 2)]
    for sigma, d in jobs:
        dk = d * sigma.n
        decomp = stable_decomposition(sigma, d, max_dk=config.max_dk)
        poly = moment_polynomial(sigma, d, max_dk=config.max_dk)
        for lam in partitions_up_to(dk):
            a = decomp.a(lam)
            res.check(
                f"deg a^{lam} for sigma={sigma.word} d={d}",
                True,
                a.is_zero() or a.degree() <= dk - sum(lam),
            )
        n_held = 3 * dk + 1
        synth = decomp.synthesize(n_held)
        for ct in enumerate_cycle_types(n_held):
            res.check(
                f"synthesis sigma={sigma.word} d={d} at n={n_held} {ct}",
                poly.evaluate(n_held, ct.m_values(dk)),
                synth(ct),
            )
    return res


def suite_zeilberger(config: OracleConfig) -> SuiteResult:
    """a^() matches the whole-group mean and its closed form for length-3 patterns."""
    res = SuiteResult("zeilberger")
    from .mpoly import UPoly
    from .pipeline import stable_decomposition

    # the mean of N_sigma over S_n is C(n,3)/6 for every sigma in S_3
    expected_poly = UPoly((0, 1)) * UPoly((-1, 1)) * UPoly((-2, 1)) * Fraction(1, 36)
    for word in itertools.permutations((1, 2, 3)):
        sigma = Permutation(word)
        a_empty = stable_decomposition(sigma, 1, max_dk=config.max_dk).a(())
        res.check(f"a^() closed form for sigma={word}", expected_poly, a_empty)
        for n in (6, 7, 8):
            res.check(
                f"a^() vs group mean, sigma={word}, n={n}",
                brute_group_moment(sigma, 1, n),
                a_empty(n),
            )
    return res


def suite_characters(config: OracleConfig) -> SuiteResult:
    """Orthonormality, column orthogonality, and character-polynomial windows."""
    res = SuiteResult("characters")
    from .characters import (
        character_polynomial,
        mn_character,
        pad_partition,
    )

    for n in range(1, config.char_n_max + 1):
        lams = list(partitions(n))
        cts = enumerate_cycle_types(n)
        sizes = [class_size(ct) for ct in cts]
        rows = {lam: [mn_character(lam, ct) for ct in cts] for lam in lams}
        fact = math.factorial(n)
        for la in lams:
            for lb in lams:
                ip = sum(Fraction(s * x * y) for s, x, y in zip(sizes, rows[la], rows[lb])) / fact
                res.check(f"<chi^{la}, chi^{lb}> at n={n}", Fraction(1 if la == lb else 0), ip)
    for n in range(1, 7):
        cts = enumerate_cycle_types(n)
        lams = list(partitions(n))
        rows = {lam: [mn_character(lam, ct) for ct in cts] for lam in lams}
        fact = math.factorial(n)
        for i, ct1 in enumerate(cts):
            for j, ct2 in enumerate(cts):
                total = sum(rows[lam][i] * rows[lam][j] for lam in lams)
                expected = fact // class_size(ct1) if i == j else 0
                res.check(f"column orthogonality {ct1} vs {ct2}", expected, total)
    for size in range(0, 4):
        for mu in partitions(size):
            poly = character_polynomial(mu)
            for n in range(2 * size, 2 * size + 4):
                if n < 1:
                    continue
                for ct in enumerate_cycle_types(n):
                    res.check(
                        f"P_{mu} at {ct}",
                        Fraction(mn_character(pad_partition(mu, n), ct)),
                        poly.evaluate(0, ct.m_values(max(size, 1))) if size else Fraction(1),
                    )
    return res


SUITES = {
    "paper-example": suite_paper_example,
    "homomorphism": suite_homomorphism,
    "kernel": suite_kernel,
    "trace": suite_trace,
    "pattern-trace": suite_pattern_trace,
    "averaging": suite_averaging,
    "moment-d1": lambda cfg: suite_moment(cfg, 1),
    "moment-d2": lambda cfg: suite_moment(cfg, 2),
    "decomposition": suite_decomposition,
    "zeilberger": suite_zeilberger,
    "characters": suite_characters,
}


def verify_all(config: OracleConfig | None = None) -> VerificationReport:
    """Run the selected verification suites (all of them by default)."""
    config = config or OracleConfig()
    names = config.suites or tuple(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}; available: {sorted(SUITES)}")
    return VerificationReport([SUITES[name](config) for name in names])
