"""
Exact multivariate polynomials in n, m_1, ..., m_K over the rationals.

Coefficients are `fractions.Fraction` throughout; nothing in this package ever
rounds.  The grading is weighted: n counts 1 and m_i counts i, so the weighted
degree of a monomial n^{e_n} m_1^{e_1} ... m_K^{e_K} is e_n + sum_i i*e_i.

Polynomials are sparse maps from exponent vectors (e_n, e_1, ..., e_K) to
nonzero coefficients.  Two polynomials with different variable counts compare
and combine by embedding the smaller variable set into the larger one.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InternalCheckError

NEG_INF = float("-inf")

ExpVec = tuple[int, ...]  # (e_n, e_1, ..., e_K)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _weighted_degree(key: ExpVec) -> int:
    return key[0] + sum(i * e for i, e in enumerate(key[1:], start=1))


class MPoly:
    """Sparse exact polynomial in n, m_1, ..., m_K.

    >>> p = MPoly.n_var() + MPoly.m_var(1)
    >>> str(p * p)
    'n^2 + 2*n*m_1 + m_1^2'
    >>> (MPoly.m_var(1) * MPoly.m_var(2)).weighted_degree()
    3
    """

    __slots__ = ("num_m", "terms")

    def __init__(self, num_m: int, terms: Mapping[ExpVec, Fraction]):
        clean: dict[ExpVec, Fraction] = {}
        for key, coeff in terms.items():
            if len(key) != num_m + 1:
                raise ValueError(f"exponent vector {key!r} does not match K={num_m}")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[tuple(key)] = coeff
        self.num_m = num_m
        self.terms = clean

    @classmethod
    def zero(cls, num_m: int = 0) -> "MPoly":
        return cls(num_m, {})

    @classmethod
    def const(cls, value, num_m: int = 0) -> "MPoly":
        return cls(num_m, {(0,) * (num_m + 1): _as_fraction(value)})

    @classmethod
    def n_var(cls) -> "MPoly":
        return cls(0, {(1,): Fraction(1)})

    @classmethod
    def m_var(cls, i: int) -> "MPoly":
        if i < 1:
            raise ValueError("m-variables are indexed from 1")
        key = [0] * (i + 1)
        key[i] = 1
        return cls(i, {tuple(key): Fraction(1)})

    @classmethod
    def monomial(cls, e_n: int, e_m: Sequence[int], coeff=1) -> "MPoly":
        return cls(len(e_m), {(e_n, *e_m): _as_fraction(coeff)})

    def promote(self, num_m: int) -> "MPoly":
        """Embed into the polynomial ring with at least num_m m-variables."""
        if num_m < self.num_m:
            raise ValueError("cannot demote variable count")
        if num_m == self.num_m:
            return self
        pad = (0,) * (num_m - self.num_m)
        return MPoly(num_m, {key + pad: c for key, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        K = max(self.num_m, other.num_m)
        return self.promote(K).terms == other.promote(K).terms

    __hash__ = None  # mutable-dict-backed; not intended as a dict key

    def __neg__(self) -> "MPoly":
        return MPoly(self.num_m, {k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        K = max(self.num_m, other.num_m)
        a, b = self.promote(K), other.promote(K)
        out = dict(a.terms)
        for key, coeff in b.terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return MPoly(K, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        return self + (-other if isinstance(other, MPoly) else MPoly.const(-other))

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return MPoly(self.num_m, {k: c * other for k, c in self.terms.items()})
        K = max(self.num_m, other.num_m)
        a, b = self.promote(K), other.promote(K)
        out: dict[ExpVec, Fraction] = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return MPoly(K, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MPoly.const(1, self.num_m)
        for _ in range(e):
            result = result * self
        return result

    def weighted_degree(self):
        """Max over terms of e_n + sum_i i*e_i; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(_weighted_degree(k) for k in self.terms)

    def evaluate(self, n_value: int, m_values: Mapping[int, int]) -> Fraction:
        """Exact value at n = n_value, m_i = m_values[i].

        Every m_i appearing with nonzero exponent must be supplied.
        """
        total = Fraction(0)
        for key, coeff in self.terms.items():
            val = coeff * Fraction(n_value) ** key[0]
            for i, e in enumerate(key[1:], start=1):
                if e:
                    if i not in m_values:
                        raise ValueError(f"missing value for m_{i}")
                    val *= Fraction(m_values[i]) ** e
            total += val
        return total

    def sorted_terms(self) -> list[tuple[ExpVec, Fraction]]:
        """Terms in the canonical order: weighted degree descending, then
        exponent vector descending (deterministic serialization)."""
        return sorted(self.terms.items(), key=lambda kv: (_weighted_degree(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key, coeff in self.sorted_terms():
            factors = []
            if key[0]:
                factors.append("n" if key[0] == 1 else f"n^{key[0]}")
            for i, e in enumerate(key[1:], start=1):
                if e:
                    factors.append(f"m_{i}" if e == 1 else f"m_{i}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            pieces.append(("- " if coeff < 0 else "+ ") + body)
        first = pieces[0]
        text = ("-" if first.startswith("- ") else "") + first[2:]
        return " ".join([text] + pieces[1:])

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def to_json(self) -> list[dict]:
        return [
            {"e_n": key[0], "e_m": list(key[1:]), "num": str(c.numerator), "den": str(c.denominator)}
            for key, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict], num_m: int | None = None) -> "MPoly":
        data = list(data)
        if num_m is None:
            num_m = max((len(t["e_m"]) for t in data), default=0)
        terms: dict[ExpVec, Fraction] = {}
        for t in data:
            e_m = list(t["e_m"]) + [0] * (num_m - len(t["e_m"]))
            key = (t["e_n"], *e_m)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(int(t["num"]), int(t["den"]))
        return cls(num_m, terms)


class UPoly:
    """Exact univariate polynomial, coefficients ascending by degree.

    >>> p = UPoly.from_coeffs([0, Fraction(-1, 2), Fraction(1, 2)])
    >>> p(5)
    Fraction(10, 1)
    >>> str(p)
    '1/2*n^2 - 1/2*n'
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence, var: str = "n"):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, var: str = "n") -> "UPoly":
        return cls(coeffs, var)

    @classmethod
    def zero(cls, var: str = "n") -> "UPoly":
        return cls((), var)

    @classmethod
    def const(cls, value, var: str = "n") -> "UPoly":
        return cls((value,), var)

    @classmethod
    def monomial(cls, degree: int, coeff=1, var: str = "n") -> "UPoly":
        return cls((0,) * degree + (coeff,), var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        """Degree, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; error if degree > 0."""
        if len(self.coeffs) > 1:
            raise InternalCheckError(f"polynomial {self} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other, self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs], self.var)

    def __add__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other, self.var)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out, self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "UPoly":
        return self + (-other if isinstance(other, UPoly) else UPoly.const(-other, self.var))

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return UPoly([c * other for c in self.coeffs], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                v = self.var if e == 1 else f"{self.var}^{e}"
                body = v if abs(c) == 1 else f"{abs(c)}*{v}"
            pieces.append(("- " if c < 0 else "+ ") + body)
        first = pieces[0]
        text = ("-" if first.startswith("- ") else "") + first[2:]
        return " ".join([text] + pieces[1:])

    def __repr__(self) -> str:
        return f"UPoly({self})"

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "coeffs": [{"num": str(c.numerator), "den": str(c.denominator)} for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "UPoly":
        coeffs = [Fraction(int(c["num"]), int(c["den"])) for c in data["coeffs"]]
        return cls(coeffs, data.get("var", "n"))


def solve_unique_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve an exact linear system requiring a unique solution.

    Gaussian elimination over Fraction on the (possibly overdetermined)
    augmented matrix.  Raises InternalCheckError if the system is
    rank-deficient (solution not unique) or inconsistent.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs length mismatch")
    ncols = len(rows[0]) if rows else 0
    aug = [[_as_fraction(v) for v in row] + [_as_fraction(b)] for row, b in zip(rows, rhs)]
    nrows = len(aug)
    pivot_row = 0
    pivot_cols = []
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, nrows) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[pivot_row], aug[pivot] = aug[pivot], aug[pivot_row]
        inv = 1 / aug[pivot_row][col]
        aug[pivot_row] = [v * inv for v in aug[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
    if len(pivot_cols) < ncols:
        raise InternalCheckError(f"linear system is rank-deficient ({len(pivot_cols)} < {ncols})")
    for r in range(pivot_row, nrows):
        if aug[r][ncols] != 0:
            raise InternalCheckError("overdetermined linear system is inconsistent")
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivot_cols):
        solution[col] = aug[r][ncols]
    return solution


def interpolate_univariate(points: Sequence[tuple[int, Fraction]], degree_bound: int, var: str = "n") -> UPoly:
    """The unique polynomial of degree <= degree_bound through the given points.

    Requires at least degree_bound+1 points with distinct abscissae; any extra
    points over-determine the system and are verified, so a degree violation or
    inconsistent data raises InternalCheckError rather than being smoothed over.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    if len(points) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points, got {len(points)}")
    rows = [[Fraction(x) ** e for e in range(degree_bound + 1)] for x in xs]
    coeffs = solve_unique_exact(rows, [y for _, y in points])
    poly = UPoly(coeffs, var)
    for x, y in points:
        if poly(x) != y:
            raise InternalCheckError(f"interpolation failed to reproduce point ({x}, {y})")
    return poly
