"""Exact arithmetic in the truncated ring Q[h_1..h_N]/(h_f^2).

Elements are kept as maps from square-free monomials (bitmask subsets of the
factor set) to Fractions, so the relations h_f^2 = 0 hold structurally.
Integration over a product of N projective lines is reading off the
coefficient of h_1*...*h_N.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InvariantError, PreconditionError


class TruncPoly:
    """An element of Q[h_1..h_N]/(h_f^2), at most 2^N terms."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {} if coeffs is None else {m: c for m, c in coeffs.items() if c}

    @classmethod
    def scalar(cls, n: int, value) -> "TruncPoly":
        return cls(n, {0: Fraction(value)})

    @classmethod
    def one(cls, n: int) -> "TruncPoly":
        return cls.scalar(n, 1)

    @classmethod
    def variable(cls, n: int, f: int) -> "TruncPoly":
        """The generator h_f, factors indexed 0..n-1."""
        if not 0 <= f < n:
            raise PreconditionError(f"factor index {f} out of range for N={n}")
        return cls(n, {1 << f: Fraction(1)})

    @classmethod
    def linear(cls, n: int, t, cls_vec: Sequence[int]) -> "TruncPoly":
        """t + sum_f cls_vec[f] * h_f."""
        coeffs = {}
        tv = Fraction(t)
        if tv:
            coeffs[0] = tv
        for f, cf in enumerate(cls_vec):
            if cf:
                coeffs[1 << f] = Fraction(cf)
        return cls(n, coeffs)

    def _check(self, other: "TruncPoly"):
        if self.n != other.n:
            raise PreconditionError(f"factor count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = coeffs.get(m, 0) + c
        return TruncPoly(self.n, coeffs)

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = coeffs.get(m, 0) - c
        return TruncPoly(self.n, coeffs)

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        coeffs = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                if ma & mb:
                    continue  # repeated factor: killed by h_f^2 = 0
                m = ma | mb
                coeffs[m] = coeffs.get(m, 0) + ca * cb
        return TruncPoly(self.n, coeffs)

    def __pow__(self, k: int) -> "TruncPoly":
        if k < 0:
            return self.invert_unit() ** (-k)
        result = TruncPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncPoly) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        terms = []
        for m in sorted(self.coeffs):
            mono = "*".join(f"h{f+1}" for f in range(self.n) if m >> f & 1) or "1"
            terms.append(f"{self.coeffs[m]}*{mono}")
        return "TruncPoly(" + (" + ".join(terms) or "0") + ")"

    def constant_term(self) -> Fraction:
        return Fraction(self.coeffs.get(0, 0))

    def invert_unit(self) -> "TruncPoly":
        """Exact inverse via the finite Neumann series of the nilpotent part."""
        c0 = self.coeffs.get(0, 0)
        if not c0:
            raise InvariantError("non-unit denominator")
        inv0 = Fraction(1, 1) / c0
        # r = 1 - p/c0 is nilpotent of degree <= n+1
        r = TruncPoly(self.n, {m: -c * inv0 for m, c in self.coeffs.items() if m})
        acc = TruncPoly.one(self.n)
        power = TruncPoly.one(self.n)
        for _ in range(self.n):
            power = power * r
            if not power.coeffs:
                break
            acc = acc + power
        return TruncPoly(self.n, {m: c * inv0 for m, c in acc.coeffs.items()})

    def integrate(self) -> Fraction:
        """Coefficient of the full monomial h_1*...*h_N (the constant term if N=0)."""
        full = (1 << self.n) - 1
        return Fraction(self.coeffs.get(full, 0))


def mul(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    return p * q


def invert_unit(p: TruncPoly) -> TruncPoly:
    return p.invert_unit()


def integrate(p: TruncPoly) -> Fraction:
    return p.integrate()


def euler_factor(t, cls_vec: Sequence[int], m: int) -> TruncPoly:
    """(t + sum_f cls_vec[f]*h_f)^m, with negative m meaning an exact inverse.

    The factor count is len(cls_vec).  t must not vanish when m < 0, and the
    factor (0 + 0)^m is rejected outright: a vanishing numerator factor is the
    caller's short-circuit, a vanishing denominator factor means the chosen
    one-parameter subgroup was not generic.
    """
    n = len(cls_vec)
    tv = Fraction(t)
    if tv == 0 and not any(cls_vec):
        raise InvariantError("forbidden zero factor in an Euler class")
    if m < 0 and tv == 0:
        raise InvariantError("forbidden zero factor: non-invertible denominator root")
    base = TruncPoly.linear(n, tv, cls_vec)
    return base ** m


def format_rational(x) -> str:
    """Serialize an exact rational as "p/q" in lowest terms, plain "p" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
