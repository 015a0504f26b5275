import random
from fractions import Fraction

import pytest

from p2bott.chow import (
    TruncPoly,
    euler_factor,
    format_rational,
    integrate,
    invert_unit,
    mul,
    parse_rational,
)
from p2bott.errors import InvariantError, PreconditionError


def _random_poly(rng, n, unit=False):
    p = TruncPoly(n)
    for mask in range(1 << n):
        if rng.random() < 0.6:
            p.coeffs[mask] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    p.coeffs = {m: c for m, c in p.coeffs.items() if c}
    if unit:
        p.coeffs[0] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    return p


def test_mul_examples():
    one_plus_h1 = TruncPoly.linear(2, 1, (1, 0))
    sq = one_plus_h1 * one_plus_h1
    assert sq == TruncPoly(2, {0: Fraction(1), 1: Fraction(2)})
    one_plus_h2 = TruncPoly.linear(2, 1, (0, 1))
    prod = one_plus_h1 * one_plus_h2
    assert prod == TruncPoly(2, {0: Fraction(1), 1: Fraction(1), 2: Fraction(1), 3: Fraction(1)})
    p = _random_poly(random.Random(3), 3)
    assert mul(p, TruncPoly.one(3)) == p


def test_mul_dimension_mismatch():
    with pytest.raises(PreconditionError):
        mul(TruncPoly.one(1), TruncPoly.one(2))


def test_mul_commutative_associative():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(0, 3)
        p, q, r = (_random_poly(rng, n) for _ in range(3))
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)


def test_invert_examples():
    assert invert_unit(TruncPoly.scalar(0, 2)) == TruncPoly(0, {0: Fraction(1, 2)})
    p = TruncPoly.linear(1, 3, (1,))
    assert invert_unit(p) == TruncPoly(1, {0: Fraction(1, 3), 1: Fraction(-1, 9)})
    q = TruncPoly.linear(2, 1, (1, 1))
    inv = invert_unit(q)
    assert inv == TruncPoly(2, {0: Fraction(1), 1: Fraction(-1), 2: Fraction(-1), 3: Fraction(2)})
    assert q * inv == TruncPoly.one(2)


def test_invert_round_trip_random():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(0, 4)
        p = _random_poly(rng, n, unit=True)
        assert p * invert_unit(p) == TruncPoly.one(n)


def test_invert_non_unit():
    with pytest.raises(InvariantError):
        invert_unit(TruncPoly.linear(2, 0, (1, 1)))


def test_euler_factor_examples():
    assert euler_factor(5, (), 3) == TruncPoly.scalar(0, 125)
    assert euler_factor(Fraction(7, 2), (1, 0), 1) == TruncPoly.linear(2, Fraction(7, 2), (1, 0))
    inv = euler_factor(3, (1, -1), -1)
    assert inv * TruncPoly.linear(2, 3, (1, -1)) == TruncPoly.one(2)


def test_euler_factor_zero_rules():
    with pytest.raises(InvariantError):
        euler_factor(0, (0, 0), 1)
    with pytest.raises(InvariantError):
        euler_factor(0, (1, 0), -1)
    # nilpotent base with positive exponent is legal and squares to zero
    assert euler_factor(0, (1, 0), 2) == TruncPoly(2)


def test_integrate_examples():
    assert integrate(TruncPoly.scalar(0, 13)) == 13
    p = TruncPoly(2, {0: Fraction(1), 1: Fraction(1), 3: Fraction(3)})
    assert integrate(p) == 3
    # Euler number of a product of two lines: 4 h1 h2 integrates to 4
    tangent = TruncPoly.linear(2, 1, (2, 0)) * TruncPoly.linear(2, 1, (0, 2))
    assert integrate(TruncPoly(2, {3: tangent.coeffs[3]})) == 4


def test_integrate_linear():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(0, 3)
        p, q = _random_poly(rng, n), _random_poly(rng, n)
        assert integrate(p + q) == integrate(p) + integrate(q)
        full = TruncPoly(n, {(1 << n) - 1: Fraction(1)})
        assert integrate(p * full) == p.constant_term()


def test_rational_serialization():
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(-81, 2)) == "-81/2"
    assert format_rational(Fraction(6, 3)) == "2"
    assert parse_rational("-81/2") == Fraction(-81, 2)
