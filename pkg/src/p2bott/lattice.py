"""Character lattice of the diagonal torus in PGL(3).

Characters are stored in Cartesian coordinates (m1, m2); the trigonal triple
(m0, m1, m2) with m0 = -m1-m2 is always derived, never stored.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple


class Character(NamedTuple):
    m1: int
    m2: int

    def __add__(self, other):
        return Character(self.m1 + other.m1, self.m2 + other.m2)

    def __sub__(self, other):
        return Character(self.m1 - other.m1, self.m2 - other.m2)

    def __neg__(self):
        return Character(-self.m1, -self.m2)


class Gamma(NamedTuple):
    """A one-parameter subgroup, (g1, g2) != (0, 0)."""

    g1: int
    g2: int


ZERO = Character(0, 0)


def trigonal(c: Character) -> tuple[int, int, int]:
    """Trigonal coordinates (m0, m1, m2) of a character; they sum to zero."""
    return (-c.m1 - c.m2, c.m1, c.m2)


def coord(c: Character, i: int) -> int:
    """The pairing m_i(c) with the i-th basic one-parameter subgroup, i in {0,1,2}."""
    if i == 0:
        return -c.m1 - c.m2
    if i == 1:
        return c.m1
    return c.m2


def pair(g: Gamma, c: Character) -> int:
    """Integral pairing <g, c> = g1*m1 + g2*m2."""
    return g.g1 * c.m1 + g.g2 * c.m2


# A finite character multiset: all stored multiplicities are >= 1.
CharMultiset = dict


def rank(t: Mapping[Character, int]) -> int:
    return sum(t.values())


def char_sum(t: Mapping[Character, int]) -> Character:
    """Multiplicity-weighted componentwise sum of a character multiset."""
    m1 = sum(m * c.m1 for c, m in t.items())
    m2 = sum(m * c.m2 for c, m in t.items())
    return Character(m1, m2)


def shift(t: Mapping[Character, int], w: Character) -> CharMultiset:
    """Translate every key by +w, keeping multiplicities."""
    return {c + w: m for c, m in t.items()}


def char_to_json(c: Character) -> list[int]:
    return [c.m1, c.m2]


def char_from_json(v: Iterable[int]) -> Character:
    m1, m2 = v
    return Character(int(m1), int(m2))
