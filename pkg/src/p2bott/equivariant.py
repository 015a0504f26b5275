"""Algebra of virtual decorated character tables: duals and Homs, tensoring
with the fixed 3-dimensional torus module, and the tangent/normal class of a
fixed component assembled from the three-term cohomology complex.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InvariantError
from .lattice import ZERO, Character
from .fixed_loci import FixedComponent, u_table

# Weights of the standard 3-dimensional torus module and its wedge square.
V_STANDARD = (Character(0, 0), Character(1, 0), Character(0, 1))
V_WEDGE = (Character(1, 1), Character(1, 0), Character(0, 1))


def fixed_modules(reflect: bool = False) -> tuple[tuple[Character, ...], tuple[Character, ...]]:
    if reflect:
        return tuple(-w for w in V_STANDARD), tuple(-w for w in V_WEDGE)
    return V_STANDARD, V_WEDGE


class VirtualTable:
    """A formal integer combination of decorated character eigenlines.

    Canonical form never stores a zero multiplicity.  Divisor-class vectors
    are arbitrary integer vectors, closed under the subtraction Hom induces.
    """

    __slots__ = ("n_factors", "entries")

    def __init__(self, n_factors: int):
        self.n_factors = n_factors
        self.entries: dict[Character, dict[tuple, int]] = {}

    def add(self, ch: Character, cls: tuple, mult: int):
        bucket = self.entries.setdefault(ch, {})
        m = bucket.get(cls, 0) + mult
        if m:
            bucket[cls] = m
        else:
            bucket.pop(cls, None)
            if not bucket:
                del self.entries[ch]

    def iadd(self, table, sign: int = 1):
        for ch, cls, m in table.roots():
            self.add(ch, cls, sign * m)

    def isub(self, table):
        self.iadd(table, -1)

    def roots(self) -> Iterator[tuple[Character, tuple, int]]:
        for ch, bucket in self.entries.items():
            for cls, m in bucket.items():
                yield ch, cls, m

    def sorted_roots(self) -> list[tuple[Character, tuple, int]]:
        return sorted(self.roots())

    def rank(self) -> int:
        return sum(m for _, _, m in self.roots())

    def char_rank(self, ch: Character) -> int:
        return sum(self.entries.get(ch, {}).values())

    def char_ranks(self) -> dict[Character, int]:
        return {ch: sum(bucket.values()) for ch, bucket in self.entries.items()}

    def without_char(self, ch: Character) -> "VirtualTable":
        out = VirtualTable(self.n_factors)
        for c, bucket in self.entries.items():
            if c != ch:
                out.entries[c] = dict(bucket)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VirtualTable)
            and self.n_factors == other.n_factors
            and self.entries == other.entries
        )


def _cls_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def hom(a, b) -> VirtualTable:
    """Hom(a, b): every pair of roots contributes the difference character and
    difference class with the product multiplicity."""
    if a.n_factors != b.n_factors:
        raise InvariantError("hom over different factor sets")
    out = VirtualTable(a.n_factors)
    for cha, clsa, ma in a.roots():
        for chb, clsb, mb in b.roots():
            out.add(chb - cha, _cls_sub(clsb, clsa), ma * mb)
    return out


def tensor_fixed(weights: Iterable[Character], a) -> VirtualTable:
    """Tensor with a fixed torus module: translate every root by each weight."""
    out = VirtualTable(a.n_factors)
    for w in weights:
        for ch, cls, m in a.roots():
            out.add(ch + w, cls, m)
    return out


def ext1_table(comp: FixedComponent) -> VirtualTable:
    """Decorated character class of the deformation space of the sheaf.

    The three-term complex built on the monad cohomology tables has total
    cohomology (trivial line) - (deformations), so the class is recovered as
    an alternating sum without ever writing differentials.
    """
    u0 = u_table(comp, 0)
    u1 = u_table(comp, 1)
    u2 = u_table(comp, 2)
    n = comp.n_factors
    t = VirtualTable(n)
    t.add(ZERO, (0,) * n, 1)
    for u in (u0, u1, u2):
        t.isub(hom(u, u))
    middle = hom(u0, u1)
    middle.iadd(hom(u1, u2))
    v_std, v_wedge = fixed_modules(comp.reflect)
    t.iadd(tensor_fixed(v_std, middle))
    t.isub(tensor_fixed(v_wedge, hom(u0, u2)))

    expected = 4 * (comp.k - 1)
    if t.rank() != expected:
        raise InvariantError(
            f"convention breach: deformation class of [{comp.label()}] has rank "
            f"{t.rank()}, expected {expected}"
        )
    for ch, r in t.char_ranks().items():
        if r < 0:
            raise InvariantError(
                f"convention breach: negative multiplicity {r} at character "
                f"{tuple(ch)} in [{comp.label()}]"
            )
    return t


def normal_table(comp: FixedComponent) -> VirtualTable:
    """Deformation class with the zero character removed; the removed part
    must have rank equal to the component dimension."""
    t = ext1_table(comp)
    zero_rank = t.char_rank(ZERO)
    if zero_rank != comp.n_factors:
        raise InvariantError(
            f"tangent mismatch: zero-character rank {zero_rank} != dim Y = "
            f"{comp.n_factors} on [{comp.label()}]"
        )
    return t.without_char(ZERO)


def zero_part_roots(comp: FixedComponent) -> list[tuple[tuple, int]]:
    """(divisor class, multiplicity) pairs of the zero-character part."""
    t = ext1_table(comp)
    return sorted(t.entries.get(ZERO, {}).items())
