"""Enumeration of the torus-fixed components of the moduli of stable rank-2
sheaves on the plane with c1 = -1, c2 = k, and their equivariant character
tables.

A fixed sheaf is reconstructed from: a side triple (a0, a1, a2) cutting out
its locally free hull, thresholds (s0, s1, s2) placing the three filtration
strips in the character lattice, and one local defect picture per fixed point
of the plane.  Each defect picture lives in corner coordinates (u, v): the
rank-2 quadrant is {u <= 0, v <= 0}, a vertical width-a_j strip sits at
1 <= u <= a_j, a horizontal height-a_k strip at 1 <= v <= a_k.  The picture
is a pair (lambda_b, rho): a Young-diagram bite lambda_b taken out of the
rank-2 level at the quadrant corner, and an up-closed set rho of cells removed
from the rank-1 level.  Cells still at level 1 carry lines of the 2-dimensional
generic fiber; comparable level-1 cells are forced to carry equal lines, the
two strips carry the (distinct) lines of the hull, and each residual free
class of cells contributes one projective-line factor to the component.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import InvariantError, PreconditionError
from .lattice import ZERO, Character, char_sum, coord

# Complementary index pair (j, k) with j < k for each corner i.
_COMPL = ((1, 2), (0, 2), (0, 1))


# ---------------------------------------------------------------------------
# Side triples and Chern data of the locally free hull


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def side_triples(c: int) -> list[tuple[int, int, int]]:
    """All ordered triples of strip widths for effective second Chern class c.

    Widths satisfy the strict triangle inequalities and
    (-a0+a1+a2)^2 - 4*a1*a2 = 1 - 4c.  Enumerated through x = -a0+a1+a2,
    which is odd and at most 2c-1.
    """
    if c < 1:
        raise PreconditionError("no stable bundle: Bogomolov bound violated")
    out = []
    for x in range(1, 2 * c, 2):
        prod = (x * x + 4 * c - 1) // 4
        for a1 in _divisors(prod):
            a2 = prod // a1
            if x < 2 * a1 and x < 2 * a2:
                out.append((a1 + a2 - x, a1, a2))
    return sorted(out)


def chern_from_data(a: tuple[int, int, int], s: tuple[int, int, int]) -> tuple[int, int]:
    """(c1, c2) of the bundle cut out by widths a and thresholds s."""
    c1 = 2 * sum(s) + sum(a)
    disc = (-a[0] + a[1] + a[2]) ** 2 - 4 * a[1] * a[2]
    num = c1 * c1 - disc
    if num % 4:
        raise InvariantError(f"non-integral c2 for widths {a}, thresholds {s}")
    return c1, num // 4


# ---------------------------------------------------------------------------
# Corner defect pictures


@dataclass(frozen=True)
class CornerConfig:
    """One corner defect picture with its line classes resolved.

    torsion_roots lists the local torsion content cell by cell as
    (u, v, free_class_index, multiplicity); the index is -1 for cells whose
    quotient line is constant along the component.
    """

    lam: tuple[int, ...]
    rho: tuple[tuple[int, int], ...]
    a_j: int
    a_k: int
    defect: int
    free_classes: tuple[tuple[tuple[int, int], ...], ...]
    torsion_roots: tuple[tuple[int, int, int, int], ...]

    @property
    def n_free(self) -> int:
        return len(self.free_classes)


def _bar_dim(u: int, v: int, a_j: int, a_k: int) -> int:
    """Level table of the locally free hull at a corner."""
    if u <= 0 and v <= 0:
        return 2
    if (u <= a_j and v <= 0) or (u <= 0 and v <= a_k):
        return 1
    return 0


def _lam_contains(lam: tuple[int, ...], u: int, v: int) -> bool:
    # row index r = 1-v (rows go down from the corner), column reach 1-u
    return 0 <= -v < len(lam) and lam[-v] >= 1 - u


def _lam_col_depth(lam: tuple[int, ...], u: int) -> int:
    """Number of bite cells in column u <= 0."""
    need = 1 - u
    return sum(1 for row in lam if row >= need)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


def corner_dimension_table(cfg: CornerConfig) -> dict[tuple[int, int], tuple[int, int]]:
    """Map cell -> (hull level, sheaf level) on the scan window of cfg."""
    lo = -(cfg.defect + 1)
    rho = set(cfg.rho)
    table = {}
    for u in range(lo, cfg.a_j + 1):
        for v in range(lo, cfg.a_k + 1):
            bar = _bar_dim(u, v, cfg.a_j, cfg.a_k)
            if bar == 0:
                continue
            if (u, v) in rho:
                dim = 0
            elif bar == 2 and _lam_contains(cfg.lam, u, v):
                dim = 1
            else:
                dim = bar
            table[(u, v)] = (bar, dim)
    return table


def _build_corner(lam: tuple[int, ...], rho: frozenset, a_j: int, a_k: int) -> CornerConfig | None:
    """Resolve line classes for a candidate picture; None if unsatisfiable.

    A class is pinned to a strip line as soon as it contains any strip cell:
    every level-1 strip cell is comparable with the untouched deep cells of
    its column (rho is up-closed), hence lies in the unbounded class of that
    strip.  A class meeting both strips would force the hull's two distinct
    lines to coincide.
    """
    d = sum(lam) + len(rho)
    lo = -(d + 1)
    ones = []
    for u in range(lo, a_j + 1):
        for v in range(lo, a_k + 1):
            bar = _bar_dim(u, v, a_j, a_k)
            if bar == 0 or (u, v) in rho:
                continue
            if bar == 1 or _lam_contains(lam, u, v):
                ones.append((u, v))
    ones_set = set(ones)
    uf = _UnionFind(ones)
    # Adjacency closure; it equals the full comparability closure because the
    # level table is monotone, so all cells between two comparable level-1
    # cells are themselves level 1 and lie inside the L-region.
    for (u, v) in ones:
        if (u + 1, v) in ones_set:
            uf.union((u, v), (u + 1, v))
        if (u, v + 1) in ones_set:
            uf.union((u, v), (u, v + 1))
    classes: dict = {}
    for c in ones:
        classes.setdefault(uf.find(c), []).append(c)
    strip_j_roots = set()
    strip_k_roots = set()
    free = []
    for root, cells in classes.items():
        has_j = any(u >= 1 for u, _ in cells)
        has_k = any(v >= 1 for _, v in cells)
        if has_j and has_k:
            return None
        if has_j:
            strip_j_roots.add(root)
        elif has_k:
            strip_k_roots.add(root)
        else:
            if any(u > 0 or v > 0 for u, v in cells):
                raise InvariantError("free line class leaking outside the rank-2 quadrant")
            free.append(tuple(sorted(cells)))
    if len(strip_j_roots) != 1 or len(strip_k_roots) != 1:
        raise InvariantError("corner picture lost an unbounded strip class")
    free.sort(key=lambda cells: cells[0])
    free_of_cell = {c: f for f, cells in enumerate(free) for c in cells}

    roots = []
    for u, v in sorted(rho):
        if _bar_dim(u, v, a_j, a_k) == 2:
            roots.append((u, v, -1, 2))  # whole fiber removed from the rank-2 level
        else:
            roots.append((u, v, -1, 1))
    for v in range(0, -len(lam), -1):
        for u in range(0, -lam[-v], -1):
            if (u, v) in rho:
                continue
            roots.append((u, v, free_of_cell.get((u, v), -1), 1))
    roots.sort()
    return CornerConfig(lam, tuple(sorted(rho)), a_j, a_k, d, tuple(free), tuple(roots))


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing positive tuples summing to n (the empty tuple for 0)."""
    if n == 0:
        yield ()
        return
    def rec(rest, maxpart, acc):
        if rest == 0:
            yield tuple(acc)
            return
        for p in range(min(rest, maxpart), 0, -1):
            acc.append(p)
            yield from rec(rest - p, p, acc)
            acc.pop()
    yield from rec(n, n, [])


def _monotone_seqs(caps: list[int], lo0: int, total: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing nonnegative sequences below per-position caps, fixed sum."""
    m = len(caps)
    def rec(i, lo, rem, acc):
        if i == m:
            if rem == 0:
                yield tuple(acc)
            return
        for v in range(lo, min(caps[i], rem) + 1):
            if v * (m - i) > rem:
                break
            acc.append(v)
            yield from rec(i + 1, v, rem - v, acc)
            acc.pop()
    yield from rec(0, lo0, total, [])


def _iter_rho(m: int, a_j: int, a_k: int, lam: tuple[int, ...]) -> Iterator[frozenset]:
    """Up-closed m-cell subsets of the two strips plus the quadrant, with the
    quadrant part contained in the bite lam.  Encoded by per-column top-segment
    lengths, nondecreasing along u within each straight piece."""
    if m == 0:
        yield frozenset()
        return
    cols_q = list(range(-m, 1))                      # columns topped by the horizontal strip
    caps_q = [a_k + _lam_col_depth(lam, u) for u in cols_q]
    for sq in range(m + 1):
        for tq in _monotone_seqs(caps_q, 0, sq):
            # cells of rho below the axis in column 0 must persist into column 1
            q0 = max(0, tq[-1] - a_k)
            for tj in _monotone_seqs([m] * a_j, q0, m - sq):
                cells = set()
                for u, t in zip(cols_q, tq):
                    for i in range(t):
                        cells.add((u, a_k - i))
                for u, t in zip(range(1, a_j + 1), tj):
                    for i in range(t):
                        cells.add((u, -i))
                yield frozenset(cells)


@lru_cache(maxsize=None)
def corner_configs(d_i: int, a_j: int, a_k: int) -> tuple[CornerConfig, ...]:
    """All satisfiable corner pictures of defect exactly d_i."""
    if d_i < 0:
        raise PreconditionError("negative corner defect")
    out = []
    for b in range(d_i + 1):
        for lam in partitions(b):
            for rho in _iter_rho(d_i - b, a_j, a_k, lam):
                cfg = _build_corner(lam, rho, a_j, a_k)
                if cfg is not None:
                    out.append(cfg)
    out.sort(key=lambda c: (c.lam, c.rho))
    return tuple(out)


# ---------------------------------------------------------------------------
# Fixed components


@dataclass(frozen=True)
class FixedComponent:
    """One connected fixed component, a product of n_factors projective lines."""

    k: int
    d: tuple[int, int, int]
    a: tuple[int, int, int]
    s: tuple[int, int, int]
    corners: tuple[CornerConfig, CornerConfig, CornerConfig]
    n_factors: int
    reflect: bool = False

    def factor_offset(self, i: int) -> int:
        return sum(c.n_free for c in self.corners[:i])

    def label(self) -> str:
        return f"k={self.k} d={self.d} a={self.a} s={self.s}"


class DecoratedTable:
    """Character table of an equivariant bundle split into eigenlines.

    Entries map a character to {divisor class vector: multiplicity}; produced
    tables only carry the zero vector or unit vectors as classes.
    """

    __slots__ = ("n_factors", "entries")

    def __init__(self, n_factors: int):
        self.n_factors = n_factors
        self.entries: dict[Character, dict[tuple, int]] = {}

    def add(self, ch: Character, cls: tuple, mult: int = 1):
        bucket = self.entries.setdefault(ch, {})
        bucket[cls] = bucket.get(cls, 0) + mult

    def merge(self, other: "DecoratedTable"):
        for ch, cls, m in other.roots():
            self.add(ch, cls, m)

    def roots(self) -> Iterator[tuple[Character, tuple, int]]:
        for ch, bucket in self.entries.items():
            for cls, m in bucket.items():
                yield ch, cls, m

    def rank(self) -> int:
        return sum(m for _, _, m in self.roots())

    def char_counts(self) -> dict[Character, int]:
        return {ch: sum(bucket.values()) for ch, bucket in self.entries.items()}

    def char_sum(self) -> Character:
        return char_sum(self.char_counts())

    def sorted_roots(self) -> list[tuple[Character, tuple, int]]:
        return sorted(self.roots())


def _unit_class(n: int, f: int) -> tuple:
    return tuple(1 if i == f else 0 for i in range(n))


def _twisted_s(comp: FixedComponent, n: int) -> tuple[int, int, int]:
    # Twisting by O(n) moves only the slanted strip: the twisting divisor is
    # the coordinate line through the two fixed points away from corner 0.
    return (comp.s[0] + n, comp.s[1], comp.s[2])


def _emit(comp: FixedComponent, ch: Character) -> Character:
    return -ch if comp.reflect else ch


def hexagon_table(comp: FixedComponent, n: int) -> DecoratedTable:
    """Characters of the twisted hull cohomology: the strip-intersection
    hexagon s_i'+1 <= m_i <= s_i'+a_i, every character with multiplicity 1."""
    s0, s1, s2 = _twisted_s(comp, n)
    a0, a1, a2 = comp.a
    t = DecoratedTable(comp.n_factors)
    zero = (0,) * comp.n_factors
    for m1 in range(s1 + 1, s1 + a1 + 1):
        for m2 in range(s2 + 1, s2 + a2 + 1):
            if s0 + 1 <= -m1 - m2 <= s0 + a0:
                t.add(_emit(comp, Character(m1, m2)), zero, 1)
    return t


def _corner_char(i: int, mj: int, mk: int) -> Character:
    if i == 0:
        return Character(mj, mk)
    if i == 1:
        return Character(-mj - mk, mk)
    return Character(mk, -mj - mk)


def torsion_table(comp: FixedComponent, corner: int, n: int) -> DecoratedTable:
    """Character table of the local torsion quotient at one fixed point."""
    j, k = _COMPL[corner]
    ts = _twisted_s(comp, n)
    sj, sk = ts[j], ts[k]
    cfg = comp.corners[corner]
    off = comp.factor_offset(corner)
    t = DecoratedTable(comp.n_factors)
    zero = (0,) * comp.n_factors
    for u, v, fidx, mult in cfg.torsion_roots:
        ch = _emit(comp, _corner_char(corner, sj + u, sk + v))
        cls = zero if fidx < 0 else _unit_class(comp.n_factors, off + fidx)
        t.add(ch, cls, mult)
    return t


def _full_table(comp: FixedComponent, n: int) -> DecoratedTable:
    t = hexagon_table(comp, n)
    for i in range(3):
        t.merge(torsion_table(comp, i, n))
    return t


def normalization_shift(comp: FixedComponent) -> Character:
    """The character translation still needed to equalize the character sums
    of the n=0 and n=-1 cohomology tables; zero on a normalized component."""
    return _full_table(comp, 0).char_sum() - _full_table(comp, -1).char_sum()


def u_table(comp: FixedComponent, i: int) -> DecoratedTable:
    """Decorated table of the i-th monad cohomology space, twist n = i-2."""
    t = _full_table(comp, i - 2)
    expected = (comp.k - 1, comp.k, comp.k - 1)[i]
    if t.rank() != expected:
        raise InvariantError(
            f"rank mismatch: table {i} of component [{comp.label()}] has rank "
            f"{t.rank()}, expected {expected}"
        )
    return t


def _normalize(comp: FixedComponent) -> FixedComponent:
    w = normalization_shift(comp)
    if w == ZERO:
        return comp
    delta = -w if comp.reflect else w
    s = tuple(comp.s[i] + coord(delta, i) for i in range(3))
    comp = replace(comp, s=s)
    if normalization_shift(comp) != ZERO:
        raise InvariantError(f"normalization failed to converge on [{comp.label()}]")
    return comp


def _splits3(d: int) -> Iterator[tuple[int, int, int]]:
    for d0 in range(d + 1):
        for d1 in range(d - d0 + 1):
            yield d0, d1, d - d0 - d1


def assemble_components(
    k: int,
    seed: tuple[int, int] = (0, 0),
    reflect: bool = False,
    normalize: bool = True,
) -> list[FixedComponent]:
    """Every fixed component for second Chern class k, in canonical order
    (defect total, defect split, side triple, corner picture indices)."""
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    s1, s2 = seed
    comps = []
    for d in range(k):
        c = k - d
        triples = side_triples(c)
        for d0, d1, d2 in _splits3(d):
            for a in triples:
                cfgs = (
                    corner_configs(d0, a[1], a[2]),
                    corner_configs(d1, a[0], a[2]),
                    corner_configs(d2, a[0], a[1]),
                )
                s0 = (-1 - sum(a)) // 2 - s1 - s2  # sum(a) is odd, so this is exact
                for c0 in cfgs[0]:
                    for c1 in cfgs[1]:
                        for c2 in cfgs[2]:
                            n = c0.n_free + c1.n_free + c2.n_free
                            comp = FixedComponent(
                                k, (d0, d1, d2), a, (s0, s1, s2), (c0, c1, c2), n, reflect
                            )
                            if normalize:
                                comp = _normalize(comp)
                            comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# Serialization (one JSON object per component; characters are [m1, m2])


def component_to_json(comp: FixedComponent) -> dict:
    return {
        "k": comp.k,
        "d": list(comp.d),
        "a": list(comp.a),
        "s": list(comp.s),
        "corners": [
            {
                "lambda_b": list(c.lam),
                "rho": [[u, v] for u, v in c.rho],
                "free_classes": c.n_free,
            }
            for c in comp.corners
        ],
        "N": comp.n_factors,
    }


def component_from_json(obj: Mapping, reflect: bool = False) -> FixedComponent:
    k = int(obj["k"])
    d = tuple(int(x) for x in obj["d"])
    a = tuple(int(x) for x in obj["a"])
    s = tuple(int(x) for x in obj["s"])
    if len(d) != 3 or len(a) != 3 or len(s) != 3:
        raise PreconditionError("component record needs three defects, widths and thresholds")
    corners = []
    for i, rec in enumerate(obj["corners"]):
        j, kk = _COMPL[i]
        lam = tuple(int(x) for x in rec["lambda_b"])
        if any(lam[r] < lam[r + 1] for r in range(len(lam) - 1)) or any(x < 1 for x in lam):
            raise PreconditionError(f"corner {i}: bite rows must be weakly decreasing positives")
        rho = frozenset((int(u), int(v)) for u, v in rec["rho"])
        _validate_rho(lam, rho, a[j], a[kk], i)
        cfg = _build_corner(lam, rho, a[j], a[kk])
        if cfg is None:
            raise PreconditionError(f"corner {i}: picture is unsatisfiable")
        if cfg.n_free != int(rec["free_classes"]):
            raise PreconditionError(f"corner {i}: free class count does not match the picture")
        corners.append(cfg)
    comp = FixedComponent(
        k, d, a, s, tuple(corners), sum(c.n_free for c in corners), reflect
    )
    if comp.d != tuple(c.defect for c in corners):
        raise PreconditionError("corner defects disagree with the stated split")
    if not 0 <= sum(d) <= k - 1:
        raise PreconditionError(f"total defect {sum(d)} out of range for k={k}")
    c1, c2 = chern_from_data(a, s)
    if c1 != -1 or c2 != k - sum(d):
        raise PreconditionError(
            f"Chern data ({c1},{c2}) inconsistent with k={k}, defect {sum(d)}"
        )
    return comp


def _validate_rho(lam, rho, a_j, a_k, i):
    for u, v in rho:
        if _bar_dim(u, v, a_j, a_k) == 0:
            raise PreconditionError(f"corner {i}: removed cell ({u},{v}) outside the L-region")
        if u <= 0 and v <= 0 and not _lam_contains(lam, u, v):
            raise PreconditionError(f"corner {i}: quadrant cell ({u},{v}) removed outside the bite")
        for nu, nv in ((u + 1, v), (u, v + 1)):
            if _bar_dim(nu, nv, a_j, a_k) > 0 and (nu, nv) not in rho:
                raise PreconditionError(f"corner {i}: removed cells are not up-closed at ({u},{v})")
