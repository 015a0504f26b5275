"""Verification suite: every structural identity the enumeration and the
table algebra must satisfy, runnable per k from the command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .bott import compute, normal_characters, select_gamma_for_chars
from .chow import TruncPoly
from .equivariant import ext1_table, normal_table, zero_part_roots
from .errors import InvariantError
from .fixed_loci import (
    CornerConfig,
    _UnionFind,
    assemble_components,
    chern_from_data,
    component_to_json,
    corner_configs,
    corner_dimension_table,
    hexagon_table,
    normalization_shift,
    side_triples,
    torsion_table,
    u_table,
)
from .lattice import ZERO


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of integer partitions of n, by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if j % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        j += 1
    return total


def check_numerology(k: int) -> list[CheckResult]:
    """Dimension bookkeeping of the ambient construction."""
    import math

    u = (k - 1, k, k - 1)
    out = [CheckResult("monad dimensions (k-1, k, k-1)", u == (k - 1, k, k - 1))]
    out.append(
        CheckResult(
            "middle and right monad dimensions coprime",
            math.gcd(u[1], u[2]) == 1,
            f"gcd({u[1]},{u[2]})",
        )
    )
    dim = 1 - sum(x * x for x in u) + 3 * (u[0] * u[1] + u[1] * u[2]) - 3 * u[0] * u[2]
    out.append(CheckResult("moduli dimension 4(k-1)", dim == 4 * (k - 1), f"dim={dim}"))
    codim = 3 * (k - 1) * (u[1] * 1 - 1)
    out.append(
        CheckResult(
            "Grassmannian codimension 3(k-1)^2",
            codim == 3 * (k - 1) ** 2,
            f"codim={codim}",
        )
    )
    return out


def check_side_triples(c_max: int) -> CheckResult:
    """Enumerated triples equal a brute-force search over widths up to 4c."""
    for c in range(1, c_max + 1):
        brute = sorted(
            (a0, a1, a2)
            for a0 in range(1, 4 * c + 1)
            for a1 in range(1, 4 * c + 1)
            for a2 in range(1, 4 * c + 1)
            if a0 < a1 + a2 and a1 < a0 + a2 and a2 < a0 + a1
            and (-a0 + a1 + a2) ** 2 - 4 * a1 * a2 == 1 - 4 * c
        )
        if brute != side_triples(c):
            return CheckResult("side triples vs brute force", False, f"c={c}")
    return CheckResult("side triples vs brute force", True, f"c<={c_max}")


def check_fiber_counts(d_max: int, a_values) -> CheckResult:
    """Sum of 2^(free classes) over pictures equals the Young-pair count."""
    for d in range(d_max + 1):
        want = sum(partition_count(p) * partition_count(d - p) for p in range(d + 1))
        for a_j in a_values:
            for a_k in a_values:
                got = sum(2 ** cfg.n_free for cfg in corner_configs(d, a_j, a_k))
                if got != want:
                    return CheckResult(
                        "fiber-count identity",
                        False,
                        f"d={d} a_j={a_j} a_k={a_k}: {got} != {want}",
                    )
    return CheckResult("fiber-count identity", True, f"d<={d_max}, widths {list(a_values)}")


def _class_partition(cfg: CornerConfig, comparability: bool) -> frozenset:
    """Partition of level-1 cells on the scan window, under either relation."""
    dims = corner_dimension_table(cfg)
    ones = sorted(c for c, (_, dim) in dims.items() if dim == 1)
    uf = _UnionFind(ones)
    if comparability:
        for c1, c2 in combinations(ones, 2):
            if (c1[0] <= c2[0] and c1[1] <= c2[1]) or (c2[0] <= c1[0] and c2[1] <= c1[1]):
                uf.union(c1, c2)
    else:
        ones_set = set(ones)
        for u, v in ones:
            if (u + 1, v) in ones_set:
                uf.union((u, v), (u + 1, v))
            if (u, v + 1) in ones_set:
                uf.union((u, v), (u, v + 1))
    groups: dict = {}
    for c in ones:
        groups.setdefault(uf.find(c), []).append(c)
    return frozenset(tuple(sorted(g)) for g in groups.values())


def check_class_relation(d_max: int, a_values) -> CheckResult:
    """Log pictures where the comparability classes differ from the
    common-side classes (none are expected: the level table is monotone)."""
    diverging = 0
    examined = 0
    for d in range(d_max + 1):
        for a_j in a_values:
            for a_k in a_values:
                for cfg in corner_configs(d, a_j, a_k):
                    examined += 1
                    if _class_partition(cfg, True) != _class_partition(cfg, False):
                        diverging += 1
    return CheckResult(
        "comparability vs common-side classes",
        diverging == 0,
        f"{diverging} divergent of {examined} pictures",
    )


def check_component(comp) -> list[str]:
    """Structural suite for one component; returns failure descriptions."""
    fails = []
    k = comp.k
    d = sum(comp.d)
    label = comp.label()

    for n, want in ((0, k - d - 1), (-1, k - d), (-2, k - d - 1)):
        got = hexagon_table(comp, n).rank()
        if got != want:
            fails.append(f"hexagon count twist {n}: {got} != {want} on [{label}]")
    for i in range(3):
        for n in (-2, -1, 0):
            got = torsion_table(comp, i, n).rank()
            if got != comp.d[i]:
                fails.append(f"torsion rank corner {i} twist {n}: {got} != {comp.d[i]}")
    try:
        tables = [u_table(comp, i) for i in range(3)]
    except InvariantError as e:
        fails.append(str(e))
        return fails
    for t in tables:
        for _, cls, m in t.roots():
            if m < 1 or (any(cls) and sorted(cls) != [0] * (len(cls) - 1) + [1]):
                fails.append(f"non-unit decoration {cls} (mult {m}) on [{label}]")
    if normalization_shift(comp) != ZERO:
        fails.append(f"character sums of twists 0 and -1 differ on [{label}]")
    c1, c2 = chern_from_data(comp.a, comp.s)
    if (c1, c2) != (-1, k - d):
        fails.append(f"Chern data ({c1},{c2}) != (-1,{k-d}) on [{label}]")
    try:
        ext1_table(comp)
        normal_table(comp)
    except InvariantError as e:
        fails.append(str(e))
        return fails
    n = comp.n_factors
    chern = TruncPoly.one(n)
    for cls, m in zero_part_roots(comp):
        chern = chern * (TruncPoly.linear(n, 1, cls) ** m)
    want = TruncPoly.one(n)
    for f in range(n):
        want = want * TruncPoly.linear(n, 1, tuple(2 if i == f else 0 for i in range(n)))
    if chern != want:
        fails.append(f"zero-part total Chern class mismatch on [{label}]")
    return fails


def check_components(k: int, seed=(0, 0), reflect=False) -> CheckResult:
    comps = assemble_components(k, seed=seed, reflect=reflect)
    fails = []
    for comp in comps:
        fails.extend(check_component(comp))
    detail = f"{len(comps)} components"
    if fails:
        detail += "; " + "; ".join(fails[:5])
    return CheckResult("per-component structural suite", not fails, detail)


def report_signed_root_multiplicities(k: int, seed=(0, 0), reflect=False) -> CheckResult:
    """Informational: per-character totals of the deformation class are
    asserted nonnegative elsewhere, but nothing guarantees per-(character,
    class) multiplicities are; this only reports whether any were seen."""
    negatives = 0
    roots = 0
    for comp in assemble_components(k, seed=seed, reflect=reflect):
        for _, _, m in ext1_table(comp).roots():
            roots += 1
            if m < 0:
                negatives += 1
    return CheckResult(
        "signed per-class multiplicities (report only)",
        True,
        f"{negatives} negative of {roots} deformation roots",
    )


def check_gamma_independence(k: int, seed=(0, 0), reflect=False, jobs: int = 1) -> CheckResult:
    comps = assemble_components(k, seed=seed, reflect=reflect)
    chars = normal_characters(comps)
    g1 = select_gamma_for_chars(chars)
    g2 = select_gamma_for_chars(chars, start_q=g1.g2 + 1)
    v1 = compute(k, gamma=g1, seed=seed, reflect=reflect, jobs=jobs, components=comps).value
    v2 = compute(k, gamma=g2, seed=seed, reflect=reflect, jobs=jobs, components=comps).value
    return CheckResult(
        "gamma independence",
        v1 == v2,
        f"gamma {tuple(g1)} -> {v1}, gamma {tuple(g2)} -> {v2}",
    )


def check_seed_independence(k: int, alt_seed=(5, -3), reflect=False, jobs: int = 1) -> CheckResult:
    r1 = compute(k, seed=(0, 0), reflect=reflect, jobs=jobs)
    r2 = compute(k, seed=alt_seed, reflect=reflect, jobs=jobs)
    same_value = r1.value == r2.value
    m1 = sorted(str(component_to_json(c)) for c in r1.components)
    m2 = sorted(str(component_to_json(c)) for c in r2.components)
    return CheckResult(
        "seed independence",
        same_value and m1 == m2,
        f"values {r1.value}/{r2.value}, component multisets "
        + ("equal" if m1 == m2 else "differ"),
    )


def run_all(k: int, seed=(0, 0), reflect=False, jobs: int = 1) -> list[CheckResult]:
    results = check_numerology(k)
    results.append(check_side_triples(min(k, 5)))
    a_pool = sorted({a for c in range(1, k + 1) for t in side_triples(c) for a in t})
    results.append(check_fiber_counts(k - 1, a_pool))
    results.append(check_class_relation(k - 1, a_pool))
    results.append(check_components(k, seed=seed, reflect=reflect))
    results.append(report_signed_root_multiplicities(k, seed=seed, reflect=reflect))
    if k <= 4:
        results.append(check_gamma_independence(k, seed=seed, reflect=reflect, jobs=jobs))
        results.append(check_seed_independence(k, reflect=reflect, jobs=jobs))
    return results
