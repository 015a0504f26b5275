"""Residue-formula evaluation: pick a generic one-parameter subgroup, turn
each fixed component's tables into an exact rational contribution, and sum.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .chow import TruncPoly, euler_factor, format_rational
from .errors import InvariantError, NonGenericGammaError, PreconditionError
from .fixed_loci import FixedComponent, assemble_components, u_table
from .equivariant import normal_table
from .lattice import Character, Gamma, pair


def normal_characters(comps: Iterable[FixedComponent]) -> set[Character]:
    chars: set[Character] = set()
    for comp in comps:
        chars.update(normal_table(comp).entries.keys())
    return chars


def select_gamma_for_chars(chars: Iterable[Character], start_q: int = 2) -> Gamma:
    """First (1, q), q = start_q, start_q+1, ..., pairing nonzero with every
    excluded character.  Each character rules out at most one q, so this
    terminates."""
    excluded = [ch for ch in set(chars) if ch != Character(0, 0)]
    q = start_q
    while True:
        g = Gamma(1, q)
        if all(pair(g, ch) != 0 for ch in excluded):
            return g
        q += 1


def select_gamma(comps: Iterable[FixedComponent]) -> Gamma:
    """Deterministic generic subgroup for a whole component list."""
    return select_gamma_for_chars(normal_characters(comps))


def component_contribution(comp: FixedComponent, g: Gamma) -> Fraction:
    """One summand of the residue formula: the integral over the component of
    the equivariant Euler class of four copies of the universal-bundle table
    divided by that of the normal class."""
    nt = normal_table(comp)
    denom_roots = nt.sorted_roots()
    for ch, _, _ in denom_roots:
        if pair(g, ch) == 0:
            raise NonGenericGammaError(
                f"gamma {tuple(g)} pairs to zero with normal character {tuple(ch)} "
                f"on [{comp.label()}]"
            )
    n = comp.n_factors
    zero_cls = (0,) * n
    poly = TruncPoly.one(n)
    for ch, cls, m in u_table(comp, 2).sorted_roots():
        t = pair(g, ch)
        if t == 0 and cls == zero_cls:
            return Fraction(0)  # a genuinely vanishing top Chern class
        poly = poly * euler_factor(t, cls, 4 * m)
        if not poly.coeffs:
            return Fraction(0)
    for ch, cls, m in denom_roots:
        poly = poly * euler_factor(pair(g, ch), cls, -m)
    return poly.integrate()


def _contribution_task(args) -> Fraction:
    comp, g = args
    return component_contribution(comp, g)


@dataclass
class ComputeResult:
    k: int
    value: int
    gamma: Gamma
    contributions: list[Fraction]
    components: list[FixedComponent]
    degenerate_k1: bool


def compute(
    k: int,
    gamma: Optional[Sequence[int]] = None,
    seed: tuple[int, int] = (0, 0),
    reflect: bool = False,
    jobs: int = 1,
    components: Optional[list[FixedComponent]] = None,
) -> ComputeResult:
    """Full evaluation for one k.  Contributions are computed independently
    per component and folded in canonical order, so the result is identical
    for any worker count."""
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    if jobs < 1:
        raise PreconditionError("worker count must be at least 1")
    comps = components if components is not None else assemble_components(k, seed, reflect)
    if gamma is None:
        g = select_gamma(comps)
    else:
        g1, g2 = int(gamma[0]), int(gamma[1])
        if (g1, g2) == (0, 0):
            raise PreconditionError("gamma must be a nonzero pair")
        g = Gamma(g1, g2)
    if jobs > 1 and len(comps) > 1:
        chunk = max(1, len(comps) // (4 * jobs))
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            contribs = list(pool.map(_contribution_task, ((c, g) for c in comps), chunksize=chunk))
    else:
        contribs = [component_contribution(c, g) for c in comps]
    total = sum(contribs, Fraction(0))
    if total.denominator != 1:
        dump = "\n".join(
            f"  id={i} value={format_rational(v)}" for i, v in enumerate(contribs)
        )
        raise InvariantError(
            f"localization inconsistency: sum {format_rational(total)} for k={k} "
            f"is not an integer; per-component contributions:\n{dump}"
        )
    return ComputeResult(k, int(total), g, contribs, comps, k == 1)


def correlation_constant(
    k: int,
    gamma: Optional[Sequence[int]] = None,
    seed: tuple[int, int] = (0, 0),
    reflect: bool = False,
    jobs: int = 1,
) -> int:
    """The k-th correlation constant (top Chern number of four copies of the
    universal bundle), as an exact integer."""
    return compute(k, gamma=gamma, seed=seed, reflect=reflect, jobs=jobs).value
