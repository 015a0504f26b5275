from fractions import Fraction

import pytest

from p2bott.bott import (
    component_contribution,
    compute,
    correlation_constant,
    select_gamma,
    select_gamma_for_chars,
)
from p2bott.errors import NonGenericGammaError, PreconditionError
from p2bott.fixed_loci import assemble_components, u_table
from p2bott.equivariant import normal_table
from p2bott.lattice import Character, Gamma


def test_select_gamma_examples():
    assert select_gamma_for_chars([Character(1, -1)]) == Gamma(1, 2)
    assert select_gamma_for_chars([Character(1, -1), Character(2, -1)]) == Gamma(1, 3)
    assert select_gamma_for_chars([]) == Gamma(1, 2)


def test_contribution_k1_is_one():
    comp = assemble_components(1)[0]
    assert component_contribution(comp, Gamma(1, 2)) == 1


def test_contribution_point_component_is_plain_ratio():
    # hand evaluation on the d=0, a=(1,2,2) component at k=2:
    # numerator <g,(-1,-1)>^4 = 81, denominator (-1)(1)(-1)(-2) = -2
    comp = assemble_components(2)[0]
    assert comp.a == (1, 2, 2)
    assert component_contribution(comp, Gamma(1, 2)) == Fraction(-81, 2)


def test_non_generic_gamma_raises():
    comp = assemble_components(2)[0]
    # normal table contains (1,-1), killed by gamma = (1,1)
    with pytest.raises(NonGenericGammaError):
        component_contribution(comp, Gamma(1, 1))


def test_degree_bookkeeping():
    for comp in assemble_components(3):
        num_roots = 4 * sum(m for _, _, m in u_table(comp, 2).roots())
        assert num_roots == 4 * (comp.k - 1)
        assert normal_table(comp).rank() == 4 * (comp.k - 1) - comp.n_factors


def test_small_constants():
    assert correlation_constant(2) == 0
    assert correlation_constant(3) == 0
    assert correlation_constant(4) == 13


def test_k1_reports_computed_value_with_flag():
    result = compute(1)
    assert result.value == 1
    assert result.degenerate_k1


def test_gamma_independence_small():
    for k in (2, 3):
        comps = assemble_components(k)
        g1 = select_gamma(comps)
        g2 = select_gamma_for_chars(
            {ch for c in comps for ch in normal_table(c).entries}, start_q=g1.g2 + 1
        )
        assert g1 != g2
        v1 = compute(k, gamma=g1, components=comps).value
        v2 = compute(k, gamma=g2, components=comps).value
        assert v1 == v2


def test_explicit_gamma_matches_selected():
    assert correlation_constant(4, gamma=(1, 7)) == 13
    assert correlation_constant(4, gamma=(2, 13)) == 13


def test_jobs_bit_identical():
    r1 = compute(3, jobs=1)
    r2 = compute(3, jobs=2)
    assert r1.value == r2.value
    assert r1.contributions == r2.contributions


def test_compute_preconditions():
    with pytest.raises(PreconditionError):
        compute(0)
    with pytest.raises(PreconditionError):
        compute(2, gamma=(0, 0))
    with pytest.raises(PreconditionError):
        compute(2, jobs=0)
