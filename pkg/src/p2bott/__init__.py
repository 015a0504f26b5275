"""Exact torus-localization computation of the correlation constants of the
universal bundle on moduli of stable rank-2 sheaves on the projective plane."""

from .lattice import Character, Gamma, char_sum, pair, shift, trigonal
from .chow import TruncPoly, euler_factor, format_rational, integrate, invert_unit, mul
from .fixed_loci import (
    CornerConfig,
    DecoratedTable,
    FixedComponent,
    assemble_components,
    chern_from_data,
    corner_configs,
    hexagon_table,
    normalization_shift,
    side_triples,
    torsion_table,
    u_table,
)
from .equivariant import VirtualTable, ext1_table, hom, normal_table, tensor_fixed
from .bott import (
    ComputeResult,
    component_contribution,
    compute,
    correlation_constant,
    select_gamma,
)

__version__ = "0.1.0"
