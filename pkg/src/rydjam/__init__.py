"""Jammed configurations of one-dimensional Rydberg chains and k-mer deposition.

Exact counting (brute force and generating functions), the complexity
function and equilibrium density, maximum-entropy gap profiles, and random
sequential adsorption with quadrature jamming limits.
"""

from .complexity import (
    ComplexityError,
    ComplexityPoint,
    EquilibriumDensity,
    complexity,
    complexity_closed_b1,
    complexity_closed_b2,
    complexity_grid,
    golden_section_max,
    kmer_complexity,
    kmer_rho_star,
    rho_star,
)
from .entropy import continuous_optimizer, discrete_complexity_estimate, feasible_set, multinomial
from .genfunc import CoeffTable, growth_rate, jammed_count_row, jammed_counts, kmer_counts, sum_over_lengths
from .model import (
    BruteForceLimitError,
    Configuration,
    GapProfile,
    ModelParams,
    density,
    enumerate_jammed,
    gap_profile,
    is_blockade_valid,
    is_jammed,
)
from .quadrature import QuadratureError, QuadratureResult, integrate
from .rsa import (
    SimConfig,
    SimSummary,
    jamming_limit_quadrature,
    kmer_jamming_limit,
    renyi_constant,
    scaled_jamming_limit,
    simulate_rsa,
)

__version__ = "0.1.0"
