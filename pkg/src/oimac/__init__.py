"""
Capacity-region bounds for the optical intensity multiple access channel.

Users send nonnegative intensities X_k, the receiver sees
Y = X_1 + ... + X_K + Z with Z ~ N(0, sigma^2), and each user obeys either
an average-power or a peak-power limit.  The package evaluates single-user
and multi-user inner and outer bounds, their high-SNR asymptotics, and the
numerical engines behind them (output-entropy quadrature, a Monte-Carlo
oracle, and a Blahut-Arimoto capacity solver).  All rates are in nats.
"""
from .avg_power import (
    ApOperatingPoint,
    AsymptoticRegion,
    CornerSet,
    NegativeRateWarning,
    TypeComparison,
    ap_asymptotic_capacity,
    ap_asymptotic_region_2u,
    ap_inner_corners_2u,
    ap_inner_hrep_2u,
    ap_kuser_inner_corners,
    ap_kuser_inner_hrep,
    ap_kuser_inner_union,
    ap_kuser_outer,
    ap_outer_2u,
    ap_region_gap_table,
    ap_single_lower_closed,
    ap_single_lower_exp,
    ap_single_lower_geo,
    ap_single_upper,
    ap_sum_gap_symmetric,
    ap_type_compare,
    ie,
    type_asymptotic_gap,
)
from .distributions import (
    ErlangLaw,
    InputDistribution,
    density_convolve,
    erlang_entropy,
    make_aen_mix,
    make_basic,
    make_geometric_spaced,
    make_maxmass_discrete,
)
from .errors import (
    ArityError,
    BracketError,
    BudgetError,
    DomainError,
    InconsistentDensityError,
    OimacError,
    SizeError,
    UnsupportedInputError,
)
from .io import BoundReport, emit
from .mutual_information import MiResult, mi_awgn, mi_uniform_noise
from .numerics import (
    McEstimate,
    QuadratureSpec,
    binary_entropy,
    bisect_root,
    digamma_int,
    entropy_quadrature,
    golden_max,
    mc_mi_estimate,
    q_function,
)
from .peak_power import (
    GapProfile,
    PpOperatingPoint,
    SlantedCoefficientWarning,
    SymmetricAsymptotics,
    iu,
    iu_plus,
    pp_asymptotic_gap,
    pp_cross_lower,
    pp_inner_corners_2u,
    pp_inner_hrep_2u,
    pp_lemma5_capacity,
    pp_mckellips,
    pp_orientation_gaps,
    pp_outer_2u,
    pp_pnr_star,
    pp_single_lower_closed,
    pp_single_lower_uniform,
    pp_single_upper,
    pp_symmetric_asymptotics,
    pp_symmetric_bound_difference,
    pp_tkb,
    pp_worst_gap_lambda,
    sum_law,
)
from .regions import HRegion, VRegion, corners_from_hrep_2d, dominated_hull_2d, point_in_hrep, vrep_in_hrep
from .solver import SolverResult, solve_peak_capacity

__version__ = "0.1.0"

__all__ = [
    "ApOperatingPoint",
    "ArityError",
    "AsymptoticRegion",
    "BoundReport",
    "BracketError",
    "BudgetError",
    "CornerSet",
    "DomainError",
    "ErlangLaw",
    "GapProfile",
    "HRegion",
    "InconsistentDensityError",
    "InputDistribution",
    "McEstimate",
    "MiResult",
    "NegativeRateWarning",
    "OimacError",
    "PpOperatingPoint",
    "QuadratureSpec",
    "SizeError",
    "SlantedCoefficientWarning",
    "SolverResult",
    "SymmetricAsymptotics",
    "TypeComparison",
    "UnsupportedInputError",
    "VRegion",
    "ap_asymptotic_capacity",
    "ap_asymptotic_region_2u",
    "ap_inner_corners_2u",
    "ap_inner_hrep_2u",
    "ap_kuser_inner_corners",
    "ap_kuser_inner_hrep",
    "ap_kuser_inner_union",
    "ap_kuser_outer",
    "ap_outer_2u",
    "ap_region_gap_table",
    "ap_single_lower_closed",
    "ap_single_lower_exp",
    "ap_single_lower_geo",
    "ap_single_upper",
    "ap_sum_gap_symmetric",
    "ap_type_compare",
    "binary_entropy",
    "bisect_root",
    "corners_from_hrep_2d",
    "density_convolve",
    "digamma_int",
    "dominated_hull_2d",
    "emit",
    "entropy_quadrature",
    "erlang_entropy",
    "golden_max",
    "ie",
    "iu",
    "iu_plus",
    "make_aen_mix",
    "make_basic",
    "make_geometric_spaced",
    "make_maxmass_discrete",
    "mc_mi_estimate",
    "mi_awgn",
    "mi_uniform_noise",
    "point_in_hrep",
    "pp_asymptotic_gap",
    "pp_cross_lower",
    "pp_inner_corners_2u",
    "pp_inner_hrep_2u",
    "pp_lemma5_capacity",
    "pp_mckellips",
    "pp_orientation_gaps",
    "pp_outer_2u",
    "pp_pnr_star",
    "pp_single_lower_closed",
    "pp_single_lower_uniform",
    "pp_single_upper",
    "pp_symmetric_asymptotics",
    "pp_symmetric_bound_difference",
    "pp_tkb",
    "pp_worst_gap_lambda",
    "q_function",
    "solve_peak_capacity",
    "sum_law",
    "type_asymptotic_gap",
    "vrep_in_hrep",
    "__version__",
]
