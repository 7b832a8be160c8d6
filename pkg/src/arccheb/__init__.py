"""Weighted Chebyshev polynomials on circular and lemniscatic arcs.

Numerical minimax solves on grids, potential-theoretic closed forms for the
limiting Widom factors, and the exact symmetry reduction of lemniscatic-arc
problems to weighted arc problems.
"""

from .asymptotics import (
    PredictionReport,
    alpha_constant,
    limit_residual_modulus,
    predict_lemniscate_limit,
    predict_pointwise_limit,
    predict_widom_limit,
    richardson_extrapolate,
    szego_widom_bounds,
)
from .errors import (
    ArcChebError,
    DegenerateNormalization,
    EmptyExtremalSet,
    IllConditionedFit,
    InfinityPole,
    LPFailure,
    NoConvergence,
    OutsideArc,
    OutsideImage,
    PointOnArc,
    QuadratureFailure,
    SingularNode,
    SizeTooSmall,
    WrongNormalization,
)
from .lemniscate import (
    LemniscateSpec,
    capacity_lemniscate,
    comparison_json,
    direct_vs_reduced,
    reconstruct_poly,
    reduce,
    rotation_symmetry_defect,
)
from .minimax import (
    MONIC,
    POINT,
    Grid,
    OracleBracket,
    PolySolution,
    brute_oracle_minimax,
    build_grid,
    build_lemniscate_grid,
    optimality_certificate,
    residual_value,
    solve_minimax,
    widom_factor,
)
from .potential import (
    INF,
    ArcDomain,
    arc_distance,
    c_r_alpha,
    capacity_arc,
    exterior_map,
    green_inf,
    harmonic_measure_log_integral,
    inverse_exterior_map,
    is_infinity,
    kernel_k,
    lambda_map,
    mu_log_integral,
    outer_modulus,
)
from .weights import (
    UNIT_WEIGHT,
    WeightSpec,
    eval_weight,
    lemniscate_reduced_weight,
)

__version__ = "0.1.0"
