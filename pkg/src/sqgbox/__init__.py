"""Spectral toolkit for the Dirichlet Laplacian on a rectangle.

Fields are band-limited sine/cosine series on (0, L1) x (0, L2) tagged with
a per-axis parity, so derivatives, the heat semigroup, fractional powers of
sqrt(-Laplacian), dyadic frequency blocks, and Besov norms are all exact
operations on coefficients.  On top of the calculus sit a dealiased
surface-quasigeostrophic integrator with Riesz-transform velocity and a
verification harness that measures bilinear product estimates, a resolvent
representation of the square-root operator, and perturbation growth along
trajectories.
"""

from .kernels import BACKEND, HAVE_NUMBA, USE_NUMBA, power_sum, resolvent_quadrature_table
from .domain import (
    PARITIES,
    DomainSpec,
    GridField,
    SpectralField,
    analyze,
    dealias_grid,
    eigenvalue,
    evaluate_at,
    full_band,
    grid_points,
    inner_product,
    lambda_table,
    laplacian,
    lp_norm,
    partial_derivative,
    pointwise_product,
    product_parity,
    read_field,
    spectral_inner,
    spectral_norm,
    synthesize,
    unit_mode,
    write_field,
)
from .multipliers import (
    C0,
    DyadicProfile,
    QuadratureSpec,
    apply_multiplier,
    build_dyadic_profile,
    dyadic_block,
    fractional_power,
    heat_semigroup,
    j_range,
    quadrature_nodes,
    resolvent,
    sqrt_via_resolvent,
)
from .besov import (
    BesovParams,
    BesovProfile,
    besov_norm,
    conjugate_exponent,
    dual_norm_lower_bound,
    dual_params,
    embedding_check,
)
from .solver import (
    BlowUpError,
    SolverConfig,
    TrajectoryRecord,
    load_trajectory,
    mild_residual,
    nonlinear_term,
    save_trajectory,
    simulate,
    snapshot_index,
    step,
    velocity,
)
from .harness import (
    DEFAULT_BATTERY,
    EstimateReport,
    SampleSpec,
    adapted_quadrature,
    bilinear_battery,
    elliptic_ratio_study,
    gradient_magnitude,
    heat_smoothing_study,
    holder_target,
    multiplier_bound_study,
    sample_field,
    single_block_sample,
    symmetrized_product,
    uniqueness_experiment,
    verify_bilinear,
    verify_derivative_structure,
    verify_duhamel_growth,
    verify_initial_smallness,
    verify_product_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "USE_NUMBA",
    "power_sum",
    "resolvent_quadrature_table",
    "PARITIES",
    "DomainSpec",
    "GridField",
    "SpectralField",
    "analyze",
    "dealias_grid",
    "eigenvalue",
    "evaluate_at",
    "full_band",
    "grid_points",
    "inner_product",
    "lambda_table",
    "laplacian",
    "lp_norm",
    "partial_derivative",
    "pointwise_product",
    "product_parity",
    "read_field",
    "spectral_inner",
    "spectral_norm",
    "synthesize",
    "unit_mode",
    "write_field",
    "C0",
    "DyadicProfile",
    "QuadratureSpec",
    "apply_multiplier",
    "build_dyadic_profile",
    "dyadic_block",
    "fractional_power",
    "heat_semigroup",
    "j_range",
    "quadrature_nodes",
    "resolvent",
    "sqrt_via_resolvent",
    "BesovParams",
    "BesovProfile",
    "besov_norm",
    "conjugate_exponent",
    "dual_norm_lower_bound",
    "dual_params",
    "embedding_check",
    "BlowUpError",
    "SolverConfig",
    "TrajectoryRecord",
    "load_trajectory",
    "mild_residual",
    "nonlinear_term",
    "save_trajectory",
    "simulate",
    "snapshot_index",
    "step",
    "velocity",
    "DEFAULT_BATTERY",
    "EstimateReport",
    "SampleSpec",
    "adapted_quadrature",
    "bilinear_battery",
    "elliptic_ratio_study",
    "gradient_magnitude",
    "heat_smoothing_study",
    "holder_target",
    "multiplier_bound_study",
    "sample_field",
    "single_block_sample",
    "symmetrized_product",
    "uniqueness_experiment",
    "verify_bilinear",
    "verify_derivative_structure",
    "verify_duhamel_growth",
    "verify_initial_smallness",
    "verify_product_decomposition",
    "__version__",
]
