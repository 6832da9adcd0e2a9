"""Exact discrete geometry of binary confusion matrices.

The package enumerates the lattice of p x n confusion matrices, maps
matrices to ROC and related coordinate systems, traces exact level
curves of 32 performance metrics, and propagates binomial or
beta-binomial posterior-predictive uncertainty to exact pmfs over
matrices and metric values.  All core computation is rational (or
sign + square-root-of-rational); floats appear only in rendered output.
"""

from importlib.metadata import PackageNotFoundError, version

from .contours import (
    CONTOUR_IDS,
    ContourLine,
    ContourSet,
    ContourSpec,
    contour_alpha,
    contour_spec,
    contour_verticals,
    default_levels,
    intersection_points,
    lattice_incidence,
    level_from_display,
    on_contour,
    sample_contour,
)
from .errors import ContourError, DomainError, GuardError, RocgridError
from .lattice import (
    PrPoint,
    count_matrices,
    enumerate_matrices,
    enumerate_slice,
    project_barycentric,
    project_simplex,
    project_tetrahedral,
    roc_to_pr,
    slice_point_to_matrix,
)
from .matrices import BenefitMatrix, ConfusionMatrix, Rates
from .metric_dist import (
    Histogram,
    MetricEntry,
    MetricPmf,
    Summary,
    histogram,
    metric_pmf,
    multiplicity,
    summarize,
)
from .metrics import (
    METRIC_IDS,
    METRICS,
    MetricInfo,
    decision_benefit,
    display_finite,
    display_range,
    eval_balanced,
    eval_counts,
    eval_metric,
    metric_info,
    parse_metric_id,
    render_float,
    scale_factor,
)
from .uncertainty import (
    GRID_GUARD,
    UNIFORM_PRIOR,
    BetaPrior,
    JointPmf,
    beta_binomial_pmf,
    binomial_pmf,
    joint_predictive,
    marginals,
    mc_oracle,
    posterior_params,
    uniform_joint,
)
from .values import (
    NEG_INF,
    ONE,
    POS_INF,
    UNDEFINED,
    ZERO,
    MetricValue,
    exact_sqrt,
    rational,
    signed_sqrt,
)

try:
    __version__ = version("rocgrid")
except PackageNotFoundError:  # pragma: no cover - source tree without install
    __version__ = "0.0.0"

__all__ = [
    "__version__",
    # errors
    "RocgridError",
    "DomainError",
    "GuardError",
    "ContourError",
    # exact values
    "MetricValue",
    "exact_sqrt",
    "rational",
    "signed_sqrt",
    "POS_INF",
    "NEG_INF",
    "UNDEFINED",
    "ZERO",
    "ONE",
    # matrices and rates
    "ConfusionMatrix",
    "Rates",
    "BenefitMatrix",
    # metrics
    "MetricInfo",
    "METRICS",
    "METRIC_IDS",
    "parse_metric_id",
    "metric_info",
    "eval_metric",
    "eval_counts",
    "eval_balanced",
    "decision_benefit",
    "scale_factor",
    "render_float",
    "display_finite",
    "display_range",
    # lattice and projections
    "count_matrices",
    "enumerate_matrices",
    "enumerate_slice",
    "slice_point_to_matrix",
    "project_tetrahedral",
    "project_simplex",
    "project_barycentric",
    "PrPoint",
    "roc_to_pr",
    # contours
    "ContourSpec",
    "CONTOUR_IDS",
    "contour_spec",
    "contour_alpha",
    "contour_verticals",
    "on_contour",
    "lattice_incidence",
    "intersection_points",
    "ContourLine",
    "ContourSet",
    "sample_contour",
    "default_levels",
    "level_from_display",
    # uncertainty
    "GRID_GUARD",
    "BetaPrior",
    "UNIFORM_PRIOR",
    "binomial_pmf",
    "beta_binomial_pmf",
    "posterior_params",
    "JointPmf",
    "joint_predictive",
    "uniform_joint",
    "marginals",
    "mc_oracle",
    # metric distributions
    "MetricEntry",
    "MetricPmf",
    "metric_pmf",
    "multiplicity",
    "Summary",
    "summarize",
    "Histogram",
    "histogram",
]
