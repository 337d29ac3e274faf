"""Correspondence analysis, marginal-free CA, taxicab CA and log-ratio analysis
of two-way contingency tables."""
from .decomposition import Decomposition, reconstruct, taxicab_svd, weighted_svd
from .errors import (
    DimensionTooLarge,
    InvalidTargets,
    MarginFreeError,
    MissingAxis,
    NonConvergence,
    ParseError,
    TableError,
    UnknownDataset,
    ZeroCellError,
)
from .interactions import (
    InteractionMatrix,
    Kind,
    boxcox_adaptive_weights,
    boxcox_interaction,
    covariance_residual,
    first_order_lambda,
    log_odds,
    loglinear_interaction,
    pearson_contrast,
)
from .margin_fit import MarginFitResult, ipf_fit, uniform_targets
from .pipelines import METHODS, MethodResult, dispersion_table, goodman_rank_check, run_method
from .tables import (
    CountTable,
    IndicatorPair,
    ProbTable,
    WeightPair,
    from_counts,
    indicator_coding,
    marginal_weights,
    uniform_weights,
)

__version__ = "0.1.0"
