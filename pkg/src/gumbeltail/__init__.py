"""Tail-spacing estimation in the Gumbel max-domain of attraction.

Estimators of the spacing statistic (X_{n,n} - X_{n-k,n}) / log k and the
Hill estimator, a catalog of distribution models with their norming
constants, a seeded Monte Carlo engine verifying the consistency and
Gumbel weak-limit behavior, and a normal-versus-exponential model test.
"""

from .engine import (
    KsReport,
    ReplicateSet,
    RngSpec,
    TableRow,
    gumbel_cdf,
    inverse_transform,
    ks_distance,
    reproduce_table,
    run_replicates,
    sorted_uniforms,
    summarize,
    write_replicates_csv,
)
from .errors import (
    AuxNotVanishing,
    DomainError,
    FixedOutOfRange,
    GumbelTailError,
    InsufficientSample,
    KOutOfRange,
    NoCdf,
    NonPositiveEndpoint,
    NonPositiveValue,
    StepUnderflow,
    TailUnderflow,
    TooSmallN,
    ZeroScale,
)
from .estimators import (
    EstimateResult,
    KPolicy,
    SortedSample,
    de_haan_resnick,
    de_haan_resnick_log_scale,
    hill,
    normalized_statistic,
    select_k,
)
from .models import (
    IteratedLogSpec,
    NormingConstants,
    TailModel,
    get_model,
    iterated_c_n,
    iterated_log_model,
    lambda_ratio,
    mason_quantile,
    mean_excess_R,
    model_names,
    model_quantile,
    norming,
    rho_numeric,
    transform_exp,
    transform_log,
)
from .normal import normal_cdf, normal_pdf, normal_ppf, normal_sf, normal_upper_quantile
from .select import ModelVerdict, classify

__version__ = "0.1.0"

__all__ = [
    "AuxNotVanishing",
    "DomainError",
    "EstimateResult",
    "FixedOutOfRange",
    "GumbelTailError",
    "InsufficientSample",
    "IteratedLogSpec",
    "KOutOfRange",
    "KPolicy",
    "KsReport",
    "ModelVerdict",
    "NoCdf",
    "NonPositiveEndpoint",
    "NonPositiveValue",
    "NormingConstants",
    "ReplicateSet",
    "RngSpec",
    "SortedSample",
    "StepUnderflow",
    "TableRow",
    "TailModel",
    "TailUnderflow",
    "TooSmallN",
    "ZeroScale",
    "classify",
    "de_haan_resnick",
    "de_haan_resnick_log_scale",
    "get_model",
    "gumbel_cdf",
    "hill",
    "inverse_transform",
    "iterated_c_n",
    "iterated_log_model",
    "ks_distance",
    "lambda_ratio",
    "mason_quantile",
    "mean_excess_R",
    "model_names",
    "model_quantile",
    "normal_cdf",
    "normal_pdf",
    "normal_ppf",
    "normal_sf",
    "normal_upper_quantile",
    "normalized_statistic",
    "norming",
    "reproduce_table",
    "rho_numeric",
    "run_replicates",
    "select_k",
    "sorted_uniforms",
    "summarize",
    "transform_exp",
    "transform_log",
    "write_replicates_csv",
]
