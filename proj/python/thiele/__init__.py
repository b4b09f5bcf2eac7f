"""Adaptive Thiele continued-fraction interpolation."""

from ._core import (
    BreakdownError,
    DuplicateAbscissa,
    FitConfig,
    FitReport,
    InsufficientSamples,
    InvalidInput,
    InvalidN,
    NonFiniteValue,
    OverflowDetected,
    ParseError,
    SampleSet,
    SchemaError,
    ThieleError,
    ThieleModel,
    VersionMismatch,
    __version__,
    check_consecutive_distinct,
    check_phi_residual_identity,
    convergent_trace,
    eval_cfrac,
    eval_cfrac_batch,
    fit_adaptive,
    fit_fixed_order,
    io,
    newman,
    select_first_point,
)

__all__ = [
    "BreakdownError",
    "DuplicateAbscissa",
    "FitConfig",
    "FitReport",
    "InsufficientSamples",
    "InvalidInput",
    "InvalidN",
    "NonFiniteValue",
    "OverflowDetected",
    "ParseError",
    "SampleSet",
    "SchemaError",
    "ThieleError",
    "ThieleModel",
    "VersionMismatch",
    "check_consecutive_distinct",
    "check_phi_residual_identity",
    "convergent_trace",
    "eval_cfrac",
    "eval_cfrac_batch",
    "fit_adaptive",
    "fit_fixed_order",
    "io",
    "newman",
    "select_first_point",
]
