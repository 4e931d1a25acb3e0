"""Estimators for expectations along sampler trajectories."""

from .estimator_models import EstimateReport
from .estimators import (
    batch_means_variance,
    default_batch_count,
    jump_chain_estimate,
    jump_chain_weights,
    mapped_estimate,
    path_average,
    pooled_path_average,
)
from .path_integrals import (
    batch_integrals,
    quadrature_segment_integrals,
    segment_integral,
    segment_integrals,
)
from .test_functions import (
    GenericFunction,
    Monomial,
    TestFunction,
    compose,
    parse_test_function,
    squared_radius,
)

__all__ = [
    "EstimateReport",
    "GenericFunction",
    "Monomial",
    "TestFunction",
    "batch_integrals",
    "batch_means_variance",
    "compose",
    "default_batch_count",
    "jump_chain_estimate",
    "jump_chain_weights",
    "mapped_estimate",
    "parse_test_function",
    "path_average",
    "pooled_path_average",
    "quadrature_segment_integrals",
    "segment_integral",
    "segment_integrals",
    "squared_radius",
]
