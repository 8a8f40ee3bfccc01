"""Exact verification engine for the commuting polynomial vector fields D_k on C^infinity."""

from hyperflow.derivations import (
    Derivation,
    apply,
    apply_power,
    check_closed_forms,
    commutator_on_generator,
    generator_image,
)
from hyperflow.jets import FlowSpec, JetEngine, TimeJet, flow_sample, lambda_jet, taylor_jet
from hyperflow.poly import ANY_WEIGHT, Coordinate, Polynomial, b, evaluate, homogeneous_weight, to_text
from hyperflow.series import LaurentSeries, b_series, lambda_poly, rhs_L1, verify_annihilation

__all__ = [
    "ANY_WEIGHT",
    "Coordinate",
    "Derivation",
    "FlowSpec",
    "JetEngine",
    "LaurentSeries",
    "Polynomial",
    "TimeJet",
    "apply",
    "apply_power",
    "b",
    "b_series",
    "check_closed_forms",
    "commutator_on_generator",
    "evaluate",
    "flow_sample",
    "generator_image",
    "homogeneous_weight",
    "lambda_jet",
    "lambda_poly",
    "rhs_L1",
    "taylor_jet",
    "to_text",
    "verify_annihilation",
]
