"""Parametrized candidate families and the tools that scan them.

Every family has closed-form metrics returning a :class:`FamilyReport` and a
constructor returning an :class:`~qisop.geometry.ArcRegion`, so that the
formulas can be checked by building the region and measuring it.
"""

from .report import FamilyReport, SingularParameterError, ConfigurationError
from .ovals import OvalParams, oval_metrics, oval_construct, limit_constant_minimizer
from .rotsym import (
    RotSymParams,
    connected_metrics,
    nonconnected_metrics,
    rotsym_metrics,
    rotsym_construct,
    alpha_root,
    condition_check,
    ConditionReport,
    solve_area_balance,
)
from .mask import (
    MaskParams,
    MaskOptimizeConfig,
    REFERENCE_MASK,
    mask_x0_from_area,
    mask_area,
    mask_metrics,
    mask_construct,
    mask_objective,
    mask_optimize,
)
from .stadium import StadiumConfig, stadium, stadium_value, stadium_optimize
from .lemmas import LEMMA_IDS, LemmaScanReport, lemma_scan
from .soak import SoakReport, soak_random, sample_shape

__all__ = [
    "FamilyReport",
    "SingularParameterError",
    "ConfigurationError",
    "OvalParams",
    "oval_metrics",
    "oval_construct",
    "limit_constant_minimizer",
    "RotSymParams",
    "connected_metrics",
    "nonconnected_metrics",
    "rotsym_metrics",
    "rotsym_construct",
    "alpha_root",
    "condition_check",
    "ConditionReport",
    "solve_area_balance",
    "MaskParams",
    "MaskOptimizeConfig",
    "REFERENCE_MASK",
    "mask_x0_from_area",
    "mask_area",
    "mask_metrics",
    "mask_construct",
    "mask_objective",
    "mask_optimize",
    "StadiumConfig",
    "stadium",
    "stadium_value",
    "stadium_optimize",
    "LEMMA_IDS",
    "LemmaScanReport",
    "lemma_scan",
    "SoakReport",
    "soak_random",
    "sample_shape",
]
