"""Associator data for endomorphism fusion categories via module tube algebras."""

from .catdata import (
    FusionCategoryData,
    FusionRing,
    GaugeTransform,
    ModuleCategoryData,
    apply_gauge,
    check_gauge_conventions,
    check_module_pentagon,
    check_pentagon,
    fp_dimensions,
    make_fusion_ring,
    module_fp_dimensions,
    validate_fusion_ring,
    validate_module_fusion,
)

__all__ = [
    "FusionCategoryData",
    "FusionRing",
    "GaugeTransform",
    "ModuleCategoryData",
    "apply_gauge",
    "check_gauge_conventions",
    "check_module_pentagon",
    "check_pentagon",
    "fp_dimensions",
    "make_fusion_ring",
    "module_fp_dimensions",
    "validate_fusion_ring",
    "validate_module_fusion",
]

__version__ = "0.1.0"
