"""Fusion rings, Littlewood-Richardson and affine sl_n fusion, eigenphases of unitary products."""

from .affine import affine_fusion, affine_fusion_ring, fusion_monotonicity_check, sl_tensor_coeff
from .eigen import (
    AWReport,
    EigenphaseTuple,
    Feasibility,
    aw_crosscheck,
    eigenphases,
    unitary_product_search,
)
from .lr import lr_coeff
from .partitions import Partition, parse_partition
from .ring import FusionReport, FusionRing, validate_fusion_ring

__all__ = [
    "AWReport",
    "EigenphaseTuple",
    "Feasibility",
    "FusionReport",
    "FusionRing",
    "Partition",
    "affine_fusion",
    "affine_fusion_ring",
    "aw_crosscheck",
    "eigenphases",
    "fusion_monotonicity_check",
    "lr_coeff",
    "parse_partition",
    "sl_tensor_coeff",
    "unitary_product_search",
    "validate_fusion_ring",
]
