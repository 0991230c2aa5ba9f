# Segmentation quality measures
from .distance import (
    PointSet,
    ValueSeries,
    boundary_mae,
    boundary_points,
    hausdorff,
    mae,
    mask_hausdorff,
    pixel_mae,
)
from .overlap import (
    AttributeCounts,
    attribute_counts,
    binary_jaccard,
    binary_jaccard_distance,
    cosine_angle,
    jaccard,
    jaccard_distance,
    tanimoto,
    tanimoto_sets,
)
from .partition import GroundTruthSet, Segmentation, lce, local_error, pri

__all__ = [
    "PointSet",
    "ValueSeries",
    "boundary_mae",
    "boundary_points",
    "hausdorff",
    "mae",
    "mask_hausdorff",
    "pixel_mae",
    "AttributeCounts",
    "attribute_counts",
    "binary_jaccard",
    "binary_jaccard_distance",
    "cosine_angle",
    "jaccard",
    "jaccard_distance",
    "tanimoto",
    "tanimoto_sets",
    "GroundTruthSet",
    "Segmentation",
    "lce",
    "local_error",
    "pri",
]
