# Raster types, PGM codec and preprocessing
from .pgm import (
    image_to_mask,
    load_mask,
    load_pgm,
    mask_to_image,
    read_pgm,
    save_mask,
    save_pgm,
    write_pgm,
)
from .preprocess import (
    breast_region,
    canonicalize,
    canonicalize_mask,
    detect_orientation,
    extract_roi,
    mirror,
    otsu_from_values,
    otsu_threshold,
    smooth,
)
from .types import BinaryMask, GrayImage, Orientation, RoiWindow

__all__ = [
    "image_to_mask",
    "load_mask",
    "load_pgm",
    "mask_to_image",
    "read_pgm",
    "save_mask",
    "save_pgm",
    "write_pgm",
    "breast_region",
    "canonicalize",
    "canonicalize_mask",
    "detect_orientation",
    "extract_roi",
    "mirror",
    "otsu_from_values",
    "otsu_threshold",
    "smooth",
    "BinaryMask",
    "GrayImage",
    "Orientation",
    "RoiWindow",
]
