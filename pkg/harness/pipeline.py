"""Single-image suppression pipeline."""

import logging
from pathlib import Path
from typing import Any, Callable, NamedTuple, Optional, TypeVar, Union

import numpy as np

from core.config import SuppressionConfig
from core.errors import PectoralError, StageError
from imaging.pgm import load_pgm
from imaging.preprocess import breast_region, canonicalize, canonicalize_mask, detect_orientation, smooth
from imaging.types import BinaryMask, GrayImage, Orientation
from segmentation.hybrid import MethodId, run_method

logger = logging.getLogger(__name__)

T = TypeVar("T")


class Suppression(NamedTuple):
    image: GrayImage
    mask: BinaryMask


class PreparedImage(NamedTuple):
    """Canonical-pose image and breast mask, ready for any method."""

    image: GrayImage
    breast: BinaryMask
    orientation: Orientation


def _stage(name: str, fn: Callable[..., T], *args: Any) -> T:
    try:
        return fn(*args)
    except (PectoralError, ValueError) as e:
        raise StageError(str(e), name, cause=e) from e


def load_image(path: Union[str, Path]) -> GrayImage:
    """Read a PGM file; decode and read failures are tagged with the decode stage."""
    try:
        return load_pgm(path)
    except (PectoralError, OSError) as e:
        raise StageError(f"{path}: {e}", "decode", cause=e) from e


def prepare(img: GrayImage) -> PreparedImage:
    """Smooth, find the breast, orient, and mirror into canonical pose."""
    smoothed = _stage("smooth", smooth, img)
    breast = _stage("breast_region", breast_region, smoothed)
    orientation = _stage("orientation", detect_orientation, breast)
    logger.debug("orientation=%s breast=%d px", orientation.value, int(breast.sum()))
    return PreparedImage(
        canonicalize(smoothed, orientation),
        canonicalize_mask(breast, orientation),
        orientation,
    )


def segment(
    prepared: PreparedImage,
    method: Union[MethodId, str],
    config: Optional[SuppressionConfig] = None,
) -> BinaryMask:
    """Pectoral mask of one method, mapped back to the original orientation."""
    mask = _stage("segment", run_method, MethodId(method), prepared.image, prepared.breast, config)
    # mirroring is its own inverse
    return canonicalize_mask(mask, prepared.orientation)


def apply_mask(img: GrayImage, mask: BinaryMask) -> GrayImage:
    """Zero the pectoral pixels, leave every other pixel untouched."""
    return img.with_pixels(np.where(mask, 0, img.pixels))


def suppress(
    img: GrayImage,
    method: Union[MethodId, str],
    config: Optional[SuppressionConfig] = None,
) -> Suppression:
    """Remove the pectoral muscle from a mammogram with the given method."""
    mask = segment(prepare(img), method, config)
    return Suppression(apply_mask(img, mask), mask)
