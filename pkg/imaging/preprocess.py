"""Preprocessing chain: smoothing, breast extraction, orientation and ROI."""

import logging

import numpy as np
import numpy.typing as npt
from scipy import ndimage

from core.errors import DegenerateHistogram, EmptyForeground, EmptyMask

from .types import BinaryMask, GrayImage, Orientation, RoiWindow

logger = logging.getLogger(__name__)


def smooth(img: GrayImage) -> GrayImage:
    """3x3 median filter; border pixels see a replicated-edge neighbourhood."""
    return img.with_pixels(ndimage.median_filter(img.pixels, size=3, mode="nearest"))


def otsu_from_values(values: npt.ArrayLike, maxval: int) -> int:
    """
    Otsu threshold over a set of intensities.

    Returns the t maximizing between-class variance of {v <= t} vs {v > t};
    the smallest such t wins ties.
    """
    samples = np.asarray(values, dtype=np.int64).ravel()
    hist = np.bincount(samples, minlength=maxval + 1).astype(np.int64)
    if np.count_nonzero(hist) < 2:
        raise DegenerateHistogram("histogram has a single distinct intensity")

    levels = np.arange(hist.size, dtype=np.int64)
    w0 = np.cumsum(hist)
    s0 = np.cumsum(hist * levels)
    total, total_sum = int(w0[-1]), int(s0[-1])
    w1 = total - w0

    valid = (w0 > 0) & (w1 > 0)
    # sigma_b^2 * N^2 = (s0*N - S*w0)^2 / (w0*w1)
    diff = (s0 * total - total_sum * w0).astype(np.float64)
    denom = np.where(valid, w0 * w1, 1).astype(np.float64)
    variance = np.where(valid, diff**2 / denom, -1.0)
    return int(np.argmax(variance))


def otsu_threshold(img: GrayImage) -> int:
    """Global Otsu threshold of an image."""
    return otsu_from_values(img.pixels, img.maxval)


def breast_region(img: GrayImage) -> BinaryMask:
    """Largest 4-connected bright component with its interior holes filled."""
    from segmentation.labeling import Connectivity, component_sizes, label_components

    try:
        threshold = otsu_threshold(img)
    except DegenerateHistogram as e:
        raise EmptyForeground("image holds a single intensity, no foreground to separate") from e

    foreground = img.pixels > threshold
    if not foreground.any():
        raise EmptyForeground(f"no pixel above threshold {threshold}")

    label_map = label_components(foreground, Connectivity.FOUR)
    sizes = component_sizes(label_map)
    # max() keeps the first (lowest) label among equal sizes
    largest, area = max(sizes, key=lambda item: item[1])
    logger.debug(
        "breast region: threshold=%d components=%d largest=%d px",
        threshold,
        label_map.count,
        area,
    )
    return ndimage.binary_fill_holes(label_map.labels == largest)


def detect_orientation(breast: BinaryMask) -> Orientation:
    """Left when the left half holds at least as much breast as the right half."""
    if not breast.any():
        raise EmptyMask("cannot orient an empty breast mask")
    half = breast.shape[1] // 2
    left = int(np.count_nonzero(breast[:, :half]))
    right = int(np.count_nonzero(breast[:, breast.shape[1] - half :]))
    return Orientation.LEFT if left >= right else Orientation.RIGHT


def mirror(array: np.ndarray) -> np.ndarray:
    """Flip columns."""
    return np.ascontiguousarray(array[:, ::-1])


def canonicalize(img: GrayImage, orientation: Orientation) -> GrayImage:
    """Mirror a Right image so its pectoral corner sits top-left."""
    if orientation is Orientation.RIGHT:
        return img.with_pixels(mirror(img.pixels))
    return img


def canonicalize_mask(mask: BinaryMask, orientation: Orientation) -> BinaryMask:
    return mirror(mask) if orientation is Orientation.RIGHT else mask


def extract_roi(img: GrayImage) -> RoiWindow:
    """Top-left quadrant of a canonical image, rounded up."""
    return RoiWindow(0, (img.height + 1) // 2, 0, (img.width + 1) // 2)
