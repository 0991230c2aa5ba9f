"""Fuzzy pectoral segmentation: S-function fuzzification, INT intensification, threshold defuzzification."""

import logging
from typing import Any, Mapping, Optional

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from core.errors import DegenerateHistogram
from imaging.preprocess import extract_roi
from imaging.types import BinaryMask, GrayImage, RoiWindow

from .labeling import corner_component

logger = logging.getLogger(__name__)

# Per-pixel membership in the bright (pectoral) class, values in [0, 1].
MembershipMap = npt.NDArray[np.float64]


class FuzzyParams(BaseModel):
    """Membership and defuzzification parameters."""

    model_config = ConfigDict(frozen=True)

    crossover: float
    bandwidth: float = Field(gt=0)
    int_exponent: float = Field(default=2.0, ge=1)
    defuzz_threshold: float = Field(default=0.5, gt=0, lt=1)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "FuzzyParams":
        """Validated copy with the given (non-None) fields replaced."""
        update = {key: value for key, value in overrides.items() if value is not None}
        return FuzzyParams.model_validate({**self.model_dump(), **update})


def default_params(roi: GrayImage) -> FuzzyParams:
    """Percentile-driven parameters for a region: crossover at p75, bandwidth p95 - p55."""
    values = roi.pixels.ravel()
    if np.unique(values).size < 2:
        raise DegenerateHistogram("fuzzy defaults need at least two distinct intensities")
    p55, p75, p95 = np.percentile(values, [55, 75, 95])
    return FuzzyParams(crossover=float(p75), bandwidth=max(1.0, float(p95 - p55)))


def resolve_params(roi: GrayImage, overrides: Optional[Mapping[str, Any]] = None) -> FuzzyParams:
    """Defaults from the region, unless crossover and bandwidth are both supplied."""
    overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
    if "crossover" in overrides and "bandwidth" in overrides:
        return FuzzyParams.model_validate(overrides)
    return default_params(roi).with_overrides(overrides)


def membership(values: npt.ArrayLike, p: FuzzyParams) -> MembershipMap:
    a = p.crossover - p.bandwidth
    c = p.crossover + p.bandwidth
    v = np.asarray(values, dtype=np.float64)
    span = c - a
    rising = 2.0 * ((v - a) / span) ** 2
    falling = 1.0 - 2.0 * ((v - c) / span) ** 2
    mu = np.where(v <= p.crossover, rising, falling)
    mu = np.where(v <= a, 0.0, mu)
    return np.where(v >= c, 1.0, mu)


def fuzzify(img: GrayImage, p: FuzzyParams) -> MembershipMap:
    """S-shaped membership of every pixel; 0.5 at the crossover."""
    return membership(img.pixels, p)


def intensify(m: MembershipMap, e: float) -> MembershipMap:
    """Contrast intensification; fixes 0, 0.5 and 1 and pushes the rest away from 0.5."""
    if e < 1:
        raise ValueError(f"intensification exponent must be >= 1, got {e}")
    m = np.asarray(m, dtype=np.float64)
    gain = 2.0 ** (e - 1.0)
    low = gain * m**e
    high = 1.0 - gain * (1.0 - m) ** e
    return np.clip(np.where(m <= 0.5, low, high), 0.0, 1.0)


def defuzzify(m: MembershipMap, thr: float) -> BinaryMask:
    return np.asarray(m) >= thr


def fuzzy_window_mask(img: GrayImage, window: RoiWindow, p: FuzzyParams) -> BinaryMask:
    """Run fuzzify, intensify and defuzzify inside a window; false elsewhere."""
    rows, cols = window.slices
    mu = intensify(membership(img.pixels[rows, cols], p), p.int_exponent)
    mask = np.zeros(img.shape, dtype=bool)
    mask[rows, cols] = defuzzify(mu, p.defuzz_threshold)
    return mask


def fuzzy_pectoral(
    img: GrayImage,
    breast: BinaryMask,
    overrides: Optional[Mapping[str, Any]] = None,
) -> BinaryMask:
    """Fuzzy pectoral mask over the ROI, reduced to the component at the breast corner."""
    roi = extract_roi(img)
    rows, cols = roi.slices
    params = resolve_params(img.with_pixels(img.pixels[rows, cols]), overrides)
    logger.debug("fuzzy params: %s", params.model_dump())
    mask = fuzzy_window_mask(img, roi, params) & breast
    return corner_component(mask, breast, roi) & breast
