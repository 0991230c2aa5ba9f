"""Method registry: the three base methods and their pairwise hybrids."""

import logging
from enum import Enum
from typing import Callable, Optional

import numpy as np

from core.config import SuppressionConfig
from imaging.preprocess import extract_roi
from imaging.types import BinaryMask, GrayImage, RoiWindow

from .fuzzy import fuzzy_pectoral, fuzzy_window_mask, resolve_params
from .labeling import ccl_pectoral, corner_component
from .line import line_from_candidate, line_pectoral

logger = logging.getLogger(__name__)


class MethodId(str, Enum):
    """Segmentation method names as accepted on the command line."""

    CCL = "ccl"
    FUZZY = "fuzzy"
    LINE = "line"
    CCL_FUZZY = "ccl+fuzzy"
    CCL_LINE = "ccl+line"
    FUZZY_LINE = "fuzzy+line"

    @property
    def order(self) -> int:
        return list(MethodId).index(self)

    @property
    def file_tag(self) -> str:
        """Method name usable in a file name."""
        return self.value.replace("+", "_")

    @classmethod
    def parse_list(cls, text: str) -> list["MethodId"]:
        """Parse 'all' or a comma-separated list, deduplicated, in enum order."""
        if text.strip().lower() == "all":
            return list(cls)
        chosen = set()
        for token in text.split(","):
            token = token.strip().lower()
            if not token:
                continue
            try:
                chosen.add(cls(token))
            except ValueError:
                valid = ", ".join(m.value for m in cls)
                raise ValueError(f"unknown method {token!r}; expected one of: {valid}, all") from None
        if not chosen:
            raise ValueError("no method selected")
        return sorted(chosen, key=lambda m: m.order)


def bounding_window(mask: BinaryMask) -> RoiWindow:
    """Smallest window holding every true pixel of a nonempty mask."""
    rows = np.flatnonzero(mask.any(axis=1))
    cols = np.flatnonzero(mask.any(axis=0))
    return RoiWindow(int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1)


def ccl_with_fuzzy(img: GrayImage, breast: BinaryMask, config: Optional[SuppressionConfig] = None) -> BinaryMask:
    """CCL localizes the muscle; the fuzzy pipeline re-delineates it inside the CCL bounding window."""
    config = config or SuppressionConfig()
    candidate = ccl_pectoral(img, breast, config.delta_frac)
    window = bounding_window(candidate)
    rows, cols = window.slices
    params = resolve_params(img.with_pixels(img.pixels[rows, cols]), config.fuzzy_overrides())
    mask = fuzzy_window_mask(img, window, params) & breast
    return corner_component(mask, breast, extract_roi(img)) & breast


def ccl_with_line(img: GrayImage, breast: BinaryMask, config: Optional[SuppressionConfig] = None) -> BinaryMask:
    """Straight line fitted to the right edge of the CCL mask."""
    config = config or SuppressionConfig()
    candidate = ccl_pectoral(img, breast, config.delta_frac)
    return line_from_candidate(candidate, breast, extract_roi(img))


def fuzzy_with_line(img: GrayImage, breast: BinaryMask, config: Optional[SuppressionConfig] = None) -> BinaryMask:
    """Straight line fitted to the right edge of the fuzzy mask."""
    config = config or SuppressionConfig()
    candidate = fuzzy_pectoral(img, breast, config.fuzzy_overrides())
    return line_from_candidate(candidate, breast, extract_roi(img))


MethodFn = Callable[[GrayImage, BinaryMask, SuppressionConfig], BinaryMask]

METHODS: dict[MethodId, MethodFn] = {
    MethodId.CCL: lambda img, breast, cfg: ccl_pectoral(img, breast, cfg.delta_frac),
    MethodId.FUZZY: lambda img, breast, cfg: fuzzy_pectoral(img, breast, cfg.fuzzy_overrides()),
    MethodId.LINE: lambda img, breast, cfg: line_pectoral(img, breast),
    MethodId.CCL_FUZZY: ccl_with_fuzzy,
    MethodId.CCL_LINE: ccl_with_line,
    MethodId.FUZZY_LINE: fuzzy_with_line,
}


def run_method(
    method: MethodId,
    img: GrayImage,
    breast: BinaryMask,
    config: Optional[SuppressionConfig] = None,
) -> BinaryMask:
    """Segment the pectoral muscle of a canonical image with the chosen method."""
    mask = METHODS[MethodId(method)](img, breast, config or SuppressionConfig())
    logger.debug("%s: %d pectoral px", MethodId(method).value, int(mask.sum()))
    return mask
