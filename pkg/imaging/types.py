"""Raster value types shared across the toolkit."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

# Row-major boolean raster: breast, pectoral or ground-truth region.
BinaryMask = npt.NDArray[np.bool_]

MAX_MAXVAL = 65535


@dataclass(frozen=True)
class GrayImage:
    """A grayscale raster with its intensity ceiling."""

    pixels: npt.NDArray[np.integer]
    maxval: int = 255

    def __post_init__(self) -> None:
        if self.pixels.ndim != 2:
            raise ValueError(f"pixels must be 2-D, got shape {self.pixels.shape}")
        if self.pixels.shape[0] < 1 or self.pixels.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if not 1 <= self.maxval <= MAX_MAXVAL:
            raise ValueError(f"maxval {self.maxval} outside 1..{MAX_MAXVAL}")
        if not np.issubdtype(self.pixels.dtype, np.integer):
            raise ValueError(f"pixels must be integers, got {self.pixels.dtype}")
        if self.pixels.size and (self.pixels.min() < 0 or self.pixels.max() > self.maxval):
            raise ValueError(f"pixel values must lie in 0..{self.maxval}")

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    @classmethod
    def from_array(cls, pixels: npt.ArrayLike, maxval: int = 255) -> "GrayImage":
        """Build an image from any integer array-like, copying the data."""
        dtype = np.uint8 if maxval <= 255 else np.uint16
        return cls(np.array(pixels, dtype=dtype, copy=True), maxval)

    def with_pixels(self, pixels: npt.NDArray[np.integer]) -> "GrayImage":
        return GrayImage(pixels.astype(self.pixels.dtype, copy=False), self.maxval)


class Orientation(str, Enum):
    """Image side adjoining the chest wall, where the pectoral corner sits."""

    LEFT = "left"
    RIGHT = "right"

    def flipped(self) -> "Orientation":
        return Orientation.RIGHT if self is Orientation.LEFT else Orientation.LEFT


@dataclass(frozen=True)
class RoiWindow:
    """Half-open pixel window [row_start, row_end) x [col_start, col_end)."""

    row_start: int
    row_end: int
    col_start: int
    col_end: int

    def __post_init__(self) -> None:
        if not (0 <= self.row_start < self.row_end and 0 <= self.col_start < self.col_end):
            raise ValueError(f"empty or negative window {self}")

    @property
    def slices(self) -> tuple[slice, slice]:
        return slice(self.row_start, self.row_end), slice(self.col_start, self.col_end)

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_end - self.row_start, self.col_end - self.col_start

    def contains(self, row: int, col: int) -> bool:
        return self.row_start <= row < self.row_end and self.col_start <= col < self.col_end

    def fits(self, height: int, width: int) -> bool:
        return self.row_end <= height and self.col_end <= width

    def to_mask(self, height: int, width: int) -> BinaryMask:
        """Boolean raster of the given size that is true inside the window."""
        mask = np.zeros((height, width), dtype=bool)
        mask[self.slices] = True
        return mask
