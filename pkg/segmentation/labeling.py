"""Two-pass connected-component labeling and the CCL pectoral method."""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from core.config import DEFAULT_DELTA_FRAC
from core.errors import EmptyMask, NoCornerComponent
from imaging.preprocess import extract_roi, otsu_from_values
from imaging.types import BinaryMask, GrayImage, RoiWindow

logger = logging.getLogger(__name__)


class Connectivity(int, Enum):
    """Neighbourhood used to decide whether two foreground pixels touch."""

    FOUR = 4
    EIGHT = 8


@dataclass(frozen=True)
class LabelMap:
    """Dense component labels: 0 is background, components are 1..count."""

    labels: npt.NDArray[np.int32]
    count: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.labels.shape


class UnionFind:
    """Equivalence table over provisional labels; each root is its class's lowest label."""

    def __init__(self) -> None:
        self.parent: list[int] = []

    def make(self) -> int:
        label = len(self.parent)
        self.parent.append(label)
        return label

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        # path compression
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry


def _row_runs(mask: BinaryMask) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Horizontal foreground runs in raster order as (rows, starts, exclusive ends)."""
    height, width = mask.shape
    padded = np.zeros((height, width + 2), dtype=np.int8)
    padded[:, 1:-1] = mask
    edges = np.diff(padded, axis=1)
    rows, starts = np.nonzero(edges == 1)
    _, ends = np.nonzero(edges == -1)
    return rows, starts, ends


def label_components(mask: BinaryMask, conn: Connectivity = Connectivity.EIGHT) -> LabelMap:
    """
    Label the connected components of a mask.

    Scans the raster twice. The first pass walks the foreground row by row
    (one horizontal run at a time), gives each run the smallest label among
    its neighbours in the previous row, or a fresh label, and records label
    equivalences in a union-find table. The second pass relabels every run
    with its lowest equivalent label, compacted to 1..count in order of first
    appearance.
    """
    mask = np.asarray(mask, dtype=bool)
    height, width = mask.shape
    rows, starts_arr, ends_arr = _row_runs(mask)
    if rows.size == 0:
        return LabelMap(np.zeros((height, width), dtype=np.int32), 0)

    bounds = np.searchsorted(rows, np.arange(height + 1)).tolist()
    starts = starts_arr.tolist()
    ends = ends_arr.tolist()
    slack = 1 if conn is Connectivity.EIGHT else 0

    table = UnionFind()
    provisional = [0] * len(starts)
    for r in range(height):
        lo, hi = bounds[r], bounds[r + 1]
        if lo == hi:
            continue
        prev_lo, prev_hi = (bounds[r - 1], bounds[r]) if r > 0 else (0, 0)
        i = prev_lo
        for b in range(lo, hi):
            start, end = starts[b], ends[b]
            while i < prev_hi and ends[i] + slack <= start:
                i += 1
            neighbours = []
            j = i
            while j < prev_hi and starts[j] < end + slack:
                neighbours.append(provisional[j])
                j += 1
            if not neighbours:
                provisional[b] = table.make()
                continue
            smallest = min(neighbours)
            provisional[b] = smallest
            for other in neighbours:
                table.union(smallest, other)

    roots = np.fromiter((table.find(label) for label in provisional), dtype=np.int64, count=len(provisional))
    _, dense = np.unique(roots, return_inverse=True)
    dense = dense.astype(np.int32) + 1

    lengths = ends_arr - starts_arr
    offsets = rows * width + starts_arr
    run_begin = np.cumsum(lengths) - lengths
    flat = np.arange(int(lengths.sum())) + np.repeat(offsets - run_begin, lengths)
    labels = np.zeros(height * width, dtype=np.int32)
    labels[flat] = np.repeat(dense, lengths)
    return LabelMap(labels.reshape(height, width), int(dense.max()))


def component_sizes(label_map: LabelMap) -> list[tuple[int, int]]:
    """Pixel count of each component, in label order."""
    counts = np.bincount(label_map.labels.ravel(), minlength=label_map.count + 1)
    return [(label, int(counts[label])) for label in range(1, label_map.count + 1)]


def breast_corner(breast: BinaryMask) -> tuple[int, int]:
    """Breast pixel closest to the image origin; the smaller row wins ties."""
    rows, cols = np.nonzero(breast)
    if rows.size == 0:
        raise EmptyMask("breast mask is empty")
    distances = rows.astype(np.int64) ** 2 + cols.astype(np.int64) ** 2
    k = int(np.argmin(distances))
    return int(rows[k]), int(cols[k])


def corner_component(
    candidate: BinaryMask,
    breast: BinaryMask,
    roi: RoiWindow,
    conn: Connectivity = Connectivity.EIGHT,
) -> BinaryMask:
    """Keep the component of candidate (inside the ROI) that touches the breast corner."""
    corner_row, corner_col = breast_corner(breast)
    if not roi.contains(corner_row, corner_col):
        raise NoCornerComponent(f"breast corner ({corner_row}, {corner_col}) lies outside the ROI")

    inside = candidate & roi.to_mask(*candidate.shape)
    label_map = label_components(inside, conn)
    if label_map.count == 0:
        raise NoCornerComponent("no foreground component inside the ROI")

    rows, cols = np.nonzero(label_map.labels)
    distances = (rows - corner_row) ** 2 + (cols - corner_col) ** 2
    k = int(np.argmin(distances))
    tolerance = max(2.0, 0.1 * math.hypot(*roi.shape))
    if distances[k] > tolerance**2:
        raise NoCornerComponent(
            f"nearest component lies {math.sqrt(distances[k]):.1f}px from the corner"
        )
    return label_map.labels == label_map.labels[rows[k], cols[k]]


def threshold_corner_component(img: GrayImage, breast: BinaryMask) -> BinaryMask:
    """Otsu-threshold the ROI and keep the bright component at the breast corner."""
    roi = extract_roi(img)
    rows, cols = roi.slices
    window = img.pixels[rows, cols]
    threshold = otsu_from_values(window, img.maxval)
    bright = np.zeros(img.shape, dtype=bool)
    bright[rows, cols] = window > threshold
    return corner_component(bright & breast, breast, roi)


def cut_at_discontinuity(
    img: GrayImage,
    component: BinaryMask,
    breast: BinaryMask,
    roi: RoiWindow,
    delta: float,
) -> BinaryMask:
    """
    March rightward along each row from the chest wall and drop the component
    from the first column whose intensity falls more than delta below the
    running mean of the row so far.
    """
    out = component.copy()
    pixels = img.pixels.astype(np.float64)
    for r in np.flatnonzero(component.any(axis=1)):
        start = int(np.argmax(breast[r]))
        row = pixels[r, start : roi.col_end]
        if row.size < 2:
            continue
        running_mean = np.cumsum(row) / np.arange(1, row.size + 1)
        drops = np.flatnonzero(row[1:] < running_mean[:-1] - delta)
        if drops.size:
            out[r, start + 1 + int(drops[0]) :] = False
    return out


def ccl_pectoral(
    img: GrayImage,
    breast: BinaryMask,
    delta_frac: float = DEFAULT_DELTA_FRAC,
) -> BinaryMask:
    """
    CCL pectoral segmentation of a canonical (pectoral top-left) image.

    The Otsu-thresholded ROI is labeled with Eight-connectivity, the component
    at the breast corner is kept, and each of its rows is cut at the first
    intensity discontinuity. The result is clipped to the breast and the ROI.
    """
    roi = extract_roi(img)
    component = threshold_corner_component(img, breast)
    delta = delta_frac * img.maxval
    cut = cut_at_discontinuity(img, component, breast, roi, delta)
    result = corner_component(cut, breast, roi) & breast
    logger.debug(
        "ccl: component=%d px, after cut=%d px",
        int(component.sum()),
        int(result.sum()),
    )
    return result
