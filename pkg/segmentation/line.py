"""Straight-line pectoral boundary: trace, least-squares fit, rasterize, half-plane mask."""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from core.errors import DegenerateSegment, EmptyMask, TooFewPoints
from imaging.preprocess import extract_roi
from imaging.types import BinaryMask, GrayImage, RoiWindow

from .labeling import threshold_corner_component

logger = logging.getLogger(__name__)

Point = tuple[float, float]
Pixel = tuple[int, int]

# pixels lying on the fitted line count as pectoral despite float roundoff
ON_LINE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class LineSegment:
    """Segment between two (row, col) points; residual is the fit's squared error."""

    p0: Point
    p1: Point
    residual: float = 0.0

    def __post_init__(self) -> None:
        if tuple(self.p0) == tuple(self.p1):
            raise ValueError(f"segment endpoints coincide at {self.p0}")

    def column_at(self, row: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Column of the infinite extension of the segment at the given row(s)."""
        (r0, c0), (r1, c1) = self.p0, self.p1
        if r0 == r1:
            raise DegenerateSegment("horizontal segment has no column-on-row form")
        return c0 + (row - r0) * (c1 - c0) / (r1 - r0)


@dataclass(frozen=True)
class BoundaryTrace:
    """One (row, rightmost col) point per row holding candidate pixels."""

    points: tuple[Pixel, ...]

    def __post_init__(self) -> None:
        rows = [r for r, _ in self.points]
        if any(b <= a for a, b in zip(rows, rows[1:])):
            raise ValueError("trace rows must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points)


def trace_boundary(candidate: BinaryMask) -> BoundaryTrace:
    if not candidate.any():
        raise EmptyMask("cannot trace an empty candidate")
    width = candidate.shape[1]
    rows = np.flatnonzero(candidate.any(axis=1))
    # rightmost true column = width - 1 - first true column of the mirrored row
    rightmost = width - 1 - np.argmax(candidate[rows, ::-1], axis=1)
    return BoundaryTrace(tuple(zip(rows.tolist(), rightmost.tolist())))


def fit_line(trace: BoundaryTrace) -> LineSegment:
    """
    Least-squares fit of column as a function of row.

    Normal-equation sums are accumulated as exact integers so collinear traces
    come back with zero residual and endpoints on the trace.
    """
    if len(trace) < 2:
        raise TooFewPoints(f"need at least 2 boundary points, got {len(trace)}")

    n = len(trace)
    sx = sum(r for r, _ in trace.points)
    sy = sum(c for _, c in trace.points)
    sxx = sum(r * r for r, _ in trace.points)
    sxy = sum(r * c for r, c in trace.points)
    denom = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / denom
    intercept = (sxx * sy - sx * sxy) / denom

    residual = float(sum((c - (slope * r + intercept)) ** 2 for r, c in trace.points))
    first_row = trace.points[0][0]
    last_row = trace.points[-1][0]
    return LineSegment(
        (float(first_row), slope * first_row + intercept),
        (float(last_row), slope * last_row + intercept),
        residual,
    )


def clip_segment(p0: Point, p1: Point, max_row: float, max_col: float) -> tuple[Point, Point]:
    """Liang-Barsky clip of p0-p1 to the box [0, max_row] x [0, max_col]."""
    (r0, c0), (r1, c1) = p0, p1
    dr, dc = r1 - r0, c1 - c0
    t_enter, t_exit = 0.0, 1.0
    for p, q in ((-dr, r0), (dr, max_row - r0), (-dc, c0), (dc, max_col - c0)):
        if p == 0:
            if q < 0:
                raise DegenerateSegment("segment runs parallel to and outside the window")
            continue
        t = q / p
        if p < 0:
            t_enter = max(t_enter, t)
        else:
            t_exit = min(t_exit, t)
    if t_enter > t_exit:
        raise DegenerateSegment("segment lies outside the window")
    return (
        (r0 + t_enter * dr, c0 + t_enter * dc),
        (r0 + t_exit * dr, c0 + t_exit * dc),
    )


def _bresenham(start: Pixel, end: Pixel) -> list[Pixel]:
    """Integer line from start to end inclusive, any octant."""
    r, c = start
    r1, c1 = end
    dr, dc = abs(r1 - r), abs(c1 - c)
    step_r = 1 if r1 > r else -1
    step_c = 1 if c1 > c else -1
    steep = dr > dc
    if steep:
        dr, dc = dc, dr
    # dc is now the major-axis delta
    error = 2 * dr - dc
    chain = [(r, c)]
    for _ in range(dc):
        if error >= 0:
            if steep:
                c += step_c
            else:
                r += step_r
            error -= 2 * dc
        if steep:
            r += step_r
        else:
            c += step_c
        error += 2 * dr
        chain.append((r, c))
    return chain


def rasterize_line(seg: LineSegment, width: int, height: int) -> list[Pixel]:
    """8-connected pixel chain from p0 to p1, clipped to a width x height raster."""
    p0, p1 = clip_segment(seg.p0, seg.p1, height - 1, width - 1)

    def to_pixel(point: Point) -> Pixel:
        row = min(max(int(round(point[0])), 0), height - 1)
        col = min(max(int(round(point[1])), 0), width - 1)
        return row, col

    return _bresenham(to_pixel(p0), to_pixel(p1))


def keep_chest_wall_runs(mask: BinaryMask, breast: BinaryMask) -> BinaryMask:
    """Per row, keep only the run that starts at the row's first breast column."""
    cols = np.arange(mask.shape[1])[None, :]
    first = np.argmax(breast, axis=1)[:, None]
    gaps = np.cumsum(~mask & (cols >= first), axis=1)
    return mask & (gaps == 0) & breast.any(axis=1)[:, None]


def half_plane_mask(
    seg: LineSegment,
    breast: BinaryMask,
    roi: Optional[RoiWindow] = None,
) -> BinaryMask:
    """
    Breast pixels on the corner side of the line through seg, within the ROI.

    The rasterized line, extended from row 0 to where it leaves the ROI, is
    part of the pectoral side. Each row keeps one run from the chest wall.
    """
    height, width = breast.shape
    roi = roi or RoiWindow(0, height, 0, width)
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]
    mask = cols <= seg.column_at(rows) + ON_LINE_TOLERANCE

    last_row = float(roi.row_end - 1)
    try:
        extended = LineSegment((0.0, float(seg.column_at(0.0))), (last_row, float(seg.column_at(last_row))))
        chain = rasterize_line(extended, roi.col_end, roi.row_end)
    except (DegenerateSegment, ValueError):
        chain = []
    if chain:
        chain_rows, chain_cols = np.array(chain).T
        mask[chain_rows, chain_cols] = True

    mask &= breast & roi.to_mask(height, width)
    return keep_chest_wall_runs(mask, breast)


def line_from_candidate(candidate: BinaryMask, breast: BinaryMask, roi: RoiWindow) -> BinaryMask:
    """Trace a candidate's right edge, fit a line through it and fill the corner side."""
    segment = fit_line(trace_boundary(candidate))
    logger.debug("line fit: p0=%s p1=%s residual=%.3f", segment.p0, segment.p1, segment.residual)
    return half_plane_mask(segment, breast, roi)


def line_pectoral(img: GrayImage, breast: BinaryMask) -> BinaryMask:
    """Straight-line pectoral mask seeded by the thresholded corner component."""
    candidate = threshold_corner_component(img, breast)
    return line_from_candidate(candidate, breast, extract_roi(img))
