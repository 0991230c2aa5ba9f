"""Tests for boundary tracing, line fitting, rasterization and the line method."""

import numpy as np
import pytest

from core.errors import DegenerateSegment, EmptyMask, TooFewPoints
from imaging.types import GrayImage, RoiWindow
from metrics.overlap import jaccard
from segmentation.line import (
    BoundaryTrace,
    LineSegment,
    clip_segment,
    fit_line,
    half_plane_mask,
    keep_chest_wall_runs,
    line_pectoral,
    rasterize_line,
    trace_boundary,
)


def test_trace_of_square():
    mask = np.zeros((8, 8), dtype=bool)
    mask[:4, :4] = True
    assert trace_boundary(mask).points == tuple((r, 3) for r in range(4))


def test_trace_of_single_pixel():
    mask = np.zeros((6, 8), dtype=bool)
    mask[3, 5] = True
    assert trace_boundary(mask).points == ((3, 5),)


def test_trace_matches_row_scan(rng):
    mask = rng.random((15, 12)) < 0.3
    mask[0, 0] = True
    expected = []
    for r in range(mask.shape[0]):
        cols = [c for c in range(mask.shape[1]) if mask[r, c]]
        if cols:
            expected.append((r, max(cols)))
    assert list(trace_boundary(mask).points) == expected


def test_trace_of_empty_mask():
    with pytest.raises(EmptyMask):
        trace_boundary(np.zeros((3, 3), dtype=bool))


def test_trace_rows_must_increase():
    with pytest.raises(ValueError):
        BoundaryTrace(((2, 1), (2, 3)))


def test_fit_collinear_points():
    seg = fit_line(BoundaryTrace(((0, 10), (1, 9), (2, 8))))
    assert seg.p0 == (0.0, 10.0)
    assert seg.p1 == (2.0, 8.0)
    assert seg.residual == 0.0


def test_fit_matches_normal_equations(rng):
    rows = np.arange(0, 40)
    cols = np.rint(20 - 0.5 * rows + rng.normal(0, 1.5, rows.size)).astype(int)
    seg = fit_line(BoundaryTrace(tuple(zip(rows.tolist(), cols.tolist()))))
    slope, intercept = np.polyfit(rows, cols, 1)
    fitted_slope = (seg.p1[1] - seg.p0[1]) / (seg.p1[0] - seg.p0[0])
    assert fitted_slope == pytest.approx(slope, abs=1e-6)
    assert seg.p0[1] == pytest.approx(intercept, abs=1e-6)
    assert seg.residual > 0


def test_fit_needs_two_points():
    with pytest.raises(TooFewPoints):
        fit_line(BoundaryTrace(((4, 4),)))


def test_segment_endpoints_must_differ():
    with pytest.raises(ValueError):
        LineSegment((1.0, 1.0), (1.0, 1.0))


def test_rasterize_diagonal_and_horizontal():
    assert rasterize_line(LineSegment((0, 0), (3, 3)), 10, 10) == [(0, 0), (1, 1), (2, 2), (3, 3)]
    assert rasterize_line(LineSegment((0, 0), (0, 4)), 10, 10) == [(0, c) for c in range(5)]


def test_rasterize_random_segments_are_chains(rng):
    for _ in range(200):
        r0, c0, r1, c1 = (int(v) for v in rng.integers(0, 50, size=4))
        if (r0, c0) == (r1, c1):
            continue
        chain = rasterize_line(LineSegment((r0, c0), (r1, c1)), 50, 50)
        assert chain[0] == (r0, c0)
        assert chain[-1] == (r1, c1)
        assert len(chain) == max(abs(r1 - r0), abs(c1 - c0)) + 1
        for (ra, ca), (rb, cb) in zip(chain, chain[1:]):
            assert max(abs(ra - rb), abs(ca - cb)) == 1


def test_rasterize_clips_to_raster():
    chain = rasterize_line(LineSegment((-5.0, 2.0), (5.0, 2.0)), 10, 10)
    assert chain[0] == (0, 2)
    assert chain[-1] == (5, 2)


def test_rasterize_fully_outside():
    with pytest.raises(DegenerateSegment):
        rasterize_line(LineSegment((0.0, -5.0), (10.0, -5.0)), 10, 10)
    with pytest.raises(DegenerateSegment):
        clip_segment((20.0, 20.0), (30.0, 25.0), 9, 9)


def test_half_plane_for_vertical_boundary():
    breast = np.ones((12, 12), dtype=bool)
    seg = LineSegment((0.0, 3.0), (5.0, 3.0))
    mask = half_plane_mask(seg, breast, RoiWindow(0, 6, 0, 6))
    expected = np.zeros((12, 12), dtype=bool)
    expected[:6, :4] = True
    assert np.array_equal(mask, expected)


def test_half_plane_left_of_breast_is_empty():
    breast = np.ones((10, 10), dtype=bool)
    mask = half_plane_mask(LineSegment((0.0, -5.0), (9.0, -5.0)), breast)
    assert not mask.any()


def test_half_plane_is_row_convex(rng):
    breast = np.ones((30, 30), dtype=bool)
    breast[10:13, 2] = False  # notch near the chest wall
    for _ in range(20):
        r0, r1 = 0.0, float(rng.uniform(5, 29))
        seg = LineSegment((r0, float(rng.uniform(5, 29))), (r1, float(rng.uniform(-5, 10))))
        mask = half_plane_mask(seg, breast)
        for row in mask:
            cols = np.flatnonzero(row)
            if cols.size:
                assert cols[0] == 0
                assert cols[-1] - cols[0] + 1 == cols.size


def test_keep_chest_wall_runs():
    breast = np.ones((2, 8), dtype=bool)
    breast[1, :2] = False
    mask = np.array([[1, 1, 0, 1, 1, 0, 0, 0], [0, 0, 1, 1, 0, 1, 0, 0]], dtype=bool)
    kept = keep_chest_wall_runs(mask, breast)
    assert kept[0].tolist() == [True, True] + [False] * 6
    assert kept[1].tolist() == [False, False, True, True] + [False] * 4


def test_line_pectoral_vertical_edge():
    pixels = np.full((40, 40), 100, dtype=np.uint8)
    pixels[:, :8] = 200
    breast = np.ones((40, 40), dtype=bool)
    mask = line_pectoral(GrayImage(pixels, 255), breast)
    expected = np.zeros((40, 40), dtype=bool)
    expected[:20, :8] = True
    assert np.array_equal(mask, expected)


def test_line_pectoral_on_phantom(left_phantom):
    mask = line_pectoral(left_phantom.image, left_phantom.breast)
    assert jaccard(mask, left_phantom.pectoral) >= 0.85
