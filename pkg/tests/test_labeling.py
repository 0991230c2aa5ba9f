"""Tests for connected-component labeling and the CCL pectoral method."""

from collections import deque

import numpy as np
import pytest

from core.errors import DegenerateHistogram, EmptyMask, NoCornerComponent
from imaging.preprocess import extract_roi
from imaging.types import GrayImage, RoiWindow
from metrics.overlap import jaccard
from segmentation.labeling import (
    Connectivity,
    UnionFind,
    breast_corner,
    ccl_pectoral,
    component_sizes,
    corner_component,
    cut_at_discontinuity,
    label_components,
    threshold_corner_component,
)

OFFSETS = {
    Connectivity.FOUR: [(-1, 0), (1, 0), (0, -1), (0, 1)],
    Connectivity.EIGHT: [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if (dr, dc) != (0, 0)],
}


def flood_fill_labels(mask, conn):
    """Breadth-first flood fill, components numbered in raster order of first pixel."""
    h, w = mask.shape
    grid = mask.tolist()
    labels = [[0] * w for _ in range(h)]
    count = 0
    for r in range(h):
        for c in range(w):
            if not grid[r][c] or labels[r][c]:
                continue
            count += 1
            labels[r][c] = count
            queue = deque([(r, c)])
            while queue:
                y, x = queue.popleft()
                for dy, dx in OFFSETS[conn]:
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and grid[ny][nx] and not labels[ny][nx]:
                        labels[ny][nx] = count
                        queue.append((ny, nx))
    return np.array(labels, dtype=np.int32), count


@pytest.mark.parametrize("conn", [Connectivity.FOUR, Connectivity.EIGHT])
def test_labels_match_flood_fill(rng, conn):
    for _ in range(200):
        mask = rng.random((64, 64)) < rng.uniform(0.2, 0.7)
        label_map = label_components(mask, conn)
        expected, count = flood_fill_labels(mask, conn)
        assert label_map.count == count
        assert np.array_equal(label_map.labels, expected)


def test_empty_mask_has_no_components():
    label_map = label_components(np.zeros((5, 6), dtype=bool))
    assert label_map.count == 0
    assert label_map.shape == (5, 6)
    assert not label_map.labels.any()


def test_diagonal_pixels_depend_on_connectivity():
    mask = np.eye(4, dtype=bool)
    assert label_components(mask, Connectivity.EIGHT).count == 1
    assert label_components(mask, Connectivity.FOUR).count == 4


def test_u_shape_merges_into_one_label():
    mask = np.array(
        [
            [1, 0, 1],
            [1, 0, 1],
            [1, 1, 1],
        ],
        dtype=bool,
    )
    label_map = label_components(mask, Connectivity.FOUR)
    assert label_map.count == 1
    assert set(np.unique(label_map.labels[mask])) == {1}


def test_component_sizes():
    mask = np.array([[1, 1, 0, 1], [0, 0, 0, 1], [1, 0, 0, 0]], dtype=bool)
    label_map = label_components(mask, Connectivity.FOUR)
    assert component_sizes(label_map) == [(1, 2), (2, 2), (3, 1)]


def test_union_find_keeps_lowest_root():
    table = UnionFind()
    for _ in range(5):
        table.make()
    table.union(4, 3)
    table.union(3, 1)
    table.union(2, 4)
    assert {table.find(x) for x in (1, 2, 3, 4)} == {1}
    assert table.find(0) == 0


def test_breast_corner_prefers_smaller_row():
    breast = np.zeros((5, 5), dtype=bool)
    breast[1, 2] = breast[2, 1] = True
    assert breast_corner(breast) == (1, 2)
    with pytest.raises(EmptyMask):
        breast_corner(np.zeros((2, 2), dtype=bool))


def test_corner_component_picks_region_at_corner():
    candidate = np.zeros((10, 10), dtype=bool)
    candidate[0:3, 0:3] = True
    candidate[5:8, 5:8] = True
    breast = np.ones((10, 10), dtype=bool)
    kept = corner_component(candidate, breast, RoiWindow(0, 10, 0, 10))
    assert kept.sum() == 9
    assert kept[0, 0] and not kept[6, 6]


def test_corner_outside_roi():
    breast = np.zeros((20, 20), dtype=bool)
    breast[12:, 12:] = True
    with pytest.raises(NoCornerComponent):
        corner_component(breast.copy(), breast, RoiWindow(0, 10, 0, 10))


def test_ccl_recovers_phantom_triangle(left_phantom):
    mask = ccl_pectoral(left_phantom.image, left_phantom.breast)
    assert jaccard(mask, left_phantom.pectoral) >= 0.95
    assert not (mask & ~left_phantom.breast).any()
    roi = extract_roi(left_phantom.image).to_mask(*mask.shape)
    assert not (mask & ~roi).any()
    assert label_components(mask, Connectivity.EIGHT).count == 1


def test_ccl_cuts_at_intensity_drop():
    # bright band (200) then a dimmer band (150) above the Otsu threshold
    pixels = np.full((20, 20), 40, dtype=np.uint8)
    pixels[:, :6] = 200
    pixels[:, 6:9] = 150
    img = GrayImage(pixels, 255)
    breast = np.ones((20, 20), dtype=bool)
    component = threshold_corner_component(img, breast)
    assert component[:10, :9].all()
    mask = ccl_pectoral(img, breast, delta_frac=0.10)
    expected = np.zeros((20, 20), dtype=bool)
    expected[:10, :6] = True
    assert np.array_equal(mask, expected)

    cut = cut_at_discontinuity(img, component, breast, extract_roi(img), delta=255.0)
    assert np.array_equal(cut, component)


def test_ccl_vertical_gradient_is_not_cut():
    # every row is constant, so no row has a discontinuity
    pixels = np.repeat(np.linspace(250, 10, 20).astype(np.uint8)[:, None], 20, axis=1)
    img = GrayImage(pixels, 255)
    breast = np.ones((20, 20), dtype=bool)
    mask = ccl_pectoral(img, breast)
    assert np.array_equal(mask, threshold_corner_component(img, breast))
    assert mask[0, :10].all()


def test_ccl_without_corner_component():
    pixels = np.full((20, 20), 100, dtype=np.uint8)
    pixels[:10, :10] = 100
    pixels[7:10, 7:10] = 200
    breast = np.ones((20, 20), dtype=bool)
    with pytest.raises(NoCornerComponent):
        ccl_pectoral(GrayImage(pixels, 255), breast)


def test_ccl_breast_far_from_roi():
    pixels = np.full((20, 20), 30, dtype=np.uint8)
    pixels[:5, :5] = 220
    breast = np.zeros((20, 20), dtype=bool)
    breast[12:, 12:] = True
    with pytest.raises(NoCornerComponent):
        ccl_pectoral(GrayImage(pixels, 255), breast)


def test_ccl_uniform_roi():
    with pytest.raises(DegenerateHistogram):
        ccl_pectoral(GrayImage.from_array(np.full((10, 10), 80), 255), np.ones((10, 10), dtype=bool))
