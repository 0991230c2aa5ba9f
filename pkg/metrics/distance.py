"""Distance measures: mean absolute error and Hausdorff distance."""

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import ndimage
from scipy.spatial.distance import directed_hausdorff

from core.errors import EmptySeries, EmptySet, NoOverlappingRows, SizeMismatch
from imaging.types import BinaryMask


@dataclass(frozen=True)
class ValueSeries:
    """Paired predictions and true values."""

    predicted: npt.NDArray[np.float64]
    actual: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        predicted = np.asarray(self.predicted, dtype=np.float64).ravel()
        actual = np.asarray(self.actual, dtype=np.float64).ravel()
        if predicted.size != actual.size:
            raise SizeMismatch(f"series lengths differ: {predicted.size} vs {actual.size}")
        if predicted.size == 0:
            raise EmptySeries("MAE needs at least one value")
        object.__setattr__(self, "predicted", predicted)
        object.__setattr__(self, "actual", actual)

    def __len__(self) -> int:
        return int(self.predicted.size)


@dataclass(frozen=True)
class PointSet:
    """Nonempty set of (row, col) points."""

    points: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.float64)
        if points.size == 0:
            raise EmptySet("point set is empty")
        if points.ndim == 1:
            # bare scalars are 1-D points
            points = points.reshape(-1, 1)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return int(self.points.shape[0])


def mae(v: ValueSeries) -> float:
    return float(np.mean(np.abs(v.predicted - v.actual)))


def _rightmost_columns(mask: BinaryMask) -> tuple[np.ndarray, np.ndarray]:
    """Rows holding foreground and the last foreground column of each."""
    rows_present = mask.any(axis=1)
    rightmost = mask.shape[1] - 1 - np.argmax(mask[:, ::-1], axis=1)
    return rows_present, rightmost


def boundary_mae(pred: BinaryMask, truth: BinaryMask) -> float:
    """Mean per-row distance between the right edges of two masks, over rows both cover."""
    pred = np.asarray(pred, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if pred.shape != truth.shape:
        raise SizeMismatch(f"mask shapes differ: {pred.shape} vs {truth.shape}")
    pred_rows, pred_edge = _rightmost_columns(pred)
    truth_rows, truth_edge = _rightmost_columns(truth)
    common = pred_rows & truth_rows
    if not common.any():
        raise NoOverlappingRows("masks share no foreground row")
    return mae(ValueSeries(pred_edge[common], truth_edge[common]))


def pixel_mae(pred: BinaryMask, truth: BinaryMask) -> float:
    """Share of pixels on which two masks disagree."""
    pred = np.asarray(pred, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if pred.shape != truth.shape:
        raise SizeMismatch(f"mask shapes differ: {pred.shape} vs {truth.shape}")
    return mae(ValueSeries(pred.ravel(), truth.ravel()))


def hausdorff(x: PointSet, y: PointSet) -> float:
    """Symmetric Hausdorff distance with Euclidean ground metric."""
    if x.points.shape[1] != y.points.shape[1]:
        raise SizeMismatch(f"point dimensions differ: {x.points.shape[1]} vs {y.points.shape[1]}")
    forward = directed_hausdorff(x.points, y.points)[0]
    backward = directed_hausdorff(y.points, x.points)[0]
    return float(max(forward, backward))


def boundary_points(mask: BinaryMask) -> PointSet:
    """Foreground pixels with at least one background 8-neighbour (outside counts as background)."""
    mask = np.asarray(mask, dtype=bool)
    interior = ndimage.binary_erosion(mask, structure=np.ones((3, 3), dtype=bool), border_value=0)
    return PointSet(np.argwhere(mask & ~interior))


def mask_hausdorff(pred: BinaryMask, truth: BinaryMask) -> float:
    """Hausdorff distance between the boundaries of two masks."""
    if np.shape(pred) != np.shape(truth):
        raise SizeMismatch(f"mask shapes differ: {np.shape(pred)} vs {np.shape(truth)}")
    return hausdorff(boundary_points(pred), boundary_points(truth))
