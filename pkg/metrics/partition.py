"""Partition measures: probabilistic Rand index and local consistency error."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
import numpy.typing as npt

from core.errors import IndexOutOfRange, SizeMismatch, TooFewPixels
from imaging.types import BinaryMask


@dataclass(frozen=True)
class Segmentation:
    """Per-pixel region labels in row-major order."""

    labels: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.ndim != 1:
            labels = labels.ravel()
        if labels.size == 0:
            raise ValueError("segmentation needs at least one pixel")
        object.__setattr__(self, "labels", labels.astype(np.int64, copy=False))

    @property
    def n_pixels(self) -> int:
        return int(self.labels.size)

    @classmethod
    def from_mask(cls, mask: BinaryMask) -> "Segmentation":
        """Two-region partition: label 1 inside the mask, 0 outside."""
        return cls(np.asarray(mask, dtype=np.int64).ravel())


@dataclass(frozen=True)
class GroundTruthSet:
    """K reference segmentations of the same image."""

    truths: tuple[Segmentation, ...]

    def __post_init__(self) -> None:
        truths = tuple(self.truths)
        if not truths:
            raise ValueError("ground-truth set needs at least one segmentation")
        sizes = {t.n_pixels for t in truths}
        if len(sizes) > 1:
            raise SizeMismatch(f"ground truths differ in size: {sorted(sizes)}")
        object.__setattr__(self, "truths", truths)

    @classmethod
    def of(cls, truths: Iterable[Segmentation]) -> "GroundTruthSet":
        return cls(tuple(truths))

    @property
    def n_pixels(self) -> int:
        return self.truths[0].n_pixels

    def __len__(self) -> int:
        return len(self.truths)


def _check_sizes(a: Segmentation, b: Segmentation) -> None:
    if a.n_pixels != b.n_pixels:
        raise SizeMismatch(f"segmentation sizes differ: {a.n_pixels} vs {b.n_pixels}")


def _contingency(a: npt.NDArray[np.int64], b: npt.NDArray[np.int64]):
    """Dense codes of a and b, their region sizes, and the joint code/size of every pixel."""
    _, code_a, size_a = np.unique(a, return_inverse=True, return_counts=True)
    _, code_b, size_b = np.unique(b, return_inverse=True, return_counts=True)
    code_a = code_a.ravel()
    code_b = code_b.ravel()
    joint = code_a * size_b.size + code_b
    _, code_ab, size_ab = np.unique(joint, return_inverse=True, return_counts=True)
    return code_a, size_a, code_b, size_b, code_ab.ravel(), size_ab


def _pairs(counts: npt.NDArray[np.int64]) -> int:
    return sum(int(n) * (int(n) - 1) // 2 for n in counts)


def rand_agreements(s: Segmentation, truth: Segmentation) -> int:
    """Number of unordered pixel pairs on which s and truth agree (same or different region)."""
    _, size_a, _, size_b, _, size_ab = _contingency(s.labels, truth.labels)
    total = s.n_pixels * (s.n_pixels - 1) // 2
    return total - _pairs(size_a) - _pairs(size_b) + 2 * _pairs(size_ab)


def pri(s: Segmentation, gt: GroundTruthSet) -> float:
    """
    Probabilistic Rand index of s against a set of ground truths.

    Averaging the per-pair agreement probability over all pairs equals the
    mean over truths of each truth's Rand index, which is counted from the
    contingency table instead of enumerating pairs. Counts stay exact until
    the final division.
    """
    if s.n_pixels != gt.n_pixels:
        raise SizeMismatch(f"segmentation has {s.n_pixels} pixels, ground truth {gt.n_pixels}")
    if s.n_pixels < 2:
        raise TooFewPixels("PRI needs at least two pixels")
    total = s.n_pixels * (s.n_pixels - 1) // 2
    agreements = sum(rand_agreements(s, truth) for truth in gt.truths)
    return float(Fraction(agreements, total * len(gt)))


def local_error(s1: Segmentation, s2: Segmentation, i: int) -> float:
    """Share of pixel i's s1 region that falls outside its s2 region."""
    _check_sizes(s1, s2)
    if not 0 <= i < s1.n_pixels:
        raise IndexOutOfRange(f"pixel {i} outside 0..{s1.n_pixels - 1}")
    in_r1 = s1.labels == s1.labels[i]
    n_a = int(np.count_nonzero(in_r1))
    n_ab = int(np.count_nonzero(in_r1 & (s2.labels == s2.labels[i])))
    return (n_a - n_ab) / n_a


def local_errors(s1: Segmentation, s2: Segmentation) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Per-pixel refinement errors in both directions, from one contingency table."""
    _check_sizes(s1, s2)
    code_a, size_a, code_b, size_b, code_ab, size_ab = _contingency(s1.labels, s2.labels)
    n_a = size_a[code_a]
    n_b = size_b[code_b]
    n_ab = size_ab[code_ab]
    return (n_a - n_ab) / n_a, (n_b - n_ab) / n_b


def lce(s1: Segmentation, s2: Segmentation) -> float:
    """Local consistency error: mean over pixels of the smaller directional error."""
    forward, backward = local_errors(s1, s2)
    return float(np.mean(np.minimum(forward, backward)))
