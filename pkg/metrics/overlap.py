"""Overlap and similarity measures: Jaccard, Tanimoto and cosine angle."""

import math
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from core.errors import SizeMismatch, ZeroDenominator, ZeroVector
from imaging.types import BinaryMask


class AttributeCounts(NamedTuple):
    """Pixel counts by (a, b) membership: m01 means absent in a, present in b."""

    m00: int
    m01: int
    m10: int
    m11: int


def _masks(a: BinaryMask, b: BinaryMask) -> tuple[BinaryMask, BinaryMask]:
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    if a.shape != b.shape:
        raise SizeMismatch(f"mask shapes differ: {a.shape} vs {b.shape}")
    return a, b


def _vectors(a: npt.ArrayLike, b: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.size != b.size:
        raise SizeMismatch(f"vector lengths differ: {a.size} vs {b.size}")
    return a, b


def attribute_counts(a: BinaryMask, b: BinaryMask) -> AttributeCounts:
    a, b = _masks(a, b)
    m11 = int(np.count_nonzero(a & b))
    m10 = int(np.count_nonzero(a & ~b))
    m01 = int(np.count_nonzero(~a & b))
    return AttributeCounts(a.size - m11 - m10 - m01, m01, m10, m11)


def binary_jaccard(counts: AttributeCounts) -> float:
    """M11 / (M01 + M10 + M11); 1.0 when neither mask has a pixel."""
    present = counts.m01 + counts.m10 + counts.m11
    return 1.0 if present == 0 else counts.m11 / present


def binary_jaccard_distance(counts: AttributeCounts) -> float:
    present = counts.m01 + counts.m10 + counts.m11
    return 0.0 if present == 0 else (counts.m01 + counts.m10) / present


def jaccard(a: BinaryMask, b: BinaryMask) -> float:
    """Intersection over union; two empty masks are identical (1.0)."""
    a, b = _masks(a, b)
    union = int(np.count_nonzero(a | b))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(a & b)) / union


def jaccard_distance(a: BinaryMask, b: BinaryMask) -> float:
    return 1.0 - jaccard(a, b)


def tanimoto(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """A.B / (|A|^2 + |B|^2 - A.B)."""
    a, b = _vectors(a, b)
    dot = float(a @ b)
    denom = float(a @ a) + float(b @ b) - dot
    if denom == 0:
        raise ZeroDenominator("Tanimoto denominator is zero")
    return dot / denom


def tanimoto_sets(n_a: int, n_b: int, n_c: int) -> float:
    """Set form: n_c / (n_a + n_b - n_c), with n_c the size of the intersection."""
    if not 0 <= n_c <= min(n_a, n_b):
        raise ValueError(f"intersection size {n_c} inconsistent with set sizes {n_a}, {n_b}")
    denom = n_a + n_b - n_c
    if denom == 0:
        raise ZeroDenominator("both sets are empty")
    return n_c / denom


def cosine_angle(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """
    Angle in [0, pi] between two nonzero vectors.

    Equal to arccos of the cosine similarity, evaluated as
    2*atan2(|u - v|, |u + v|) on the unit vectors so that parallel and
    opposite inputs land exactly on 0 and pi.
    """
    a, b = _vectors(a, b)
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0 or norm_b == 0:
        raise ZeroVector("cosine angle is undefined for a zero vector")
    u, v = a / norm_a, b / norm_b
    return 2.0 * math.atan2(float(np.linalg.norm(u - v)), float(np.linalg.norm(u + v)))
