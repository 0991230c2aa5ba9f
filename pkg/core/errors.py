"""Exception hierarchy for the pectoral suppression toolkit."""

from typing import Optional


class PectoralError(Exception):
    """Base class for every error raised by this package."""


# Image decoding


class PgmError(PectoralError):
    """Raised when a PGM byte stream cannot be decoded."""


class BadMagic(PgmError):
    """The stream does not start with P2 or P5."""


class TruncatedData(PgmError):
    """The raster holds fewer samples than width*height."""


class MaxvalOutOfRange(PgmError):
    """Header maxval is 0 or above 65535."""


# Segmentation


class SegmentationError(PectoralError):
    """Raised when a preprocessing or segmentation step cannot proceed."""


class DegenerateHistogram(SegmentationError):
    """The pixels hold a single distinct intensity."""


class EmptyForeground(SegmentationError):
    """Thresholding left no foreground pixel."""


class EmptyMask(SegmentationError):
    """An operation that needs foreground received an empty mask."""


class NoCornerComponent(SegmentationError):
    """No labeled component touches the top-left breast corner."""


class TooFewPoints(SegmentationError):
    """A line fit needs at least two boundary points."""


class DegenerateSegment(SegmentationError):
    """A line segment is empty after clipping to the raster."""


# Metrics


class MetricError(PectoralError):
    """Raised when a measure is undefined for its inputs."""


class SizeMismatch(MetricError):
    """Inputs that must share a size do not."""


class TooFewPixels(MetricError):
    """Pairwise measures need at least two pixels."""


class IndexOutOfRange(MetricError):
    """A pixel index lies outside the segmentation."""


class ZeroDenominator(MetricError):
    """The Tanimoto denominator vanished."""


class ZeroVector(MetricError):
    """The cosine angle is undefined for a zero vector."""


class EmptySeries(MetricError):
    """MAE over an empty series."""


class NoOverlappingRows(MetricError):
    """Two masks share no row with foreground in both."""


class EmptySet(MetricError):
    """Hausdorff distance over an empty point set."""


# Harness


class InvalidConfig(PectoralError, ValueError):
    """An environment setting cannot be parsed."""


class InvalidSpec(PectoralError, ValueError):
    """A phantom specification violates its invariants."""


class NoInputs(PectoralError):
    """The input directory holds no PGM file."""


class UnwritableOutput(PectoralError):
    """An output file could not be written."""


class StageError(PectoralError):
    """Exception raised when a pipeline stage fails."""

    def __init__(self, message: str, stage: str, cause: Optional[Exception] = None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.cause = cause
