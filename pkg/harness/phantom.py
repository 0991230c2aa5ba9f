"""Synthetic MLO phantoms with known pectoral and breast geometry."""

import logging
from pathlib import Path
from typing import Any, Mapping, NamedTuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from core.errors import InvalidSpec, UnwritableOutput
from imaging.pgm import save_mask, save_pgm
from imaging.preprocess import mirror
from imaging.types import MAX_MAXVAL, BinaryMask, GrayImage, Orientation

logger = logging.getLogger(__name__)

GT_SUFFIX = "_gt"
BREAST_SUFFIX = "_breast"


class PhantomSpec(BaseModel):
    """Geometry, intensities and noise of one phantom."""

    model_config = ConfigDict(frozen=True)

    width: int = Field(default=256, ge=8)
    height: int = Field(default=256, ge=8)
    orientation: Orientation = Orientation.LEFT
    triangle_depth: float = Field(default=0.45, gt=0, lt=1)
    triangle_width: float = Field(default=0.45, gt=0, lt=1)
    pectoral_level: int = Field(default=200, ge=0)
    breast_level: int = Field(default=110, ge=0)
    background_level: int = Field(default=20, ge=0)
    maxval: int = Field(default=255, ge=1, le=MAX_MAXVAL)
    noise_sigma: float = Field(default=0.0, ge=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_levels(self) -> "PhantomSpec":
        if not self.background_level < self.breast_level < self.pectoral_level <= self.maxval:
            raise ValueError(
                "levels must satisfy background < breast < pectoral <= maxval, got "
                f"{self.background_level}, {self.breast_level}, {self.pectoral_level}, {self.maxval}"
            )
        return self


class Phantom(NamedTuple):
    image: GrayImage
    pectoral: BinaryMask
    breast: BinaryMask


def make_spec(fields: Mapping[str, Any]) -> PhantomSpec:
    """Validate phantom fields, raising InvalidSpec on any violation."""
    try:
        return PhantomSpec.model_validate(dict(fields))
    except ValidationError as e:
        raise InvalidSpec(str(e)) from e


def generate_phantom(spec: Union[PhantomSpec, Mapping[str, Any]]) -> Phantom:
    """
    Paint a phantom in the Left pose and mirror it when the spec asks for Right.

    The breast is a half ellipse hugging the chest wall joined with the
    pectoral triangle, whose hypotenuse runs from (0, width_px) to
    (depth_px, 0). Noise is drawn before mirroring, so a Right phantom is
    exactly the mirrored Left phantom of the same spec.
    """
    if not isinstance(spec, PhantomSpec):
        spec = make_spec(spec)
    height, width = spec.height, spec.width
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]

    depth_px = spec.triangle_depth * height
    width_px = spec.triangle_width * width
    pectoral = (cols <= width_px - rows * (width_px / depth_px)) & (rows <= depth_px)

    center_row, radius_row, radius_col = 0.55 * height, 0.6 * height, 0.8 * width
    ellipse = ((rows - center_row) / radius_row) ** 2 + (cols / radius_col) ** 2 <= 1.0
    breast = ellipse | pectoral

    pixels = np.full((height, width), spec.background_level, dtype=np.float64)
    pixels[breast] = spec.breast_level
    pixels[pectoral] = spec.pectoral_level
    if spec.noise_sigma > 0:
        rng = np.random.default_rng(spec.seed)
        pixels += rng.normal(0.0, spec.noise_sigma, size=pixels.shape)
    pixels = np.clip(np.rint(pixels), 0, spec.maxval)

    if spec.orientation is Orientation.RIGHT:
        pixels, pectoral, breast = mirror(pixels), mirror(pectoral), mirror(breast)
    return Phantom(GrayImage.from_array(pixels, spec.maxval), pectoral, breast)


def phantom_series(count: int, seed: int, **overrides: Any) -> list[PhantomSpec]:
    """
    Seeded series of square phantoms alternating Left and Right.

    Each phantom gets a 45 degree pectoral edge covering 40-48% of the side.
    """
    if count < 1:
        raise InvalidSpec(f"phantom count must be positive, got {count}")
    size = overrides.pop("size", None)
    rng = np.random.default_rng(seed)
    specs = []
    for index in range(count):
        fraction = float(rng.uniform(0.40, 0.48))
        fields = {
            "orientation": Orientation.LEFT if index % 2 == 0 else Orientation.RIGHT,
            "triangle_depth": fraction,
            "triangle_width": fraction,
            "seed": int(rng.integers(0, 2**31 - 1)),
        }
        if size is not None:
            fields["width"] = fields["height"] = size
        fields.update(overrides)
        specs.append(make_spec(fields))
    return specs


def phantom_name(index: int) -> str:
    return f"phantom_{index:03d}"


def write_phantoms(specs: list[PhantomSpec], out_dir: Union[str, Path]) -> list[Path]:
    """Write images to out_dir and ground truth to out_dir/gt; return the image paths."""
    out_dir = Path(out_dir)
    gt_dir = out_dir / "gt"
    try:
        gt_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise UnwritableOutput(f"cannot create {gt_dir}: {e}") from e

    paths = []
    for index, spec in enumerate(specs):
        name = phantom_name(index)
        phantom = generate_phantom(spec)
        image_path = out_dir / f"{name}.pgm"
        try:
            save_pgm(image_path, phantom.image)
            save_mask(gt_dir / f"{name}{GT_SUFFIX}.pgm", phantom.pectoral)
            save_mask(gt_dir / f"{name}{BREAST_SUFFIX}.pgm", phantom.breast)
        except OSError as e:
            raise UnwritableOutput(f"cannot write {name}: {e}") from e
        paths.append(image_path)
        logger.debug("wrote %s (%s)", image_path, spec.orientation.value)
    return paths
