"""Netpbm PGM codec (P2 ASCII and P5 binary) and mask conversions."""

import re
from pathlib import Path
from typing import Union

import numpy as np

from core.errors import BadMagic, MaxvalOutOfRange, PgmError, TruncatedData

from .types import MAX_MAXVAL, BinaryMask, GrayImage

MASK_THRESHOLD = 127

_COMMENT = re.compile(rb"#[^\r\n]*")


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Return the next header token and the position just past it."""
    size = len(data)
    while pos < size:
        char = data[pos : pos + 1]
        if char == b"#":
            newline = data.find(b"\n", pos)
            pos = size if newline < 0 else newline + 1
        elif char.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < size and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise TruncatedData("PGM header ended early")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, name: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        return int(token), pos
    except ValueError as e:
        raise PgmError(f"PGM {name} is not an integer: {token!r}") from e


def read_pgm(data: bytes) -> GrayImage:
    """Decode a P5 or P2 byte stream into a GrayImage."""
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise BadMagic(f"unsupported magic {magic!r}, expected P2 or P5")

    width, pos = _header_int(data, 2, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PgmError(f"invalid dimensions {width}x{height}")
    if not 1 <= maxval <= MAX_MAXVAL:
        raise MaxvalOutOfRange(f"maxval {maxval} outside 1..{MAX_MAXVAL}")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        raster = data[pos + 1 :]
        dtype = np.dtype(np.uint8) if maxval <= 255 else np.dtype(">u2")
        needed = count * dtype.itemsize
        if len(raster) < needed:
            raise TruncatedData(f"expected {count} samples, found {len(raster) // dtype.itemsize}")
        samples = np.frombuffer(raster[:needed], dtype=dtype)
    else:
        tokens = _COMMENT.sub(b"", data[pos:]).split()
        if len(tokens) < count:
            raise TruncatedData(f"expected {count} samples, found {len(tokens)}")
        try:
            samples = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except (ValueError, OverflowError) as e:
            raise PgmError(f"P2 raster sample is not an integer within range: {e}") from e

    if samples.size and (samples.min() < 0 or samples.max() > maxval):
        raise PgmError(f"sample exceeds maxval {maxval}")

    pixel_dtype = np.uint8 if maxval <= 255 else np.uint16
    pixels = samples.astype(pixel_dtype).reshape(height, width)
    return GrayImage(pixels, maxval)


def write_pgm(img: GrayImage) -> bytes:
    """Encode an image as binary P5; two big-endian bytes per sample above maxval 255."""
    header = f"P5\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    dtype = np.uint8 if img.maxval <= 255 else np.dtype(">u2")
    return header + img.pixels.astype(dtype).tobytes()


def mask_to_image(mask: BinaryMask) -> GrayImage:
    """Render a mask as a 0/255 image."""
    return GrayImage(np.where(mask, 255, 0).astype(np.uint8), 255)


def image_to_mask(img: GrayImage, thr: int = MASK_THRESHOLD) -> BinaryMask:
    """Mark pixels strictly brighter than thr."""
    return img.pixels > thr


def load_pgm(path: Union[str, Path]) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path: Union[str, Path], img: GrayImage) -> None:
    Path(path).write_bytes(write_pgm(img))


def load_mask(path: Union[str, Path]) -> BinaryMask:
    return image_to_mask(load_pgm(path))


def save_mask(path: Union[str, Path], mask: BinaryMask) -> None:
    save_pgm(path, mask_to_image(mask))
