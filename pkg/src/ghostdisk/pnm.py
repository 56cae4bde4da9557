"""Bit-exact binary PGM (P5) and PPM (P6) readers and writers.

Only maxval 255 is supported; everything else is rejected with the exact
violation named.  Writers emit a canonical header (``magic\\nW H\\n255\\n``)
so identical arrays always produce identical bytes.  Readers accept any
legal Netpbm whitespace and ``#`` comments in the header.
"""

from __future__ import annotations

import numpy as np

__all__ = ["read_pgm", "write_pgm", "read_ppm", "write_ppm"]


def _read_header(data: bytes, path) -> tuple[bytes, int, int, int, int]:
    """Parse magic, width, height, maxval; return them plus the raster offset."""
    if len(data) < 2 or data[:1] != b"P":
        raise ValueError(f"{path}: not a PNM file (missing 'P' magic)")
    magic = data[:2]
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        if pos >= len(data):
            raise ValueError(f"{path}: truncated header")
        byte = data[pos : pos + 1]
        if byte == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif byte.isspace():
            pos += 1
        elif byte.isdigit():
            start = pos
            while pos < len(data) and data[pos : pos + 1].isdigit():
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise ValueError(f"{path}: unexpected byte {byte!r} in header")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ValueError(f"{path}: header must end with single whitespace before raster")
    pos += 1
    width, height, maxval = fields
    return magic, width, height, maxval, pos


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM (P5, maxval 255) into an (h, w) uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, width, height, maxval, pos = _read_header(data, path)
    if magic != b"P5":
        raise ValueError(f"{path}: wrong magic {magic!r}, expected P5")
    if maxval != 255:
        raise ValueError(f"{path}: maxval {maxval} unsupported, expected 255")
    raster = data[pos:]
    if len(raster) != width * height:
        raise ValueError(
            f"{path}: raster holds {len(raster)} bytes, expected {width * height}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(path, image: np.ndarray) -> None:
    """Write an (h, w) array of 0..255 integers as binary PGM."""
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ValueError(f"PGM image must be 2-D, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("PGM values must lie in 0..255")
    height, width = arr.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(arr.astype(np.uint8).tobytes())


def read_ppm(path) -> np.ndarray:
    """Read a binary PPM (P6, maxval 255) into an (h, w, 3) uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, width, height, maxval, pos = _read_header(data, path)
    if magic != b"P6":
        raise ValueError(f"{path}: wrong magic {magic!r}, expected P6")
    if maxval != 255:
        raise ValueError(f"{path}: maxval {maxval} unsupported, expected 255")
    raster = data[pos:]
    if len(raster) != width * height * 3:
        raise ValueError(
            f"{path}: raster holds {len(raster)} bytes, expected {width * height * 3}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def write_ppm(path, image: np.ndarray) -> None:
    """Write an (h, w, 3) array of 0..255 integers as binary PPM."""
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"PPM image must have shape (h, w, 3), got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("PPM values must lie in 0..255")
    height, width = arr.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        fh.write(arr.astype(np.uint8).tobytes())
