"""Netpbm I/O: byte-exact round trips and header validation."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ghostdisk import pnm


def test_pgm_canonical_bytes(tmp_path):
    image = np.arange(6, dtype=np.uint8).reshape(2, 3)
    path = tmp_path / "a.pgm"
    pnm.write_pgm(path, image)
    assert path.read_bytes() == b"P5\n3 2\n255\n" + bytes(range(6))


def test_ppm_canonical_bytes(tmp_path):
    image = np.arange(6, dtype=np.uint8).reshape(1, 2, 3)
    path = tmp_path / "a.ppm"
    pnm.write_ppm(path, image)
    assert path.read_bytes() == b"P6\n2 1\n255\n" + bytes(range(6))


@settings(max_examples=40, deadline=None)
@given(
    arrays(
        np.uint8,
        st.tuples(st.integers(1, 12), st.integers(1, 12)),
        elements=st.integers(0, 255),
    )
)
def test_pgm_round_trip(tmp_path_factory, image):
    path = tmp_path_factory.mktemp("pnm") / "x.pgm"
    pnm.write_pgm(path, image)
    assert np.array_equal(pnm.read_pgm(path), image)


@settings(max_examples=40, deadline=None)
@given(
    arrays(
        np.uint8,
        st.tuples(st.integers(1, 8), st.integers(1, 8), st.just(3)),
        elements=st.integers(0, 255),
    )
)
def test_ppm_round_trip(tmp_path_factory, image):
    path = tmp_path_factory.mktemp("pnm") / "x.ppm"
    pnm.write_ppm(path, image)
    assert np.array_equal(pnm.read_ppm(path), image)


def test_reader_accepts_comments_and_whitespace(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5 # magic\n# size follows\n 3\t2 # wide\n255\n" + bytes(6))
    image = pnm.read_pgm(path)
    assert image.shape == (2, 3)


def test_reader_rejects_wrong_magic(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(ValueError, match="expected P5"):
        pnm.read_pgm(path)
    path2 = tmp_path / "c.ppm"
    path2.write_bytes(b"P5\n1 1\n255\n\x00")
    with pytest.raises(ValueError, match="expected P6"):
        pnm.read_ppm(path2)
    path3 = tmp_path / "junk"
    path3.write_bytes(b"hello")
    with pytest.raises(ValueError, match="magic"):
        pnm.read_pgm(path3)


def test_reader_rejects_wrong_maxval(tmp_path):
    path = tmp_path / "m.pgm"
    path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(ValueError, match="maxval"):
        pnm.read_pgm(path)


def test_reader_rejects_short_and_long_raster(tmp_path):
    path = tmp_path / "r.pgm"
    path.write_bytes(b"P5\n2 2\n255\n\x00\x00\x00")
    with pytest.raises(ValueError, match="raster holds 3 bytes, expected 4"):
        pnm.read_pgm(path)
    path.write_bytes(b"P5\n2 2\n255\n\x00\x00\x00\x00\x00")
    with pytest.raises(ValueError, match="raster holds 5 bytes"):
        pnm.read_pgm(path)


def test_reader_rejects_truncated_header(tmp_path):
    path = tmp_path / "t.pgm"
    path.write_bytes(b"P5\n2")
    with pytest.raises(ValueError, match="truncated"):
        pnm.read_pgm(path)


def test_writer_rejects_out_of_range():
    with pytest.raises(ValueError, match="0..255"):
        pnm.write_pgm("/dev/null", np.array([[300]]))
    with pytest.raises(ValueError, match="0..255"):
        pnm.write_ppm("/dev/null", np.array([[[-1, 0, 0]]]))


def test_writer_rejects_bad_shape():
    with pytest.raises(ValueError, match="2-D"):
        pnm.write_pgm("/dev/null", np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(ValueError, match=r"\(h, w, 3\)"):
        pnm.write_ppm("/dev/null", np.zeros((2, 2), dtype=np.uint8))


def test_raster_values_survive_exactly(tmp_path):
    # A raster containing header-like bytes must not confuse the reader.
    image = np.array([[80, 53, 10], [35, 32, 255]], dtype=np.uint8)
    path = tmp_path / "tricky.pgm"
    pnm.write_pgm(path, image)
    assert np.array_equal(pnm.read_pgm(path), image)
