"""Pattern construction: orthogonality, reduction, Gram structure, file I/O."""

from __future__ import annotations

import numpy as np
import pytest

from ghostdisk import hadamard

# The reduced order-8 set, derived by hand from the Sylvester doubling
# construction: map -1 -> 0, drop first row and column.
REDUCED_8 = np.array(
    [
        [0, 1, 0, 1, 0, 1, 0],
        [1, 0, 0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 1],
        [1, 1, 1, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [1, 0, 0, 0, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 0],
    ],
    dtype=np.int64,
)


@pytest.mark.parametrize("order", [2, 4, 8, 16, 32, 64, 128])
def test_sylvester_orthogonality(order):
    h = hadamard.sylvester_hadamard(order)
    assert h.entries.shape == (order, order)
    assert np.array_equal(h.entries @ h.entries.T, order * np.eye(order, dtype=np.int64))
    assert np.all(h.entries[0] == 1)
    assert np.all(h.entries[:, 0] == 1)


@pytest.mark.parametrize("order", [0, 1, 3, 6, 12, 20, 100])
def test_unsupported_orders_rejected(order):
    with pytest.raises(ValueError):
        hadamard.sylvester_hadamard(order)


def test_reduction_of_order_8_is_exact():
    reduced = hadamard.reduce_matrix(hadamard.sylvester_hadamard(8))
    assert reduced.pattern_length == 7
    assert np.array_equal(reduced.patterns, REDUCED_8)


def test_reduction_drops_constant_row_and_column():
    h = hadamard.sylvester_hadamard(16)
    reduced = hadamard.reduce_matrix(h)
    assert reduced.pattern_length == 15
    # Every reduced row must keep the balanced structure: weight (N+1)/2 - 1.
    assert np.all(reduced.patterns.sum(axis=1) == 7)
    assert np.all(reduced.patterns.sum(axis=0) == 7)


@pytest.mark.parametrize("order", [4, 8, 16, 32, 64])
def test_gram_matches_closed_form(order):
    reduced = hadamard.reduce_matrix(hadamard.sylvester_hadamard(order))
    n = order - 1
    coeffs = hadamard.gram_coefficients(n)
    g = hadamard.gram(reduced)
    expected = np.full((n, n), coeffs.c_min, dtype=np.int64)
    np.fill_diagonal(expected, coeffs.c_max)
    assert np.array_equal(g, expected)
    assert coeffs.c_max == order // 2 - 1
    assert coeffs.c_min == order // 4 - 1


@pytest.mark.parametrize("length", [0, 1, 2, 4, 5, 6, 8, 35])
def test_gram_coefficients_reject_unsupported_lengths(length):
    with pytest.raises(ValueError):
        hadamard.gram_coefficients(length)


def test_degenerate_flag():
    one = hadamard.ReducedPatternSet(pattern_length=1, patterns=np.zeros((1, 1), dtype=np.int64))
    assert one.degenerate
    seven = hadamard.reduce_matrix(hadamard.sylvester_hadamard(8))
    assert not seven.degenerate


def test_pattern_set_validation():
    with pytest.raises(ValueError):
        hadamard.ReducedPatternSet(pattern_length=3, patterns=np.zeros((2, 3), dtype=np.int64))
    with pytest.raises(ValueError):
        hadamard.ReducedPatternSet(
            pattern_length=2, patterns=np.array([[0, 2], [1, 0]], dtype=np.int64)
        )


def test_patterns_are_read_only():
    reduced = hadamard.reduce_matrix(hadamard.sylvester_hadamard(8))
    with pytest.raises(ValueError):
        reduced.patterns[0, 0] = 1


def test_random_pattern_set_is_seed_deterministic():
    a = hadamard.random_pattern_set(35, 10, seed=5)
    b = hadamard.random_pattern_set(35, 10, seed=5)
    c = hadamard.random_pattern_set(35, 10, seed=6)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.shape == (10, 35)
    assert set(np.unique(a)) <= {0, 1}


def test_random_pattern_set_matches_bitstream():
    from ghostdisk import rng

    flat = rng.BitStream(11).take(4 * 6)
    expected = np.array(flat, dtype=np.int64).reshape(4, 6)
    assert np.array_equal(hadamard.random_pattern_set(6, 4, seed=11), expected)


def test_pattern_matrix_round_trip(tmp_path):
    reduced = hadamard.reduce_matrix(hadamard.sylvester_hadamard(8))
    path = tmp_path / "patterns.txt"
    hadamard.write_pattern_matrix(path, reduced.patterns)
    back = hadamard.read_pattern_matrix(path)
    assert np.array_equal(back, reduced.patterns)
    # Byte-stable output.
    first = path.read_bytes()
    hadamard.write_pattern_matrix(path, reduced.patterns)
    assert path.read_bytes() == first


def test_pattern_matrix_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 2\n")
    with pytest.raises(ValueError, match="0/1"):
        hadamard.read_pattern_matrix(bad)
    bad.write_text("0 1\n0 1 1\n")
    with pytest.raises(ValueError, match="ragged"):
        hadamard.read_pattern_matrix(bad)
    bad.write_text("\n\n")
    with pytest.raises(ValueError, match="no pattern rows"):
        hadamard.read_pattern_matrix(bad)


def test_pattern_pgm_round_trip(tmp_path):
    reduced = hadamard.reduce_matrix(hadamard.sylvester_hadamard(16))
    paths = hadamard.write_pattern_pgms(tmp_path, reduced.patterns)
    assert len(paths) == 15
    assert sorted(p.name for p in paths)[0] == "pattern_0.pgm"
    back = hadamard.read_pattern_pgms(tmp_path)
    assert np.array_equal(back, reduced.patterns)


def test_pattern_pgm_index_order_not_lexicographic(tmp_path):
    # 12 patterns: pattern_10.pgm sorts before pattern_2.pgm by name, the
    # reader must order numerically.
    arr = np.eye(12, dtype=np.int64)
    hadamard.write_pattern_pgms(tmp_path, arr)
    back = hadamard.read_pattern_pgms(tmp_path)
    assert np.array_equal(back, arr)


def test_load_pattern_set_dispatch(tmp_path):
    arr = hadamard.random_pattern_set(9, 4, seed=1)
    file_path = tmp_path / "pats.txt"
    hadamard.write_pattern_matrix(file_path, arr)
    assert np.array_equal(hadamard.load_pattern_set(file_path), arr)
    pgm_dir = tmp_path / "pgms"
    pgm_dir.mkdir()
    hadamard.write_pattern_pgms(pgm_dir, arr)
    assert np.array_equal(hadamard.load_pattern_set(pgm_dir), arr)
    with pytest.raises(ValueError, match="no pattern"):
        hadamard.read_pattern_pgms(tmp_path / "pgms_empty")
