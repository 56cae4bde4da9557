"""Counter-based generator: reference vectors and stream properties."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghostdisk import rng

# First outputs of the reference generator for seed 0, computed from the
# published constants with an independent implementation.
SEED0_WORDS = (
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
)


def test_reference_vectors_seed_zero():
    for index, expected in enumerate(SEED0_WORDS):
        assert rng.word(0, index) == expected


def test_word_is_pure_and_order_free():
    values = [rng.word(42, i) for i in range(16)]
    assert [rng.word(42, i) for i in reversed(range(16))] == values[::-1]
    assert rng.word(42, 3) == values[3]


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        rng.word(0, -1)


def test_uniform_matches_word_mapping():
    for index in range(8):
        expected = ((rng.word(7, index) >> 11) + 1) * 2.0**-53
        assert rng.uniform(7, index) == expected


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=0, max_value=10_000))
def test_uniform_in_half_open_unit_interval(seed, index):
    u = rng.uniform(seed, index)
    assert 0.0 < u <= 1.0


def test_gaussian_uses_consecutive_word_pair():
    u1 = rng.uniform(9, 4)
    u2 = rng.uniform(9, 5)
    expected = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
    assert rng.gaussian(9, 2) == expected


def test_gaussian_is_finite_and_centered():
    draws = [rng.gaussian(1234, i) for i in range(4000)]
    assert all(math.isfinite(z) for z in draws)
    mean = sum(draws) / len(draws)
    var = sum(z * z for z in draws) / len(draws)
    assert abs(mean) < 0.08
    assert abs(var - 1.0) < 0.1


def test_bitstream_msb_first():
    first = rng.word(0, 0)
    expected = [(first >> (63 - i)) & 1 for i in range(64)]
    stream = rng.BitStream(0)
    assert stream.take(64) == expected
    # The 65th bit starts the next word.
    assert stream.next_bit() == (rng.word(0, 1) >> 63) & 1


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=1, max_value=300))
def test_bitstream_restart_reproduces(seed, count):
    assert rng.BitStream(seed).take(count) == rng.BitStream(seed).take(count)


def test_distinct_seeds_disagree():
    a = [rng.word(0, i) for i in range(8)]
    b = [rng.word(1, i) for i in range(8)]
    assert a != b
