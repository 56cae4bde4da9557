"""Time-domain simulation of the spinning-disk measurement.

One disk revolution plays the full scan schedule; each schedule slot
illuminates its cell with its pattern for a fixed fraction of the
revolution period.  The bucket detector reports, per color channel, the sum
of scene values under the lit pixels.  Each slot then adds
``bucket * mask`` into the exposure accumulator, which is the standard
second-order correlation estimate restricted to that slot's cell.

Exposure windows model a finite persistence time T:

* ``tumbling`` -- back-to-back windows [w*T, (w+1)*T); only windows that
  fit completely inside the simulated duration are emitted.
* ``sliding``  -- one window per slot start time t, covering [t, t+T),
  emitted while the window end stays inside the duration.

A slot belongs to a window when its start time lies inside the window.
All timing is exact rational arithmetic, so window membership never
depends on floating-point rounding.

Detector noise, when enabled, perturbs each bucket value with a Gaussian
read from the counter-based generator at index ``3 * slot + channel``, so
any slot's noise can be reproduced without replaying the slots before it.
Worker threads split the slot axis into contiguous chunks and write
disjoint rows of the bucket table; window assembly is a separate serial
pass.  Results are therefore bit-identical for every worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import pnm, rng
from .disk import ScanSchedule
from .hadamard import ReducedPatternSet
from .scene import SceneObject, Trajectory, as_fraction, translate_image

__all__ = [
    "WINDOW_MODES",
    "TimingConfig",
    "ExposureFrame",
    "BucketSample",
    "BucketTrace",
    "SimulationResult",
    "bucket_value",
    "slot_contribution",
    "simulate",
    "write_frame_ppm",
    "write_frame_txt",
    "read_frame_txt",
    "write_bucket_csv",
]

WINDOW_MODES = ("tumbling", "sliding")


@dataclass(frozen=True)
class TimingConfig:
    """Clock for the simulation; every field is an exact rational in seconds."""

    revolution_period: Fraction = Fraction(1)
    persistence_window: Fraction = Fraction(1, 5)
    window_mode: str = "tumbling"
    total_duration: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("revolution_period", "persistence_window", "total_duration"):
            value = as_fraction(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        if self.window_mode not in WINDOW_MODES:
            raise ValueError(
                f"window_mode must be one of {WINDOW_MODES}, got {self.window_mode!r}"
            )

    def slot_duration(self, slots_per_revolution: int) -> Fraction:
        return self.revolution_period / slots_per_revolution


@dataclass(frozen=True)
class ExposureFrame:
    """Accumulated image over one window, as exact integer counts."""

    start: Fraction
    end: Fraction
    image: np.ndarray


@dataclass(frozen=True)
class BucketSample:
    """Detector reading for one slot: (red, green, blue) counts."""

    t: Fraction
    slot_index: int
    values: tuple[int, int, int]


@dataclass(frozen=True)
class BucketTrace:
    samples: tuple[BucketSample, ...]


@dataclass(frozen=True)
class SimulationResult:
    frames: tuple[ExposureFrame, ...]
    trace: BucketTrace


def bucket_value(mask: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Per-channel sum of frame values under the mask, shape (3,) int64."""
    lit = mask.astype(np.int64)
    return np.tensordot(lit, frame.astype(np.int64), axes=([0, 1], [0, 1]))


def slot_contribution(mask: np.ndarray, bucket: np.ndarray) -> np.ndarray:
    """The slot's term of the correlation sum: bucket broadcast over the mask."""
    return mask.astype(np.int64)[:, :, None] * np.asarray(bucket, dtype=np.int64)[None, None, :]


@lru_cache(maxsize=32)
def _slot_times(slot_dt: Fraction, slot_count: int) -> tuple[Fraction, ...]:
    return tuple(s * slot_dt for s in range(slot_count))


class _SlotTable:
    """Schedule as flat arrays, repeated over revolutions as needed."""

    def __init__(self, schedule: ScanSchedule, patterns: ReducedPatternSet):
        spec = schedule.spec
        self.n = spec.n
        self.k = spec.k
        self.n_cell = spec.n_cell
        self.per_rev = spec.slots_per_revolution
        self.rows = np.array([s.row for s in schedule.slots], dtype=np.intp)
        self.cells = np.array([s.cell for s in schedule.slots], dtype=np.intp)
        self.pattern_index = np.array([s.pattern_index for s in schedule.slots], dtype=np.intp)
        self.col0 = self.cells * self.n_cell
        self.bits = patterns.patterns.astype(np.int64)

    def buckets_for(self, frame: np.ndarray, slots: np.ndarray) -> np.ndarray:
        """Bucket values for global slot numbers ``slots`` against one pose."""
        j = slots % self.per_rev
        rows = self.rows[j]
        cols = self.col0[j][:, None] + np.arange(self.n_cell)[None, :]
        seg = frame[rows[:, None], cols, :]
        bits = self.bits[self.pattern_index[j]]
        return np.einsum("sj,sjc->sc", bits, seg, dtype=np.int64)


def _offset_blocks(
    trajectory: Trajectory, slot_dt: Fraction, slot_count: int
) -> list[tuple[int, int, tuple[int, int]]]:
    """Partition slots into runs of constant object pose.

    Returns (start_slot, end_slot, offset) triples.  Static trajectories
    give one run; a hold interval gives one run per hold block; free
    linear motion falls back to per-slot evaluation.
    """
    if trajectory.mode == "static":
        return [(0, slot_count, (0, 0))]
    if trajectory.hold_interval is not None:
        hold = trajectory.hold_interval
        blocks = []
        block = 0
        while True:
            lo = math.ceil(block * hold / slot_dt)
            if lo >= slot_count:
                break
            hi = min(math.ceil((block + 1) * hold / slot_dt), slot_count)
            if lo < hi:
                blocks.append((lo, hi, trajectory.offset_at(lo * slot_dt)))
            block += 1
        return blocks
    blocks = []
    for s in range(slot_count):
        offset = trajectory.offset_at(s * slot_dt)
        if blocks and blocks[-1][2] == offset:
            blocks[-1] = (blocks[-1][0], s + 1, offset)
        else:
            blocks.append((s, s + 1, offset))
    return blocks


def simulate(
    scene: SceneObject,
    trajectory: Trajectory,
    schedule: ScanSchedule,
    patterns: ReducedPatternSet,
    timing: TimingConfig,
    noise_sigma: float = 0.0,
    seed: int = 0,
    workers: int = 1,
) -> SimulationResult:
    """Run the clocked measurement and assemble exposure frames.

    Returns the emitted frames (ordered by window start) and the full
    bucket trace over the simulated duration.  Identical inputs give
    byte-identical results for any ``workers`` value.
    """
    spec = schedule.spec
    if patterns.pattern_length != spec.n_cell:
        raise ValueError(
            f"pattern length {patterns.pattern_length} does not match "
            f"cell width {spec.n_cell}"
        )
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if noise_sigma < 0:
        raise ValueError(f"noise_sigma must be >= 0, got {noise_sigma}")
    if scene.side != spec.n:
        raise ValueError(f"scene side {scene.side} does not match spec n {spec.n}")

    table = _SlotTable(schedule, patterns)
    slot_dt = timing.slot_duration(table.per_rev)
    duration = timing.total_duration
    window = timing.persistence_window
    slot_count = math.ceil(duration / slot_dt)

    base = scene.pixels.astype(np.int64)
    poses: dict[tuple[int, int], np.ndarray] = {(0, 0): base}
    blocks = _offset_blocks(trajectory, slot_dt, slot_count)
    for _, _, offset in blocks:
        if offset not in poses:
            poses[offset] = translate_image(base, offset[0], offset[1])

    buckets = np.zeros((slot_count, 3), dtype=np.int64)

    def fill(lo: int, hi: int) -> None:
        for b_lo, b_hi, offset in blocks:
            lo2, hi2 = max(lo, b_lo), min(hi, b_hi)
            if lo2 < hi2:
                slots = np.arange(lo2, hi2)
                buckets[lo2:hi2] = table.buckets_for(poses[offset], slots)
        if noise_sigma > 0:
            for s in range(lo, hi):
                for channel in range(3):
                    z = rng.gaussian(seed, 3 * s + channel)
                    noisy = int(buckets[s, channel]) + math.floor(noise_sigma * z + 0.5)
                    buckets[s, channel] = max(0, noisy)

    if workers == 1 or slot_count < 2 * workers:
        fill(0, slot_count)
    else:
        chunk = math.ceil(slot_count / workers)
        ranges = [(lo, min(lo + chunk, slot_count)) for lo in range(0, slot_count, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda r: fill(*r), ranges))

    times = _slot_times(slot_dt, slot_count)
    samples = tuple(
        BucketSample(
            t=times[s],
            slot_index=s,
            values=(int(buckets[s, 0]), int(buckets[s, 1]), int(buckets[s, 2])),
        )
        for s in range(slot_count)
    )

    if timing.window_mode == "tumbling":
        frames = _tumbling_frames(table, slot_dt, window, duration, slot_count, buckets)
    else:
        frames = _sliding_frames(table, slot_dt, window, duration, slot_count, buckets)
    return SimulationResult(frames=tuple(frames), trace=BucketTrace(samples=samples))


def _accumulate(table: _SlotTable, buckets: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Sum of slot contributions for global slots [lo, hi), as an image."""
    acc = np.zeros((table.n, table.k, table.n_cell, 3), dtype=np.int64)
    if lo < hi:
        j = np.arange(lo, hi) % table.per_rev
        seg = table.bits[table.pattern_index[j]][:, :, None] * buckets[lo:hi, None, :]
        np.add.at(acc, (table.rows[j], table.cells[j]), seg)
    return acc.reshape(table.n, table.n, 3)


def _tumbling_frames(table, slot_dt, window, duration, slot_count, buckets):
    frames = []
    window_count = int(duration // window)
    for w in range(window_count):
        # Slots whose start time falls in [w*T, (w+1)*T).
        lo = math.ceil(w * window / slot_dt)
        hi = min(math.ceil((w + 1) * window / slot_dt), slot_count)
        image = _accumulate(table, buckets, lo, hi)
        frames.append(ExposureFrame(start=w * window, end=(w + 1) * window, image=image))
    return frames


def _sliding_frames(table, slot_dt, window, duration, slot_count, buckets):
    frames = []
    if duration < window:
        return frames
    length = math.ceil(window / slot_dt)
    last_start = int((duration - window) // slot_dt)
    j_all = np.arange(slot_count) % table.per_rev
    seg_all = table.bits[table.pattern_index[j_all]][:, :, None] * buckets[:, None, :]
    rows_all = table.rows[j_all]
    cells_all = table.cells[j_all]
    acc = np.zeros((table.n, table.k, table.n_cell, 3), dtype=np.int64)
    hi0 = min(length, slot_count)
    np.add.at(acc, (rows_all[:hi0], cells_all[:hi0]), seg_all[:hi0])
    for i in range(last_start + 1):
        if i > 0:
            acc[rows_all[i - 1], cells_all[i - 1]] -= seg_all[i - 1]
            tail = i + length - 1
            if tail < slot_count:
                acc[rows_all[tail], cells_all[tail]] += seg_all[tail]
        start = i * slot_dt
        frames.append(
            ExposureFrame(
                start=start,
                end=start + window,
                image=acc.reshape(table.n, table.n, 3).copy(),
            )
        )
    return frames


# ---------------------------------------------------------------------------
# Frame and trace exports.
# ---------------------------------------------------------------------------


def write_frame_ppm(frame: ExposureFrame, path) -> None:
    """Scale the integer frame onto 0..255 and write a binary PPM.

    The frame maximum maps to 255; an all-zero frame stays zero.  Scaling
    rounds half up in exact integer arithmetic.
    """
    image = frame.image.astype(np.int64)
    peak = int(image.max()) if image.size else 0
    if peak <= 0:
        scaled = np.zeros(image.shape, dtype=np.uint8)
    else:
        scaled = ((image * 510 + peak) // (2 * peak)).astype(np.uint8)
    pnm.write_ppm(path, scaled)


def write_frame_txt(frame: ExposureFrame, path) -> None:
    """Write the raw integer counts, one channel block per color."""
    lines = []
    for channel, name in enumerate(("red", "green", "blue")):
        lines.append(f"# channel {name}")
        for row in frame.image[:, :, channel]:
            lines.append(" ".join(str(int(v)) for v in row))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def read_frame_txt(path) -> np.ndarray:
    """Read an (n, n, 3) int64 array written by write_frame_txt."""
    text = Path(path).read_bytes().decode("ascii")
    channels: list[list[list[int]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("# channel"):
            channels.append([])
            continue
        if not channels:
            raise ValueError(f"{path}: data before first channel header")
        channels[-1].append([int(tok) for tok in line.split()])
    if len(channels) != 3:
        raise ValueError(f"{path}: expected 3 channel blocks, found {len(channels)}")
    arrays = [np.array(block, dtype=np.int64) for block in channels]
    if not (arrays[0].shape == arrays[1].shape == arrays[2].shape):
        raise ValueError(f"{path}: channel blocks disagree in shape")
    return np.stack(arrays, axis=2)


def write_bucket_csv(trace: BucketTrace, path) -> None:
    """Write ``t,slot,red,green,blue`` rows, times as decimal seconds."""
    lines = ["t,slot,red,green,blue"]
    for sample in trace.samples:
        r, g, b = sample.values
        lines.append(f"{float(sample.t)!r},{sample.slot_index},{r},{g},{b}")
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))
