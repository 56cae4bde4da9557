"""Two-level object partition and the rotating-disk scan schedule.

An ``n x n`` object is split into ``n`` row parts (one pixel tall) and each
row part into ``k`` cells of ``n_cell = n / k`` pixels.  Every cell is probed
by the full reduced pattern set of length ``n_cell``, so one revolution of
the disk enumerates all ``n * k * n_cell = n^2`` (row, cell, pattern) slots.

Two slot orders are supported:

* ``pattern_major`` -- one pattern sweeps every (row, cell) position before
  the next pattern is used ("pattern moving"); the default.
* ``part_major``    -- each (row, cell) position plays the whole pattern set
  before moving on.

Both orders cover the same slot multiset, so any full-revolution integral is
identical under either.

The physical analogue is a single disk with one hole group per slot, laid
out on concentric tracks (one track per row part) at uniform angular
spacing.  Disk radius and track pitch are presentation-only: they scale the
exported drawing and never affect simulation results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .hadamard import ReducedPatternSet, is_supported_order

__all__ = [
    "ORDER_MODES",
    "PartitionSpec",
    "SlotDescriptor",
    "ScanSchedule",
    "HoleGroup",
    "DiskLayout",
    "make_spec",
    "build_schedule",
    "place_pattern",
    "disk_layout",
    "schedule_to_csv",
    "schedule_from_csv",
    "layout_to_csv",
    "layout_from_csv",
    "export_layout_svg",
]

ORDER_MODES = ("part_major", "pattern_major")


@dataclass(frozen=True)
class PartitionSpec:
    """Partition of an n x n object into k cells of n_cell pixels per row."""

    n: int
    k: int
    n_cell: int

    @property
    def slots_per_revolution(self) -> int:
        return self.n * self.n


def make_spec(n: int, k: int) -> PartitionSpec:
    """Validate and build the partition for object side ``n`` and ``k`` cells."""
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    if n % k != 0:
        raise ValueError(f"k must divide n: {n} % {k} != 0")
    n_cell = n // k
    if n_cell < 3:
        raise ValueError(f"cell width n/k = {n_cell} is too small, need >= 3")
    if not is_supported_order(n_cell + 1):
        raise ValueError(
            f"cell width n/k = {n_cell} needs pattern order {n_cell + 1}, "
            "which is not a supported (power-of-two) order"
        )
    return PartitionSpec(n=n, k=k, n_cell=n_cell)


@dataclass(frozen=True)
class SlotDescriptor:
    """One illumination slot: which pattern lights which cell of which row."""

    slot_index: int
    row: int
    cell: int
    pattern_index: int


@dataclass(frozen=True)
class ScanSchedule:
    """One disk revolution: all n^2 slots in a declared order."""

    spec: PartitionSpec
    order_mode: str
    slots: tuple[SlotDescriptor, ...]


def build_schedule(spec: PartitionSpec, order_mode: str = "pattern_major") -> ScanSchedule:
    """Enumerate one revolution of (row, cell, pattern) slots.

    ``pattern_major`` varies pattern_index slowest; ``part_major`` varies
    (row, cell) slowest.  Deterministic for a given spec and mode.
    """
    if order_mode not in ORDER_MODES:
        raise ValueError(f"order_mode must be one of {ORDER_MODES}, got {order_mode!r}")
    slots = []
    if order_mode == "pattern_major":
        triples = (
            (row, cell, pattern)
            for pattern in range(spec.n_cell)
            for row in range(spec.n)
            for cell in range(spec.k)
        )
    else:
        triples = (
            (row, cell, pattern)
            for row in range(spec.n)
            for cell in range(spec.k)
            for pattern in range(spec.n_cell)
        )
    for index, (row, cell, pattern) in enumerate(triples):
        slots.append(SlotDescriptor(slot_index=index, row=row, cell=cell, pattern_index=pattern))
    return ScanSchedule(spec=spec, order_mode=order_mode, slots=tuple(slots))


def place_pattern(
    spec: PartitionSpec, slot: SlotDescriptor, patterns: ReducedPatternSet
) -> np.ndarray:
    """Full-frame n x n binary mask with the slot's pattern in its cell."""
    if patterns.pattern_length != spec.n_cell:
        raise ValueError(
            f"pattern length {patterns.pattern_length} does not match "
            f"cell width {spec.n_cell}"
        )
    if not (0 <= slot.row < spec.n and 0 <= slot.cell < spec.k):
        raise ValueError(f"slot {slot} is out of range for spec {spec}")
    if not 0 <= slot.pattern_index < spec.n_cell:
        raise ValueError(f"pattern index {slot.pattern_index} out of range")
    mask = np.zeros((spec.n, spec.n), dtype=np.int64)
    start = slot.cell * spec.n_cell
    mask[slot.row, start : start + spec.n_cell] = patterns.patterns[slot.pattern_index]
    return mask


@dataclass(frozen=True)
class HoleGroup:
    """One slot's hole group on the disk: position plus its pattern bits."""

    slot_index: int
    row: int
    cell: int
    pattern_index: int
    track: int
    angle_deg: Fraction
    bits: tuple[int, ...]


@dataclass(frozen=True)
class DiskLayout:
    """Physical arrangement of one revolution's hole groups.

    One track per row part; hole groups sit at uniform angular spacing
    (360 degrees / slot count) in schedule order.  Radius and pitch are in
    millimeters and only affect the exported drawing.
    """

    spec: PartitionSpec
    order_mode: str
    radius_mm: float
    track_pitch_mm: float
    holes: tuple[HoleGroup, ...]


def disk_layout(
    schedule: ScanSchedule,
    patterns: ReducedPatternSet,
    radius_mm: float = 60.0,
    track_pitch_mm: float = 1.5,
) -> DiskLayout:
    """Map a one-revolution schedule onto disk tracks and angles."""
    if radius_mm <= 0 or track_pitch_mm <= 0:
        raise ValueError(
            f"geometry must be positive: radius={radius_mm}, pitch={track_pitch_mm}"
        )
    spec = schedule.spec
    if patterns.pattern_length != spec.n_cell:
        raise ValueError(
            f"pattern length {patterns.pattern_length} does not match "
            f"cell width {spec.n_cell}"
        )
    count = len(schedule.slots)
    holes = tuple(
        HoleGroup(
            slot_index=slot.slot_index,
            row=slot.row,
            cell=slot.cell,
            pattern_index=slot.pattern_index,
            track=slot.row,
            angle_deg=Fraction(360 * slot.slot_index, count),
            bits=tuple(int(b) for b in patterns.patterns[slot.pattern_index]),
        )
        for slot in schedule.slots
    )
    return DiskLayout(
        spec=spec,
        order_mode=schedule.order_mode,
        radius_mm=float(radius_mm),
        track_pitch_mm=float(track_pitch_mm),
        holes=holes,
    )


# ---------------------------------------------------------------------------
# Exports: schedule CSV, layout CSV (round-trippable), layout SVG.
# ---------------------------------------------------------------------------


def schedule_to_csv(schedule: ScanSchedule, path) -> None:
    """Write ``slot,row,cell,pattern`` lines in schedule order."""
    lines = ["slot,row,cell,pattern"]
    for slot in schedule.slots:
        lines.append(f"{slot.slot_index},{slot.row},{slot.cell},{slot.pattern_index}")
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def schedule_from_csv(path, spec: PartitionSpec, order_mode: str = "pattern_major") -> ScanSchedule:
    """Rebuild a schedule from its CSV export."""
    text = Path(path).read_bytes().decode("ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "slot,row,cell,pattern":
        raise ValueError(f"{path}: missing 'slot,row,cell,pattern' header")
    slots = []
    for ln in lines[1:]:
        index, row, cell, pattern = (int(tok) for tok in ln.split(","))
        slots.append(SlotDescriptor(slot_index=index, row=row, cell=cell, pattern_index=pattern))
    return ScanSchedule(spec=spec, order_mode=order_mode, slots=tuple(slots))


def layout_to_csv(layout: DiskLayout, path) -> None:
    """Write hole groups as CSV; angles as exact fractions of a degree."""
    lines = ["slot,row,cell,pattern,track,angle_num,angle_den,bits"]
    for hole in layout.holes:
        bits = "".join(str(b) for b in hole.bits)
        lines.append(
            f"{hole.slot_index},{hole.row},{hole.cell},{hole.pattern_index},"
            f"{hole.track},{hole.angle_deg.numerator},{hole.angle_deg.denominator},{bits}"
        )
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def layout_from_csv(path, layout: DiskLayout) -> DiskLayout:
    """Rebuild a layout's hole groups from CSV, keeping the given geometry."""
    text = Path(path).read_bytes().decode("ascii")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "slot,row,cell,pattern,track,angle_num,angle_den,bits":
        raise ValueError(f"{path}: missing layout header")
    holes = []
    for ln in lines[1:]:
        slot, row, cell, pattern, track, num, den, bits = ln.split(",")
        holes.append(
            HoleGroup(
                slot_index=int(slot),
                row=int(row),
                cell=int(cell),
                pattern_index=int(pattern),
                track=int(track),
                angle_deg=Fraction(int(num), int(den)),
                bits=tuple(int(b) for b in bits),
            )
        )
    return DiskLayout(
        spec=layout.spec,
        order_mode=layout.order_mode,
        radius_mm=layout.radius_mm,
        track_pitch_mm=layout.track_pitch_mm,
        holes=tuple(holes),
    )


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def export_layout_svg(layout: DiskLayout, path) -> None:
    """Write the disk as SVG: one rectangle per lit pattern bit.

    Rectangles are grouped in one ``<g>`` element per track.  Each hole
    group is drawn at its angle via a rotation about the disk center, with
    the pattern bits stacked radially inside the track.  Output bytes are a
    pure function of the layout.
    """
    spec = layout.spec
    radius = layout.radius_mm
    pitch = layout.track_pitch_mm
    size = 2.0 * (radius + 2.0 * pitch)
    center = size / 2.0
    bit_h = pitch / max(spec.n_cell, 1)
    # Keep every hole group narrower than its angular pitch at the innermost track.
    slot_count = max(len(layout.holes), 1)
    inner_r = radius - (spec.n - 1) * pitch - pitch
    arc = 2.0 * 3.141592653589793 * max(inner_r, pitch) / slot_count
    bit_w = min(pitch, 0.8 * arc)

    by_track: dict[int, list[HoleGroup]] = {}
    for hole in layout.holes:
        by_track.setdefault(hole.track, []).append(hole)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}mm" '
        f'height="{_fmt(size)}mm" viewBox="0 0 {_fmt(size)} {_fmt(size)}">',
        f'<circle cx="{_fmt(center)}" cy="{_fmt(center)}" r="{_fmt(radius)}" '
        'fill="none" stroke="black" stroke-width="0.2"/>',
    ]
    for track in sorted(by_track):
        parts.append(f'<g id="track_{track}">')
        track_r = radius - track * pitch - pitch
        for hole in by_track[track]:
            angle = float(hole.angle_deg)
            lit = [j for j, b in enumerate(hole.bits) if b]
            if lit:
                parts.append(
                    f'<g transform="rotate({_fmt(angle)} {_fmt(center)} {_fmt(center)})">'
                )
                for j in lit:
                    x = center - bit_w / 2.0
                    y = center - track_r - pitch + j * bit_h
                    parts.append(
                        f'<rect x="{_fmt(x)}" y="{_fmt(y)}" '
                        f'width="{_fmt(bit_w)}" height="{_fmt(bit_h)}"/>'
                    )
                parts.append("</g>")
        parts.append("</g>")
    parts.append("</svg>")
    Path(path).write_bytes(("\n".join(parts) + "\n").encode("ascii"))
