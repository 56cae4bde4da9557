"""Command-line front end.

Subcommands:

* ``patterns``  -- write a reduced (or random) pattern set.
* ``schedule``  -- write one revolution's slot order as CSV.
* ``layout``    -- write the disk drawing (SVG) and hole table (CSV).
* ``simulate``  -- run the clocked measurement; writes frames, the bucket
                   trace, and a manifest that reproduces the run.
* ``report``    -- recompute a finished run and write per-cell contrast.

Exit codes: 0 success, 2 bad configuration or arguments, 3 file system
errors, 4 internal invariant violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import (
    ConfigError,
    RunConfig,
    config_text,
    load_config_file,
    merge_config,
    resolve_components,
)
from .disk import build_schedule, disk_layout, export_layout_svg, layout_to_csv, make_spec, schedule_to_csv
from .hadamard import (
    random_pattern_set,
    reduce_matrix,
    sylvester_hadamard,
    write_pattern_matrix,
    write_pattern_pgms,
)
from .metrics import frame_report, write_report_csv
from .scene import sample_scene
from .sim import simulate, write_bucket_csv, write_frame_ppm, write_frame_txt

__all__ = ["main"]


def _add_override_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="config file of key = value lines")
    overrides = [
        ("--n", "n", "object side length"),
        ("--k", "k", "cells per row part"),
        ("--order-mode", "order_mode", "slot order: pattern_major or part_major"),
        ("--letter", "letter", "built-in letter object"),
        ("--color", "color", "letter color: red, green, blue, or white"),
        ("--object", "object_path", "PPM object image instead of a letter"),
        ("--trajectory", "trajectory", "object motion: static or linear"),
        ("--velocity-x", "velocity_x", "columns per second, exact rational"),
        ("--velocity-y", "velocity_y", "rows per second, exact rational"),
        ("--hold-interval", "hold_interval", "motion update interval in seconds"),
        ("--revolution-period", "revolution_period", "disk period in seconds"),
        ("--persistence-time", "persistence_time", "exposure window in seconds"),
        ("--window-mode", "window_mode", "tumbling or sliding windows"),
        ("--total-duration", "total_duration", "simulated time in seconds"),
        ("--noise-sigma", "noise_sigma", "detector noise level, 0 disables"),
        ("--seed", "seed", "noise generator seed"),
        ("--workers", "workers", "worker threads for bucket computation"),
        ("--out", "out_dir", "output directory"),
    ]
    for flag, dest, help_text in overrides:
        parser.add_argument(flag, dest=f"cfg_{dest}", metavar="VALUE", help=help_text)


def _gather_config(args: argparse.Namespace) -> RunConfig:
    file_layer: dict[str, str] = {}
    if args.config:
        file_layer = load_config_file(args.config)
    cli_layer = {
        name[len("cfg_") :]: value
        for name, value in vars(args).items()
        if name.startswith("cfg_") and value is not None
    }
    return merge_config(file_layer, cli_layer)


def _cmd_patterns(args: argparse.Namespace) -> int:
    length = args.length
    if args.random is not None:
        array = random_pattern_set(length, args.random, args.seed)
    else:
        array = reduce_matrix(sylvester_hadamard(length + 1)).patterns
    if args.pgm_dir:
        out = Path(args.pgm_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_pattern_pgms(out, array)
        print(f"wrote {array.shape[0]} pattern files to {out}")
    else:
        write_pattern_matrix(args.out, array)
        print(f"wrote {array.shape[0]} patterns to {args.out}")
    return 0


def _cmd_schedule(args: argparse.Namespace) -> int:
    spec = make_spec(args.n, args.k)
    schedule = build_schedule(spec, args.order_mode)
    schedule_to_csv(schedule, args.out)
    print(f"wrote {len(schedule.slots)} slots to {args.out}")
    return 0


def _cmd_layout(args: argparse.Namespace) -> int:
    if not args.svg and not args.csv:
        raise ConfigError("layout: need --svg and/or --csv output path")
    spec = make_spec(args.n, args.k)
    schedule = build_schedule(spec, args.order_mode)
    patterns = reduce_matrix(sylvester_hadamard(spec.n_cell + 1))
    layout = disk_layout(
        schedule, patterns, radius_mm=args.radius_mm, track_pitch_mm=args.track_pitch_mm
    )
    if args.svg:
        export_layout_svg(layout, args.svg)
        print(f"wrote drawing to {args.svg}")
    if args.csv:
        layout_to_csv(layout, args.csv)
        print(f"wrote {len(layout.holes)} hole groups to {args.csv}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _gather_config(args)
    spec, patterns, schedule, scene, trajectory, timing = resolve_components(cfg)
    result = simulate(
        scene,
        trajectory,
        schedule,
        patterns,
        timing,
        noise_sigma=cfg.noise_sigma,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "manifest.txt").write_bytes(config_text(cfg).encode("ascii"))
    write_bucket_csv(result.trace, out / "bucket.csv")
    for index, frame in enumerate(result.frames):
        write_frame_ppm(frame, out / f"frame_{index:04d}.ppm")
        write_frame_txt(frame, out / f"frame_{index:04d}.txt")
    print(
        f"simulated {len(result.trace.samples)} slots, "
        f"wrote {len(result.frames)} frames to {out}"
    )
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    run_dir = Path(args.run_dir)
    manifest = run_dir / "manifest.txt"
    cfg = merge_config(load_config_file(manifest))
    spec, patterns, schedule, scene, trajectory, timing = resolve_components(cfg)
    result = simulate(
        scene,
        trajectory,
        schedule,
        patterns,
        timing,
        noise_sigma=cfg.noise_sigma,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    if not result.frames:
        raise ConfigError(
            "run has no completed exposure window; nothing to report on"
        )
    if not 0 <= args.frame < len(result.frames):
        raise ConfigError(
            f"frame {args.frame} out of range; run has {len(result.frames)} frames"
        )
    frame = result.frames[args.frame]
    seen = sample_scene(scene, trajectory, frame.start)
    rows = frame_report(frame.image, seen.pixels, spec)
    out = Path(args.out) if args.out else run_dir / "report.csv"
    write_report_csv(rows, out)
    print(f"wrote {len(rows)} contrast rows to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghostdisk",
        description="Rotating-disk single-pixel imaging simulator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_pat = sub.add_parser("patterns", help="write a pattern set")
    p_pat.add_argument("--length", type=int, required=True, help="pattern length")
    p_pat.add_argument("--random", type=int, default=None, metavar="COUNT",
                       help="random patterns instead of the structured set")
    p_pat.add_argument("--seed", type=int, default=0, help="seed for --random")
    p_pat.add_argument("--out", default="patterns.txt", help="output text file")
    p_pat.add_argument("--pgm-dir", default=None, help="write one PGM per pattern here")
    p_pat.set_defaults(handler=_cmd_patterns)

    p_sch = sub.add_parser("schedule", help="write one revolution's slot order")
    p_sch.add_argument("--n", type=int, required=True)
    p_sch.add_argument("--k", type=int, required=True)
    p_sch.add_argument("--order-mode", default="pattern_major")
    p_sch.add_argument("--out", default="schedule.csv")
    p_sch.set_defaults(handler=_cmd_schedule)

    p_lay = sub.add_parser("layout", help="write the disk drawing")
    p_lay.add_argument("--n", type=int, required=True)
    p_lay.add_argument("--k", type=int, required=True)
    p_lay.add_argument("--order-mode", default="pattern_major")
    p_lay.add_argument("--radius-mm", type=float, default=60.0)
    p_lay.add_argument("--track-pitch-mm", type=float, default=1.5)
    p_lay.add_argument("--svg", default=None, help="SVG output path")
    p_lay.add_argument("--csv", default=None, help="hole table output path")
    p_lay.set_defaults(handler=_cmd_layout)

    p_sim = sub.add_parser("simulate", help="run the clocked measurement")
    _add_override_args(p_sim)
    p_sim.set_defaults(handler=_cmd_simulate)

    p_rep = sub.add_parser("report", help="per-cell contrast of a finished run")
    p_rep.add_argument("--run-dir", required=True, help="directory with manifest.txt")
    p_rep.add_argument("--frame", type=int, default=0, help="frame index to analyze")
    p_rep.add_argument("--out", default=None, help="report path, default run dir")
    p_rep.set_defaults(handler=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 3
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
