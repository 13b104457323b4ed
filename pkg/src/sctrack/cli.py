"""Command-line interface: track, eval, synth and ablate subcommands.

Configuration precedence: built-in defaults, then a config file (from
``--config`` or the SCTRACK_CONFIG environment variable), then explicit
command-line flags.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import replace

from . import ablation, metrics, motio, synth
from .geometry import ShapeIoUParams
from .kalman import NoiseConfig
from .tracker import SCTracker, TrackerConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sctrack",
        description="Multi-object tracking with shape-aware association and "
        "confidence-weighted state updates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    track = sub.add_parser("track", help="associate a detection file into tracks")
    track.add_argument("--detections", required=True, help="MOTChallenge det file")
    track.add_argument("--output", required=True, help="result file to write")
    _add_config_flags(track)

    evaluate = sub.add_parser("eval", help="score a result file against ground truth")
    evaluate.add_argument("--gt", required=True, help="MOTChallenge gt file")
    evaluate.add_argument("--res", required=True, help="MOTChallenge result file")
    evaluate.add_argument("--output", help="also write the report CSV here")
    evaluate.add_argument(
        "--iou-thresh", type=float, default=metrics.DEFAULT_IOU_MATCH_THRESH,
        help="IoU threshold for gt/hypothesis correspondence (default %(default)s)",
    )

    synth_cmd = sub.add_parser("synth", help="materialize a synthetic scenario")
    synth_cmd.add_argument("--scenario", required=True, help="builtin scenario name")
    synth_cmd.add_argument("--output", required=True, help="output directory")
    synth_cmd.add_argument("--seed", type=int, help="override the scenario seed")

    ablate = sub.add_parser("ablate", help="compare association arms on synthetic data")
    ablate.add_argument(
        "--scenario", action="append", dest="scenarios",
        help="builtin scenario name (repeatable; default: crossing_distinct_shape "
        "and occlusion_lowconf)",
    )
    ablate.add_argument("--seed", type=int, default=1, help="first seed (default 1)")
    ablate.add_argument("--num-seeds", type=int, default=10, help="number of seeds (default 10)")
    ablate.add_argument(
        "--mode", choices=sorted(ARM_MODES), default="components",
        help="arm family to compare (default %(default)s)",
    )
    _add_config_flags(ablate)

    return parser


ARM_MODES = dict(ablation.ARM_FAMILIES)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file (overrides SCTRACK_CONFIG)")
    parser.add_argument("--high-thresh", type=float, dest="high_thresh")
    parser.add_argument("--low-thresh", type=float, dest="low_thresh")
    parser.add_argument("--new-track-thresh", type=float, dest="new_track_thresh")
    parser.add_argument("--gate1", type=float, dest="match_gate_stage1")
    parser.add_argument("--gate2", type=float, dest="match_gate_stage2")
    parser.add_argument("--gate-unconfirmed", type=float, dest="match_gate_unconfirmed")
    parser.add_argument("--max-lost", type=int, dest="max_lost_frames")
    parser.add_argument("--epsilon", type=float, dest="epsilon")
    parser.add_argument(
        "--no-shape", action="store_true",
        help="disable both shape constraint terms",
    )
    parser.add_argument("--no-shape-height", action="store_true", help="disable the height term")
    parser.add_argument("--no-shape-area", action="store_true", help="disable the area term")
    parser.add_argument(
        "--no-conf", action="store_true",
        help="disable confidence-weighted noise and velocity blending",
    )


def _tracker_config(args) -> TrackerConfig:
    values: dict = {}
    config_path = getattr(args, "config", None) or motio.default_config_path()
    if config_path:
        values.update(motio.load_config(config_path))

    for key in (
        "high_thresh", "low_thresh", "new_track_thresh",
        "match_gate_stage1", "match_gate_stage2", "match_gate_unconfirmed",
        "max_lost_frames",
    ):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "epsilon", None) is not None:
        values["epsilon"] = args.epsilon

    shape = ShapeIoUParams(
        epsilon=values.pop("epsilon", ShapeIoUParams().epsilon),
        use_height_term=values.pop("use_height_term", True),
        use_area_term=values.pop("use_area_term", True),
    )
    noise = NoiseConfig(
        std_weight_position=values.pop("std_weight_position", NoiseConfig().std_weight_position),
        std_weight_velocity=values.pop("std_weight_velocity", NoiseConfig().std_weight_velocity),
        use_confidence_noise=values.pop("use_confidence_noise", True),
        use_velocity_blend=values.pop("use_velocity_blend", True),
    )
    if getattr(args, "no_shape", False):
        shape = replace(shape, use_height_term=False, use_area_term=False)
    if getattr(args, "no_shape_height", False):
        shape = replace(shape, use_height_term=False)
    if getattr(args, "no_shape_area", False):
        shape = replace(shape, use_area_term=False)
    if getattr(args, "no_conf", False):
        noise = replace(noise, use_confidence_noise=False, use_velocity_blend=False)

    return TrackerConfig(shape_params=shape, noise_config=noise, **values)


def cmd_track(args) -> int:
    config = _tracker_config(args)
    detections = motio.read_detections(args.detections)
    if not detections:
        results = []
        frame_ms: list[float] = []
    else:
        frames = sorted(detections)
        tracker = SCTracker(config)
        results = []
        frame_ms = []
        for frame in range(frames[0], frames[-1] + 1):
            start = time.perf_counter()
            results.append(tracker.step(frame, detections.get(frame, [])))
            frame_ms.append((time.perf_counter() - start) * 1000.0)
    motio.write_results(args.output, results)
    boxes = sum(len(r.outputs) for r in results)
    print(f"tracked {len(results)} frame(s), wrote {boxes} box(es) to {args.output}")
    if frame_ms:
        print(
            f"association time per frame: median {statistics.median(frame_ms):.2f} ms, "
            f"mean {statistics.fmean(frame_ms):.2f} ms, max {max(frame_ms):.2f} ms"
        )
    return 0


def cmd_eval(args) -> int:
    gt_rows = motio.read_ground_truth(args.gt)
    gt = {
        frame: [(e.track_id, e.box) for e in entries if e.evaluable]
        for frame, entries in gt_rows.items()
    }
    results = _result_map(args.res)
    report = metrics.evaluate(gt, results, iou_match_thresh=args.iou_thresh)
    print(report.to_text())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv() + "\n")
        print(f"wrote report CSV to {args.output}")
    return 0


def _result_map(path):
    """Result files carry real track ids, so read them id-aware."""
    from .geometry import BoundingBox

    by_frame: dict[int, list] = {}
    for _, record in motio.iter_records(path):
        if record.bb_width <= 0 or record.bb_height <= 0:
            continue
        box = BoundingBox.from_tlwh(record.bb_left, record.bb_top, record.bb_width, record.bb_height)
        by_frame.setdefault(record.frame, []).append((record.track_id, box))
    return dict(sorted(by_frame.items()))


def cmd_synth(args) -> int:
    try:
        spec = synth.builtin_scenario(args.scenario, seed=args.seed)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 1
    paths = synth.save_scenario(spec, args.output)
    print(f"wrote {paths['gt']}, {paths['det']}, {paths['meta']}")
    return 0


def cmd_ablate(args) -> int:
    scenarios = args.scenarios or ["crossing_distinct_shape", "occlusion_lowconf"]
    seeds = list(range(args.seed, args.seed + args.num_seeds))
    base = _tracker_config(args)
    summaries = ablation.run_ablation(
        scenarios, seeds, arms=ARM_MODES[args.mode], base_config=base
    )
    print(f"scenarios: {', '.join(scenarios)}; seeds: {seeds[0]}..{seeds[-1]}")
    print(ablation.format_table(summaries))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"track": cmd_track, "eval": cmd_eval, "synth": cmd_synth, "ablate": cmd_ablate}
    try:
        return handlers[args.command](args)
    except (motio.ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
