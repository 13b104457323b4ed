"""Two-stage detection-to-track association with track lifecycle management.

Per frame the tracker:

1. splits detections into high- and low-confidence bands (anything below the
   low threshold is discarded);
2. advances every live track with the motion filter;
3. associates confirmed and lost tracks with high-confidence detections;
4. gives the tracks left unmatched by step 3 a second chance against the
   low-confidence detections;
5. associates still-unconfirmed (tentative) tracks with the remaining
   high-confidence detections;
6. updates matched tracks with confidence-aware filter updates and marks
   them confirmed; unmatched tracks go lost (tentative ones are removed
   immediately) and tracks lost beyond the budget are retired for good;
7. seeds new tentative tracks from leftover high-confidence detections.

All association stages use the shape-aware IoU distance.  Track ids are
assigned once and never reused; a removed id never reappears.

A tracker instance must be stepped sequentially; independent instances
(e.g. one per video sequence) can run concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import assignment, geometry, kalman
from .geometry import BoundingBox, Detection, ShapeIoUParams
from .kalman import KalmanState, NoiseConfig


class TrackStatus(enum.Enum):
    TENTATIVE = "tentative"
    CONFIRMED = "confirmed"
    LOST = "lost"
    REMOVED = "removed"


@dataclass
class Track:
    """One tracked identity: id, motion state and lifecycle bookkeeping."""

    track_id: int
    state: KalmanState
    status: TrackStatus
    frames_since_update: int = 0
    last_score: float = 0.0


@dataclass(frozen=True)
class TrackerConfig:
    """Thresholds, gates and sub-module configuration for the tracker.

    The defaults follow the usual two-stage association conventions; the
    stage gates are expressed on the shape-aware distance, whose range
    extends beyond [0, 1] when the shape terms are enabled.
    """

    high_thresh: float = 0.6
    low_thresh: float = 0.1
    new_track_thresh: float = 0.7
    match_gate_stage1: float = 0.9
    match_gate_stage2: float = 0.5
    match_gate_unconfirmed: float = 0.7
    max_lost_frames: int = 30
    use_unconfirmed_stage: bool = True
    shape_params: ShapeIoUParams = ShapeIoUParams()
    noise_config: NoiseConfig = NoiseConfig()

    def __post_init__(self):
        if not (0.0 <= self.low_thresh < self.high_thresh <= 1.0):
            raise ValueError(
                f"need 0 <= low_thresh < high_thresh <= 1, got "
                f"low={self.low_thresh}, high={self.high_thresh}"
            )
        if not (0.0 <= self.new_track_thresh <= 1.0):
            raise ValueError(f"new_track_thresh must lie in [0, 1], got {self.new_track_thresh}")
        for name in ("match_gate_stage1", "match_gate_stage2", "match_gate_unconfirmed"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_lost_frames < 1:
            raise ValueError(f"max_lost_frames must be >= 1, got {self.max_lost_frames}")


@dataclass(frozen=True)
class TrackOutput:
    track_id: int
    box: BoundingBox
    score: float


@dataclass(frozen=True)
class FrameResult:
    """Confirmed tracks updated in one frame, at most one entry per id."""

    frame_index: int
    outputs: list[TrackOutput] = field(default_factory=list)


class SCTracker:
    """Stateful per-sequence tracker; call :meth:`step` once per frame."""

    def __init__(self, config: TrackerConfig = TrackerConfig()):
        self.config = config
        self.tracks: list[Track] = []
        self._next_id = 1
        self._last_frame: int | None = None

    def step(self, frame_index: int, detections) -> FrameResult:
        """Process one frame of detections and return the confirmed outputs.

        Frame indices must be strictly increasing across calls.  Tracks
        seeded on the tracker's very first frame are confirmed immediately
        (there is no earlier frame that could have confirmed them); later
        births start tentative and confirm on their first association.
        """
        if self._last_frame is not None and frame_index <= self._last_frame:
            raise ValueError(
                f"frame index must be strictly increasing, got {frame_index} "
                f"after {self._last_frame}"
            )
        detections = list(detections)
        for det in detections:
            if not isinstance(det, Detection):
                raise TypeError(f"expected Detection, got {type(det).__name__}")
        first_frame = self._last_frame is None
        self._last_frame = frame_index
        cfg = self.config

        # retire tracks that have exhausted the lost budget before they can
        # re-enter association
        retained = []
        for track in self.tracks:
            if (
                track.status is TrackStatus.LOST
                and track.frames_since_update >= cfg.max_lost_frames
            ):
                track.status = TrackStatus.REMOVED
            else:
                retained.append(track)
        self.tracks = retained

        # advance every live track; drop tracks whose state degenerated
        predicted_boxes: dict[int, BoundingBox] = {}
        alive = []
        for track in self.tracks:
            track.state = kalman.predict(track.state, cfg.noise_config)
            try:
                predicted_boxes[track.track_id] = kalman.project(track.state)
            except kalman.InvalidStateError:
                track.status = TrackStatus.REMOVED
                continue
            alive.append(track)
        self.tracks = alive

        high = [d for d in detections if d.score >= cfg.high_thresh]
        low = [d for d in detections if cfg.low_thresh <= d.score < cfg.high_thresh]

        def boxes_of(tracks):
            return [predicted_boxes[t.track_id] for t in tracks]

        # stage 1: confirmed + lost tracks vs high-confidence detections
        pool = [t for t in self.tracks if t.status in (TrackStatus.CONFIRMED, TrackStatus.LOST)]
        stage1 = assignment.solve(
            geometry.cost_matrix(boxes_of(pool), [d.box for d in high], cfg.shape_params),
            cfg.match_gate_stage1,
        )
        matched: list[tuple[Track, Detection]] = [(pool[r], high[c]) for r, c in stage1.matches]

        # stage 2: leftover tracks vs low-confidence detections
        remainder = [pool[r] for r in stage1.unmatched_rows]
        stage2 = assignment.solve(
            geometry.cost_matrix(boxes_of(remainder), [d.box for d in low], cfg.shape_params),
            cfg.match_gate_stage2,
        )
        matched += [(remainder[r], low[c]) for r, c in stage2.matches]
        missed = [remainder[r] for r in stage2.unmatched_rows]

        # stage 3: tentative tracks vs the high detections nobody claimed
        high_left = [high[c] for c in stage1.unmatched_cols]
        tentative = [t for t in self.tracks if t.status is TrackStatus.TENTATIVE]
        if cfg.use_unconfirmed_stage and tentative:
            stage3 = assignment.solve(
                geometry.cost_matrix(boxes_of(tentative), [d.box for d in high_left], cfg.shape_params),
                cfg.match_gate_unconfirmed,
            )
            matched += [(tentative[r], high_left[c]) for r, c in stage3.matches]
            missed_tentative = [tentative[r] for r in stage3.unmatched_rows]
            high_left = [high_left[c] for c in stage3.unmatched_cols]
        else:
            missed_tentative = tentative

        outputs: list[TrackOutput] = []
        for track, det in matched:
            track.state = kalman.update(track.state, det, cfg.noise_config)
            track.status = TrackStatus.CONFIRMED
            track.frames_since_update = 0
            track.last_score = det.score
            try:
                box = kalman.project(track.state)
            except kalman.InvalidStateError:
                track.status = TrackStatus.REMOVED
                continue
            outputs.append(TrackOutput(track.track_id, box, det.score))

        for track in missed:
            track.frames_since_update += 1
            track.status = TrackStatus.LOST
        for track in missed_tentative:
            track.status = TrackStatus.REMOVED
        self.tracks = [t for t in self.tracks if t.status is not TrackStatus.REMOVED]

        # seed new tracks from confident leftovers
        for det in high_left:
            if det.score >= cfg.new_track_thresh:
                status = TrackStatus.CONFIRMED if first_frame else TrackStatus.TENTATIVE
                track = Track(
                    track_id=self._next_id,
                    state=kalman.initiate(det.box, cfg.noise_config),
                    status=status,
                    frames_since_update=0,
                    last_score=det.score,
                )
                self._next_id += 1
                self.tracks.append(track)
                if first_frame:
                    outputs.append(TrackOutput(track.track_id, det.box, det.score))

        outputs.sort(key=lambda o: o.track_id)
        return FrameResult(frame_index=frame_index, outputs=outputs)


def run_sequence(detections_by_frame, config: TrackerConfig = TrackerConfig()) -> list[FrameResult]:
    """Track a whole sequence with a fresh tracker.

    Steps every frame from the smallest to the largest key (missing frames
    count as empty) so lost tracks keep coasting through detection gaps.
    Deterministic for identical inputs.
    """
    if not detections_by_frame:
        return []
    frames = sorted(detections_by_frame)
    tracker = SCTracker(config)
    results = []
    for frame in range(frames[0], frames[-1] + 1):
        try:
            results.append(tracker.step(frame, detections_by_frame.get(frame, [])))
        except (ValueError, TypeError) as exc:
            raise RuntimeError(f"tracking failed at frame {frame}: {exc}") from exc
    return results
