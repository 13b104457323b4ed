"""Multi-object tracking evaluation: event counts, MOTA and identity-F1.

Per-frame correspondence between ground truth and hypotheses uses an IoU
threshold with match persistence: a pair matched in the previous frame is
kept while its IoU stays above the threshold, and only the remainder is
re-matched by minimum-cost assignment on ``1 - IoU``.  False positives are
unmatched hypotheses, false negatives unmatched ground-truth boxes, and an
identity switch is counted whenever a matched ground-truth object changes
hypothesis id relative to its last matched id.

``MOTA = 1 - (FN + FP + IDSW) / GT`` (can be negative).  IDF1 comes from a
single global bipartite matching between ground-truth and predicted ids that
maximizes the number of frame-wise overlapping (IoU above threshold)
box pairs: ``IDF1 = 2 * IDTP / (2 * IDTP + IDFP + IDFN)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import assignment
from .geometry import BoundingBox, boxes_to_corners, pairwise_iou

DEFAULT_IOU_MATCH_THRESH = 0.5


@dataclass(frozen=True)
class MetricsReport:
    """Evaluation summary; ``mota`` and ``idf1`` are ratios (1.0 = 100%)."""

    mota: float
    idf1: float
    idsw: int
    fp: int
    fn: int
    gt_count: int
    matches: int

    CSV_HEADER = "mota,idf1,idsw,fp,fn,gt_count,matches"

    def to_text(self) -> str:
        """Human-readable key-value block, percentages for the ratio fields."""
        lines = [
            f"MOTA      {self.mota * 100:.2f}%",
            f"IDF1      {self.idf1 * 100:.2f}%",
            f"IDSW      {self.idsw}",
            f"FP        {self.fp}",
            f"FN        {self.fn}",
            f"GT        {self.gt_count}",
            f"Matches   {self.matches}",
        ]
        return "\n".join(lines)

    def to_csv(self) -> str:
        """Header plus one data line, machine-readable."""
        return f"{self.CSV_HEADER}\n{self.to_csv_line()}"

    def to_csv_line(self) -> str:
        return (
            f"{self.mota:.6f},{self.idf1:.6f},{self.idsw},{self.fp},"
            f"{self.fn},{self.gt_count},{self.matches}"
        )

    @classmethod
    def from_csv(cls, text: str) -> "MetricsReport":
        """Parse the output of :meth:`to_csv` (header optional)."""
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty report text")
        if lines[0].strip() == cls.CSV_HEADER:
            lines = lines[1:]
        if len(lines) != 1:
            raise ValueError(f"expected one data line, got {len(lines)}")
        parts = lines[0].split(",")
        if len(parts) != 7:
            raise ValueError(f"expected 7 fields, got {len(parts)}")
        return cls(
            mota=float(parts[0]),
            idf1=float(parts[1]),
            idsw=int(parts[2]),
            fp=int(parts[3]),
            fn=int(parts[4]),
            gt_count=int(parts[5]),
            matches=int(parts[6]),
        )


def _normalize(frame_entries) -> list[tuple[int, BoundingBox]]:
    out = []
    for entry in frame_entries:
        track_id, box = entry[0], entry[1]
        out.append((int(track_id), box))
    return out


def evaluate(gt, results, iou_match_thresh: float = DEFAULT_IOU_MATCH_THRESH) -> MetricsReport:
    """Score tracking results against ground truth.

    Args:
        gt: map frame -> iterable of ``(id, BoundingBox)`` (extra trailing
            tuple elements are ignored, so ground-truth file entries can be
            passed after filtering to the evaluable rows).
        results: map frame -> iterable of ``(id, BoundingBox)``.
        iou_match_thresh: minimum IoU for a gt/hypothesis correspondence.

    Raises:
        ValueError: if the ground truth contains no boxes (the accuracy
            denominator would be undefined).
    """
    gt = {frame: _normalize(rows) for frame, rows in gt.items() if rows}
    results = {frame: _normalize(rows) for frame, rows in results.items() if rows}
    gt_count = sum(len(rows) for rows in gt.values())
    if gt_count == 0:
        raise ValueError("ground truth is empty; tracking accuracy is undefined")

    fp = fn = idsw = tp = 0
    active_pairs: dict[int, int] = {}
    last_matched: dict[int, int] = {}

    for frame in sorted(set(gt) | set(results)):
        gt_rows = gt.get(frame, [])
        hyp_rows = results.get(frame, [])
        gt_ids = [g for g, _ in gt_rows]
        hyp_ids = [h for h, _ in hyp_rows]
        iou_matrix = pairwise_iou(
            boxes_to_corners([b for _, b in gt_rows]),
            boxes_to_corners([b for _, b in hyp_rows]),
        )

        gt_index = {g: i for i, g in enumerate(gt_ids)}
        hyp_index = {h: j for j, h in enumerate(hyp_ids)}

        # keep last frame's pairs that still overlap well enough
        kept: list[tuple[int, int]] = []
        for g, h in active_pairs.items():
            i, j = gt_index.get(g), hyp_index.get(h)
            if i is not None and j is not None and iou_matrix[i, j] >= iou_match_thresh:
                kept.append((g, h))
        kept_gt = {g for g, _ in kept}
        kept_hyp = {h for _, h in kept}

        free_gt = [i for i, g in enumerate(gt_ids) if g not in kept_gt]
        free_hyp = [j for j, h in enumerate(hyp_ids) if h not in kept_hyp]
        costs = 1.0 - iou_matrix[np.ix_(free_gt, free_hyp)]
        solved = assignment.solve(costs, gate=1.0 - iou_match_thresh)
        fresh = [(gt_ids[free_gt[r]], hyp_ids[free_hyp[c]]) for r, c in solved.matches]

        pairs = kept + fresh
        tp += len(pairs)
        fp += len(hyp_rows) - len(pairs)
        fn += len(gt_rows) - len(pairs)
        for g, h in fresh:
            if g in last_matched and last_matched[g] != h:
                idsw += 1
        for g, h in pairs:
            last_matched[g] = h
        active_pairs = dict(pairs)

    mota = 1.0 - (fn + fp + idsw) / gt_count
    idf1 = _identity_f1(gt, results, iou_match_thresh)
    return MetricsReport(
        mota=mota, idf1=idf1, idsw=idsw, fp=fp, fn=fn, gt_count=gt_count, matches=tp
    )


def _identity_f1(gt, results, iou_match_thresh: float) -> float:
    """Global id-to-id matching score over frame-wise overlaps."""
    gt_len: dict[int, int] = {}
    hyp_len: dict[int, int] = {}
    overlap: dict[tuple[int, int], int] = {}

    for frame in sorted(set(gt) | set(results)):
        gt_rows = gt.get(frame, [])
        hyp_rows = results.get(frame, [])
        for g, _ in gt_rows:
            gt_len[g] = gt_len.get(g, 0) + 1
        for h, _ in hyp_rows:
            hyp_len[h] = hyp_len.get(h, 0) + 1
        if not gt_rows or not hyp_rows:
            continue
        iou_matrix = pairwise_iou(
            boxes_to_corners([b for _, b in gt_rows]),
            boxes_to_corners([b for _, b in hyp_rows]),
        )
        for i, (g, _) in enumerate(gt_rows):
            for j, (h, _) in enumerate(hyp_rows):
                if iou_matrix[i, j] >= iou_match_thresh:
                    overlap[(g, h)] = overlap.get((g, h), 0) + 1

    gt_ids = sorted(gt_len)
    hyp_ids = sorted(hyp_len)
    total = sum(gt_len.values()) + sum(hyp_len.values())
    if not hyp_ids:
        return 0.0

    n_g, n_h = len(gt_ids), len(hyp_ids)
    big = float(total) * 10.0 + 10.0
    costs = np.full((n_g + n_h, n_h + n_g), big)
    for i, g in enumerate(gt_ids):
        for j, h in enumerate(hyp_ids):
            # frames where the pair disagrees: id-level FN plus FP
            costs[i, j] = gt_len[g] + hyp_len[h] - 2 * overlap.get((g, h), 0)
        costs[i, n_h + i] = gt_len[g]
    for j, h in enumerate(hyp_ids):
        costs[n_g + j, j] = hyp_len[h]
    costs[n_g:, n_h:] = 0.0

    rows, cols = linear_sum_assignment(costs)
    disagreement = float(costs[rows, cols].sum())
    idtp = (total - disagreement) / 2.0
    return 2.0 * idtp / total
