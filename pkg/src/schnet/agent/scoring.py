"""Agentic scores: target coverage, step efficiency and trace following."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..boxes import bbox_iou, contains
from ..metrics import exact_match
from .session import Session

DEFAULT_WAYPOINTS = 16

Point = tuple[float, float]


@dataclass(frozen=True)
class GroundTruth:
    answer: str
    bbox: tuple[int, int, int, int]
    polylines: tuple[tuple[Point, ...], ...] = ()


@dataclass(frozen=True)
class AgentScore:
    target_coverage: float
    steps_to_answer: Optional[int]
    answer_correct: bool
    trace_quality: Optional[float]

    def to_dict(self) -> dict:
        return {"target_coverage": self.target_coverage, "steps_to_answer": self.steps_to_answer,
                "answer_correct": self.answer_correct, "trace_quality": self.trace_quality}


def target_coverage(session: Session, gt_bbox) -> float:
    return max((bbox_iou(r, gt_bbox) for r in session.steps), default=0.0)


def step_efficiency(scores: Iterable[AgentScore]) -> Optional[float]:
    """Mean steps over correctly answered sessions; ``None`` when there are none."""
    steps = [s.steps_to_answer for s in scores if s.answer_correct and s.steps_to_answer is not None]
    return sum(steps) / len(steps) if steps else None


def waypoints(polylines: Sequence[Sequence[Point]], n: int = DEFAULT_WAYPOINTS) -> list[Point]:
    """``n`` points at uniform arc length along the concatenated polylines."""
    segs = []
    for line in polylines:
        segs.extend((line[i], line[i + 1]) for i in range(len(line) - 1))
    pts = [p for line in polylines for p in line]
    if not pts:
        return []
    lengths = [math.dist(a, b) for a, b in segs]
    total = sum(lengths)
    if total == 0:
        return [tuple(pts[0])] * n
    out = []
    targets = [total * i / (n - 1) for i in range(n)] if n > 1 else [0.0]
    k, acc = 0, 0.0
    for t in targets:
        while k < len(segs) - 1 and acc + lengths[k] < t:
            acc += lengths[k]
            k += 1
        (ax, ay), (bx, by) = segs[k]
        u = 0.0 if lengths[k] == 0 else min(1.0, max(0.0, (t - acc) / lengths[k]))
        out.append((ax + u * (bx - ax), ay + u * (by - ay)))
    return out


def ordered_coverage(points: Sequence[Point], crops: Sequence) -> int:
    """Longest run of points visited by crops in non-decreasing crop order."""
    best = [0] * len(crops)
    for p in points:
        hit = [j for j, r in enumerate(crops) if contains(r, *p)]
        if not hit:
            continue
        prefix, run = [], 0
        for v in best:
            run = max(run, v)
            prefix.append(run)
        for j in hit:
            best[j] = prefix[j] + 1
    return max(best, default=0)


def trace_quality(session: Session, polylines, n: int = DEFAULT_WAYPOINTS) -> float:
    """Share of net waypoints the crop sequence follows in order, either direction."""
    pts = waypoints(polylines, n)
    if not pts:
        return 0.0
    fwd = ordered_coverage(pts, session.steps)
    back = ordered_coverage(pts[::-1], session.steps)
    return max(fwd, back) / len(pts)


def score_session(session: Session, truth: GroundTruth) -> AgentScore:
    correct = session.answered and session.aborted is None and exact_match(session.answer, truth.answer)
    tq = trace_quality(session, truth.polylines) if session.query.kind == "net_name" else None
    return AgentScore(target_coverage(session, truth.bbox), session.steps_to_answer, bool(correct), tq)
