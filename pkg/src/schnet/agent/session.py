"""Crop-tool sessions: one image, one query, a bounded log of crops."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from PIL import Image

from ..boxes import clamp, well_ordered
from ..errors import AlreadyAnswered, BudgetExhausted, InvalidBBox

QUERY_KINDS = ("symbol_name", "value", "pin_name", "pad_name", "net_name")
SETTINGS = ("without_gt_bbox", "with_gt_bbox")
DEFAULT_BUDGET = 10
MIN_PATCH_SIDE = 512

Rect = tuple[int, int, int, int]


@dataclass(frozen=True)
class Query:
    id: str
    kind: str
    referent: str

    def __post_init__(self):
        if self.kind not in QUERY_KINDS:
            raise ValueError(f"unknown query kind {self.kind!r}")

    @property
    def question(self) -> str:
        noun = {"symbol_name": "name", "value": "value", "pin_name": "pin name",
                "pad_name": "pad name", "net_name": "net name"}[self.kind]
        return f"What is the {noun} of {self.referent}?"


@dataclass
class Session:
    image: Image.Image
    query: Query
    setting: str
    budget: int
    steps: list[Rect] = field(default_factory=list)
    answer: Optional[str] = None
    steps_to_answer: Optional[int] = None
    crops_used: int = 0
    aborted: Optional[str] = None
    preloaded: int = 0

    @property
    def answered(self) -> bool:
        return self.answer is not None

    @property
    def can_crop(self) -> bool:
        return not self.answered and self.aborted is None and self.crops_used < self.budget

    @property
    def terminal(self) -> bool:
        return not self.can_crop

    def crop(self, rect) -> Image.Image:
        return crop(self, rect)

    def submit(self, value: str) -> "Session":
        return answer(self, value)


def _snap(rect, width: int, height: int) -> Rect:
    x0, y0, x1, y1 = clamp([float(c) for c in rect], width, height)
    return (int(math.floor(x0)), int(math.floor(y0)), int(math.ceil(x1)), int(math.ceil(y1)))


def _check_rect(rect) -> None:
    try:
        ok = len(rect) == 4 and all(math.isfinite(float(c)) for c in rect) and well_ordered(rect)
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise InvalidBBox(f"not a well-ordered rectangle: {rect!r}")


def start_session(image: Image.Image, query: Query, setting: str = "without_gt_bbox",
                  budget: int = DEFAULT_BUDGET, initial_bbox=None) -> Session:
    """Open a session; ``with_gt_bbox`` logs ``initial_bbox`` as step 0.

    The preloaded crop is free: it does not consume budget.
    """
    if setting not in SETTINGS:
        raise ValueError(f"unknown setting {setting!r}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    s = Session(image=image, query=query, setting=setting, budget=budget)
    if setting == "with_gt_bbox":
        if initial_bbox is None:
            raise InvalidBBox("with_gt_bbox needs an initial bbox")
        _check_rect(initial_bbox)
        r = _snap(initial_bbox, *image.size)
        if not well_ordered(r):
            raise InvalidBBox(f"initial bbox {initial_bbox!r} lies outside the image")
        s.steps.append(r)
        s.preloaded = 1
    return s


def zoom(patch: Image.Image, min_side: int = MIN_PATCH_SIDE) -> Image.Image:
    w, h = patch.size
    if min(w, h) >= min_side:
        return patch
    k = min_side / min(w, h)
    return patch.resize((max(min_side, round(w * k)), max(min_side, round(h * k))), Image.Resampling.NEAREST)


def crop(session: Session, rect) -> Image.Image:
    """Clamp ``rect`` to the image, log it and return the zoomed patch."""
    if not session.can_crop:
        if session.answered:
            raise AlreadyAnswered("session already answered")
        raise BudgetExhausted(f"crop budget of {session.budget} used up")
    _check_rect(rect)
    r = _snap(rect, *session.image.size)
    if not well_ordered(r):
        raise InvalidBBox(f"crop {rect!r} lies outside the image")
    session.steps.append(r)
    session.crops_used += 1
    return zoom(session.image.crop(r))


def answer(session: Session, value: str) -> Session:
    if session.answered:
        raise AlreadyAnswered("session already answered")
    session.answer = "" if value is None else str(value)
    session.steps_to_answer = len(session.steps)
    return session
