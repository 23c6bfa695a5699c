"""The crop loop that drives an adapter to a terminal session."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from PIL import Image

from ..errors import AdapterError, AdapterTimeout, BudgetExhausted, InvalidBBox, MalformedToolCall
from ..prediction import extract_object
from .adapters import Adapter, AgentContext
from .scoring import AgentScore, GroundTruth, score_session
from .session import Query, Session, crop, answer, start_session, zoom


@dataclass(frozen=True)
class ToolCall:
    tool: str
    args: dict


def parse_tool_call(raw: str) -> ToolCall:
    obj = extract_object(raw) if isinstance(raw, str) else None
    if not isinstance(obj, dict) or obj.get("tool") not in ("crop", "answer") or not isinstance(obj.get("args"), dict):
        raise MalformedToolCall(f"not a tool call: {str(raw)[:80]!r}")
    args = obj["args"]
    if obj["tool"] == "crop":
        try:
            rect = [float(args[k]) for k in ("x0", "y0", "x1", "y1")]
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedToolCall(f"crop needs numeric x0, y0, x1, y1: {args!r}") from e
        if not all(math.isfinite(v) for v in rect):
            raise MalformedToolCall(f"crop coordinates must be finite: {args!r}")
        return ToolCall("crop", dict(zip(("x0", "y0", "x1", "y1"), rect)))
    value = args.get("value")
    if not isinstance(value, (str, int, float)) or isinstance(value, bool):
        raise MalformedToolCall(f"answer needs a string value: {args!r}")
    return ToolCall("answer", {"value": str(value)})


def run_agent(session: Session, adapter: Adapter) -> Session:
    """Alternate adapter replies and tool execution until the session ends.

    At most ``budget + 1`` adapter calls are made. Protocol violations,
    timeouts and crops past the budget abort the session, which then
    scores as incorrect.
    """
    patches = [(r, zoom(session.image.crop(r))) for r in session.steps]
    for _ in range(session.budget + 1):
        ctx = AgentContext(session.query, session.setting, session.image, list(session.steps), list(patches),
                           session.budget - session.crops_used)
        try:
            call = parse_tool_call(adapter(ctx))
        except MalformedToolCall as e:
            session.aborted = f"malformed_tool_call: {e}"
            return session
        except AdapterTimeout as e:
            session.aborted = f"adapter_timeout: {e}"
            return session
        except AdapterError as e:
            session.aborted = f"adapter_error: {e}"
            return session
        if call.tool == "answer":
            answer(session, call.args["value"])
            return session
        try:
            patch = crop(session, [call.args[k] for k in ("x0", "y0", "x1", "y1")])
        except BudgetExhausted:
            session.aborted = "budget_exhausted"
            return session
        except InvalidBBox as e:
            session.aborted = f"invalid_crop: {e}"
            return session
        patches.append((session.steps[-1], patch))
    if not session.answered and session.aborted is None:
        session.aborted = "budget_exhausted"
    return session


def trajectory(session: Session, score: Optional[AgentScore] = None) -> dict:
    return {
        "query": {"id": session.query.id, "kind": session.query.kind, "referent": session.query.referent},
        "setting": session.setting,
        "budget": session.budget,
        "preloaded": session.preloaded,
        "steps": [list(r) for r in session.steps],
        "answer": session.answer,
        "steps_to_answer": session.steps_to_answer,
        "aborted": session.aborted,
        "score": score.to_dict() if score else None,
    }


def dump_trajectory(session: Session, score: Optional[AgentScore] = None) -> str:
    return json.dumps(trajectory(session, score), indent=1, sort_keys=True) + "\n"


def evaluate_query(image: Image.Image, query: Query, truth: GroundTruth, adapter: Adapter,
                   setting: str = "without_gt_bbox", budget: int = 10) -> tuple[Session, AgentScore]:
    initial = truth.bbox if setting == "with_gt_bbox" else None
    s = run_agent(start_session(image, query, setting, budget, initial), adapter)
    return s, score_session(s, truth)


def run_batch(image: Image.Image, items: Sequence[tuple[Query, GroundTruth]],
              adapter_for: Callable[[GroundTruth], Adapter], setting: str = "without_gt_bbox",
              budget: int = 10, workers: int = 1) -> list[tuple[Session, AgentScore]]:
    """Evaluate many queries on one image; results keep input order."""
    def one(item):
        q, t = item
        return evaluate_query(image, q, t, adapter_for(t), setting, budget)

    if workers <= 1:
        return [one(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(one, items))


def summarize(scores: Sequence[AgentScore]) -> dict:
    from .scoring import step_efficiency

    n = len(scores)
    traces = [s.trace_quality for s in scores if s.trace_quality is not None]
    return {
        "sessions": n,
        "accuracy": sum(s.answer_correct for s in scores) / n if n else 0.0,
        "target_coverage": sum(s.target_coverage for s in scores) / n if n else 0.0,
        "step_efficiency": step_efficiency(scores),
        "trace_quality": sum(traces) / len(traces) if traces else None,
    }
