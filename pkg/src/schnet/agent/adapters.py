"""Model adapters that turn an agent context into one raw tool-call reply.

Tool calls are JSON objects ``{"tool": "crop", "args": {"x0", "y0", "x1", "y1"}}``
or ``{"tool": "answer", "args": {"value": ...}}``.
"""

from __future__ import annotations

import base64
import io
import json
import os
import socket
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from typing import Optional, Protocol

from PIL import Image

from ..errors import AdapterError, AdapterTimeout
from .scoring import GroundTruth
from .session import Query

TOOL_SCHEMA = [
    {"type": "function", "function": {
        "name": "crop",
        "description": "Zoom into the rectangle (x0, y0, x1, y1) of the full image, in pixels.",
        "parameters": {"type": "object", "required": ["x0", "y0", "x1", "y1"],
                       "properties": {k: {"type": "number"} for k in ("x0", "y0", "x1", "y1")}},
    }},
    {"type": "function", "function": {
        "name": "answer",
        "description": "Give the final answer and end the session.",
        "parameters": {"type": "object", "required": ["value"], "properties": {"value": {"type": "string"}}},
    }},
]


@dataclass
class AgentContext:
    query: Query
    setting: str
    image: Image.Image
    steps: list
    patches: list  # (rect, zoomed patch) per logged step
    remaining: int


class Adapter(Protocol):
    def __call__(self, context: AgentContext) -> str: ...


def crop_call(rect) -> str:
    return json.dumps({"tool": "crop", "args": dict(zip(("x0", "y0", "x1", "y1"), rect))})


def answer_call(value: str) -> str:
    return json.dumps({"tool": "answer", "args": {"value": value}})


@dataclass
class ScriptedOracleAdapter:
    """Crops the ground-truth region once (unless already logged) and answers."""

    truth: GroundTruth

    def __call__(self, context: AgentContext) -> str:
        if tuple(self.truth.bbox) not in {tuple(s) for s in context.steps} and context.remaining > 0:
            return crop_call(self.truth.bbox)
        return answer_call(self.truth.answer)


@dataclass
class ScriptedAdapter:
    """Replays a fixed list of raw replies, then answers ``""``."""

    replies: list[str]
    _i: int = 0

    def __call__(self, context: AgentContext) -> str:
        if self._i < len(self.replies):
            self._i += 1
            return self.replies[self._i - 1]
        return answer_call("")


class EmptyAdapter:
    def __call__(self, context: AgentContext) -> str:
        return answer_call("")


class ProseAdapter:
    def __call__(self, context: AgentContext) -> str:
        return "I think the answer is probably written near the top left of the drawing."


def _data_uri(img: Image.Image) -> str:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return "data:image/png;base64," + base64.b64encode(buf.getvalue()).decode("ascii")


SYSTEM_PROMPT = (
    "You inspect a schematic image with two tools. Call crop to zoom into a region and answer to finish. "
    "Reply with exactly one JSON object {\"tool\": name, \"args\": {...}}."
)


@dataclass
class HttpAdapter:
    """Chat-completions style client; the bearer token comes from ``api_key_env``."""

    url: str
    model: str = "default"
    api_key_env: str = "SCHNET_API_KEY"
    timeout: float = 60.0
    extra: dict = field(default_factory=dict)

    def payload(self, context: AgentContext) -> dict:
        w, h = context.image.size
        content = [
            {"type": "text", "text": f"{context.query.question} Image size {w}x{h} px. "
                                     f"{context.remaining} crops left."},
            {"type": "image_url", "image_url": {"url": _data_uri(context.image)}},
        ]
        for rect, patch in context.patches:
            content.append({"type": "text", "text": f"crop {list(rect)}:"})
            content.append({"type": "image_url", "image_url": {"url": _data_uri(patch)}})
        return {"model": self.model, "tools": TOOL_SCHEMA, "temperature": 0,
                "messages": [{"role": "system", "content": SYSTEM_PROMPT}, {"role": "user", "content": content}],
                **self.extra}

    def __call__(self, context: AgentContext) -> str:
        body = json.dumps(self.payload(context)).encode()
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        req = urllib.request.Request(self.url, data=body, headers=headers, method="POST")
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                data = json.loads(resp.read().decode())
        except (socket.timeout, TimeoutError) as e:
            raise AdapterTimeout(f"{self.url}: no reply within {self.timeout}s") from e
        except urllib.error.URLError as e:
            if isinstance(e.reason, (socket.timeout, TimeoutError)):
                raise AdapterTimeout(f"{self.url}: no reply within {self.timeout}s") from e
            raise AdapterError(f"{self.url}: {e}") from e
        except json.JSONDecodeError as e:
            raise AdapterError(f"{self.url}: reply is not JSON") from e
        return reply_text(data)


def reply_text(data: dict) -> str:
    """Raw tool-call text from a chat-completions reply (native tool calls win)."""
    try:
        msg = data["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as e:
        raise AdapterError("reply has no choices[0].message") from e
    calls = msg.get("tool_calls") or []
    if calls:
        fn = calls[0].get("function", {})
        args = fn.get("arguments", "{}")
        try:
            args = json.loads(args) if isinstance(args, str) else args
        except json.JSONDecodeError:
            return str(args)
        return json.dumps({"tool": fn.get("name"), "args": args})
    return msg.get("content") or ""


def make_adapter(name: str, truth: Optional[GroundTruth] = None, **kw) -> Adapter:
    """``scripted`` | ``empty`` | ``prose`` | an http(s) URL."""
    if name == "scripted":
        if truth is None:
            raise ValueError("the scripted oracle needs ground truth")
        return ScriptedOracleAdapter(truth)
    if name == "empty":
        return EmptyAdapter()
    if name == "prose":
        return ProseAdapter()
    if name.startswith(("http://", "https://")):
        return HttpAdapter(name, **kw)
    raise ValueError(f"unknown adapter {name!r}")
