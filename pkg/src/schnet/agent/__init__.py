"""Crop-tool agent harness: sessions, adapters, the tool loop and its scores."""

from .adapters import (TOOL_SCHEMA, AgentContext, EmptyAdapter, HttpAdapter, ProseAdapter, ScriptedAdapter,
                       ScriptedOracleAdapter, answer_call, crop_call, make_adapter, reply_text)
from .queries import make_queries
from .runner import dump_trajectory, evaluate_query, parse_tool_call, run_agent, run_batch, summarize, trajectory
from .scoring import (AgentScore, GroundTruth, score_session, step_efficiency, target_coverage, trace_quality,
                      waypoints)
from .session import DEFAULT_BUDGET, QUERY_KINDS, SETTINGS, Query, Session, answer, crop, start_session, zoom

__all__ = [
    "TOOL_SCHEMA", "AgentContext", "AgentScore", "DEFAULT_BUDGET", "EmptyAdapter", "GroundTruth", "HttpAdapter",
    "ProseAdapter", "QUERY_KINDS", "Query", "SETTINGS", "ScriptedAdapter", "ScriptedOracleAdapter", "Session",
    "answer", "answer_call", "crop", "crop_call", "dump_trajectory", "evaluate_query", "make_adapter",
    "make_queries", "parse_tool_call", "reply_text", "run_agent", "run_batch", "score_session", "start_session",
    "step_efficiency", "summarize", "target_coverage", "trace_quality", "trajectory", "waypoints", "zoom",
]
