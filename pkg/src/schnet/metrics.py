"""Evaluation metrics for a predicted netlist graph against ground truth.

Every ratio is stored together with the counts it was computed from, so
reports can be re-derived, summed (micro) or averaged (macro) exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .boxes import bbox_iou
from .graph import NetlistGraph, center
from .matching import DEFAULT_WEIGHTS, MatchResult, MatchWeights, match_by_iou, match_graphs
from .prediction import parse_prediction, prediction_to_graph

__all__ = [
    "F1Counts", "Ratio", "MetricReport", "attribute_f1", "bbox_iou", "detection_f1", "edge_iou", "evaluate_all", "exact_match",
    "graph_edge_iou", "graph_ged", "kendall_tau_layout", "net_f1", "net_name_accuracy", "pass_rate",
    "aggregate", "METRIC_NAMES",
]


def _div(a: float, b: float) -> float:
    return a / b if b else 0.0


@dataclass(frozen=True)
class F1Counts:
    tp: int
    n_pred: int
    n_gt: int

    @property
    def precision(self) -> float:
        return _div(self.tp, self.n_pred)

    @property
    def recall(self) -> float:
        return _div(self.tp, self.n_gt)

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return _div(2 * p * r, p + r)

    def __add__(self, other: "F1Counts") -> "F1Counts":
        return F1Counts(self.tp + other.tp, self.n_pred + other.n_pred, self.n_gt + other.n_gt)


@dataclass(frozen=True)
class Ratio:
    num: float
    den: float

    @property
    def value(self) -> float:
        return _div(self.num, self.den)

    def __add__(self, other: "Ratio") -> "Ratio":
        return Ratio(self.num + other.num, self.den + other.den)


def detection_f1(matched: int, n_pred: int, n_gt: int) -> tuple[float, float, float]:
    c = F1Counts(matched, n_pred, n_gt)
    return c.precision, c.recall, c.f1


def exact_match(a: Optional[str], b: Optional[str]) -> bool:
    """Byte equality after trimming surrounding whitespace; case-sensitive."""
    return (a or "").strip() == (b or "").strip()


def attribute_f1(pairs: Iterable[tuple[Optional[str], Optional[str]]]) -> F1Counts:
    """Exact-match F1 over matched ``(pred, gt)`` attribute pairs.

    Strings must be identical after trimming surrounding whitespace; case
    is significant.
    """
    pairs = list(pairs)
    tp = sum(1 for a, b in pairs if exact_match(a, b))
    return F1Counts(tp, len(pairs), len(pairs))


def _mapped_connectivity(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult):
    pm = match.pins
    gt_edges = {e.key: e for e in gt.connectivity_edges}
    hits = []
    for e in pred.connectivity_edges:
        a, b = pm.get(e.pin_a), pm.get(e.pin_b)
        if a is None or b is None:
            continue
        key = (a, b) if a < b else (b, a)
        if key in gt_edges:
            hits.append((e, gt_edges[key]))
    return hits


def net_f1(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult) -> F1Counts:
    """Pairwise-closure F1 of predicted connectivity mapped through the pin map."""
    hits = _mapped_connectivity(pred, gt, match)
    return F1Counts(len(hits), len(pred.connectivity_edges), len(gt.connectivity_edges))


def net_name_accuracy(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult) -> Ratio:
    hits = _mapped_connectivity(pred, gt, match)
    correct = sum(1 for pe, ge in hits if exact_match(pe.net_name, ge.net_name))
    return Ratio(correct, len(hits))


def _edge_sets(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult):
    nm = match.node_map

    def pnode(n):
        return ("g", nm[n]) if n in nm else ("p", n)

    def gnode(n):
        return ("g", n)

    def edges(g, node):
        out = {("m", node(s), node(p)) for s, p in g.membership_edges}
        out |= {("c",) + tuple(sorted((node(e.pin_a), node(e.pin_b)))) for e in g.connectivity_edges}
        return out

    return edges(pred, pnode), edges(gt, gnode)


def edge_iou(pred_edges: set, gt_edges: set) -> Ratio:
    return Ratio(len(pred_edges & gt_edges), len(pred_edges | gt_edges))


def graph_edge_iou(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult) -> Ratio:
    """IoU of membership and connectivity edge sets under the node map."""
    return edge_iou(*_edge_sets(pred, gt, match))


def graph_ged(pred: NetlistGraph, gt: NetlistGraph, match: MatchResult) -> Ratio:
    """Edit cost under the fixed correspondence over the combined graph size.

    ``1 - value`` is the reported similarity; see :attr:`MetricReport.one_minus_ged`.
    """
    pe, ge = _edge_sets(pred, gt, match)
    matched = len(match.symbol_map) + len(match.pin_map)
    cost = (gt.node_count - matched) + (pred.node_count - matched) + len(pe ^ ge)
    denom = gt.node_count + len(ge) + pred.node_count + len(pe)
    return Ratio(min(cost, denom), denom)


def tau_b(a: Sequence[float], b: Sequence[float]) -> float:
    """Kendall tau-b from integer pair counts.

    Counting in integers keeps perfect agreement at exactly 1.0, which a
    floating-point rank implementation does not guarantee under ties.
    """
    x, y = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    iu = np.triu_indices(len(x), k=1)
    sx = np.sign(x[:, None] - x[None, :])[iu].astype(np.int64)
    sy = np.sign(y[:, None] - y[None, :])[iu].astype(np.int64)
    nx, ny = int(np.count_nonzero(sx)), int(np.count_nonzero(sy))
    if nx == 0 or ny == 0:
        return math.nan
    return int(np.dot(sx, sy)) / math.sqrt(nx * ny)


def _axis_tau(a: Sequence[float], b: Sequence[float]) -> float:
    const_a, const_b = len(set(a)) == 1, len(set(b)) == 1
    if const_a or const_b:
        return 1.0 if const_a and const_b else 0.0
    return tau_b(a, b)


def kendall_tau_layout(pairs: Sequence[tuple[Sequence[float], Sequence[float]]]) -> tuple[float, bool]:
    """Mean of x- and y-axis Kendall tau-b over matched center pairs.

    ``pairs`` holds ``(pred_center, gt_center)``. Returns ``(tau, defined)``;
    fewer than two pairs gives ``(0.0, False)``. An axis on which both sides
    are constant counts as fully concordant.
    """
    if len(pairs) < 2:
        return 0.0, False
    px = [p[0] for p, _ in pairs]
    py = [p[1] for p, _ in pairs]
    gx = [g[0] for _, g in pairs]
    gy = [g[1] for _, g in pairs]
    return (_axis_tau(px, gx) + _axis_tau(py, gy)) / 2.0, True


def pass_rate(raw_outputs: Sequence) -> float:
    if not raw_outputs:
        return 0.0
    return sum(1 for r in raw_outputs if parse_prediction(r).ok) / len(raw_outputs)


# --------------------------------------------------------------------------
# report

METRIC_NAMES = (
    "symbol_f1", "symbol_f1_iou", "symbol_name_f1", "symbol_value_f1", "symbol_type_f1",
    "symbol_bbox_iou", "pin_f1", "pin_f1_iou", "pin_name_f1", "pad_name_f1", "pin_bbox_iou",
    "net_f1", "net_name_acc", "edge_iou", "one_minus_ged", "kendall_tau", "pass_rate",
)

_F1_FIELDS = ("symbol_detection", "symbol_detection_iou", "symbol_name", "symbol_value", "symbol_type",
              "pin_detection", "pin_detection_iou", "pin_name", "pad_name", "net")
_RATIO_FIELDS = ("symbol_bbox_iou", "pin_bbox_iou", "net_name", "edge_iou", "ged", "passed_ratio")


@dataclass(frozen=True)
class MetricReport:
    passed: bool
    symbol_detection: F1Counts
    symbol_detection_iou: F1Counts
    symbol_name: F1Counts
    symbol_value: F1Counts
    symbol_type: F1Counts
    symbol_bbox_iou: Ratio
    pin_detection: F1Counts
    pin_detection_iou: F1Counts
    pin_name: F1Counts
    pad_name: F1Counts
    pin_bbox_iou: Ratio
    net: F1Counts
    net_name: Ratio
    edge_iou: Ratio
    ged: Ratio
    kendall_tau: float
    kendall_defined: bool
    errors: tuple[tuple[str, str], ...] = ()

    @property
    def passed_ratio(self) -> Ratio:
        return Ratio(1 if self.passed else 0, 1)

    @property
    def one_minus_ged(self) -> float:
        if self.ged.den == 0:
            return 1.0
        return 1.0 - min(1.0, self.ged.value)

    def values(self) -> dict[str, float]:
        return {
            "symbol_f1": self.symbol_detection.f1,
            "symbol_f1_iou": self.symbol_detection_iou.f1,
            "symbol_name_f1": self.symbol_name.f1,
            "symbol_value_f1": self.symbol_value.f1,
            "symbol_type_f1": self.symbol_type.f1,
            "symbol_bbox_iou": self.symbol_bbox_iou.value,
            "pin_f1": self.pin_detection.f1,
            "pin_f1_iou": self.pin_detection_iou.f1,
            "pin_name_f1": self.pin_name.f1,
            "pad_name_f1": self.pad_name.f1,
            "pin_bbox_iou": self.pin_bbox_iou.value,
            "net_f1": self.net.f1,
            "net_name_acc": self.net_name.value,
            "edge_iou": self.edge_iou.value,
            "one_minus_ged": self.one_minus_ged,
            "kendall_tau": self.kendall_tau,
            "pass_rate": 1.0 if self.passed else 0.0,
        }

    def to_dict(self) -> dict:
        counts = {}
        for name in _F1_FIELDS:
            c = getattr(self, name)
            counts[name] = {"tp": c.tp, "n_pred": c.n_pred, "n_gt": c.n_gt}
        for name in _RATIO_FIELDS:
            r = getattr(self, name)
            counts[name] = {"num": r.num, "den": r.den}
        return {
            "passed": self.passed,
            "metrics": {k: round(v, 12) for k, v in self.values().items()},
            "kendall_defined": self.kendall_defined,
            "counts": counts,
            "errors": [list(e) for e in self.errors],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        c = d["counts"]
        kw = {name: F1Counts(**c[name]) for name in _F1_FIELDS}
        kw.update({name: Ratio(**c[name]) for name in _RATIO_FIELDS if name != "passed_ratio"})
        return cls(passed=d["passed"], kendall_tau=d["metrics"]["kendall_tau"],
                   kendall_defined=d["kendall_defined"], errors=tuple(tuple(e) for e in d.get("errors", [])), **kw)


def zero_report(gt: NetlistGraph, errors=()) -> MetricReport:
    ns, npin = len(gt.symbols), len(gt.pins)
    ne = gt.edge_count
    z = lambda n: F1Counts(0, 0, n)  # noqa: E731
    return MetricReport(
        passed=False,
        symbol_detection=z(ns), symbol_detection_iou=z(ns),
        symbol_name=z(0), symbol_value=z(0), symbol_type=z(0), symbol_bbox_iou=Ratio(0, 0),
        pin_detection=z(npin), pin_detection_iou=z(npin),
        pin_name=z(0), pad_name=z(0), pin_bbox_iou=Ratio(0, 0),
        net=z(len(gt.connectivity_edges)), net_name=Ratio(0, 0),
        edge_iou=Ratio(0, ne), ged=Ratio(gt.node_count + ne, gt.node_count + ne),
        kendall_tau=0.0, kendall_defined=False, errors=tuple(errors),
    )


def _mean_iou(pairs, pred_index, gt_index) -> Ratio:
    total, n = 0.0, 0
    for p, g, _ in pairs:
        a, b = pred_index[p].bbox, gt_index[g].bbox
        n += 1
        if a is not None and b is not None:
            total += bbox_iou(a, b)
    return Ratio(total, n)


def evaluate_graphs(pred: NetlistGraph, gt: NetlistGraph, w: MatchWeights = DEFAULT_WEIGHTS,
                    match: Optional[MatchResult] = None) -> MetricReport:
    match = match or match_graphs(pred, gt, w)
    ps, gs = pred.symbol_index, gt.symbol_index
    pp, gp = pred.pin_index, gt.pin_index

    iou_sym = match_by_iou([s.bbox for s in pred.symbols], [s.bbox for s in gt.symbols], w.iou_threshold)
    iou_pin = match_by_iou([p.bbox for p in pred.pins], [p.bbox for p in gt.pins], w.iou_threshold)

    layout = []
    for p, g, _ in match.symbol_map:
        if ps[p].bbox is not None and gs[g].bbox is not None:
            layout.append((center(ps[p].bbox), center(gs[g].bbox)))
    tau, defined = kendall_tau_layout(layout)

    return MetricReport(
        passed=True,
        symbol_detection=F1Counts(len(match.symbol_map), len(pred.symbols), len(gt.symbols)),
        symbol_detection_iou=F1Counts(len(iou_sym), len(pred.symbols), len(gt.symbols)),
        symbol_name=attribute_f1((ps[p].name, gs[g].name) for p, g, _ in match.symbol_map),
        symbol_value=attribute_f1((ps[p].value, gs[g].value) for p, g, _ in match.symbol_map),
        symbol_type=attribute_f1((ps[p].symbol_type, gs[g].symbol_type) for p, g, _ in match.symbol_map),
        symbol_bbox_iou=_mean_iou(match.symbol_map, ps, gs),
        pin_detection=F1Counts(len(match.pin_map), len(pred.pins), len(gt.pins)),
        pin_detection_iou=F1Counts(len(iou_pin), len(pred.pins), len(gt.pins)),
        pin_name=attribute_f1((pp[p].pin_name, gp[g].pin_name) for p, g, _ in match.pin_map),
        pad_name=attribute_f1((pp[p].pad_name, gp[g].pad_name) for p, g, _ in match.pin_map),
        pin_bbox_iou=_mean_iou(match.pin_map, pp, gp),
        net=net_f1(pred, gt, match),
        net_name=net_name_accuracy(pred, gt, match),
        edge_iou=graph_edge_iou(pred, gt, match),
        ged=graph_ged(pred, gt, match),
        kendall_tau=tau,
        kendall_defined=defined,
    )


def evaluate_all(pred: Union[str, dict, NetlistGraph, None], gt: NetlistGraph,
                 w: MatchWeights = DEFAULT_WEIGHTS) -> MetricReport:
    """Match a prediction against ``gt`` and compute every metric.

    ``pred`` may be raw model text, a decoded prediction document or a
    graph. Predictions that fail validation give a zero report with
    ``passed=False``; nothing is raised.
    """
    if isinstance(pred, NetlistGraph):
        return evaluate_graphs(pred, gt, w)
    if pred is None:
        return zero_report(gt, [("", "missing prediction")])
    parsed = parse_prediction(pred)
    if not parsed.ok:
        return zero_report(gt, parsed.errors)
    return evaluate_graphs(prediction_to_graph(parsed.document, gt.image_dims), gt, w)


def aggregate(reports: Sequence[MetricReport], micro: bool = False) -> dict:
    """Corpus summary: macro mean of per-diagram values, or pooled counts."""
    out: dict = {"n": len(reports), "mode": "micro" if micro else "macro"}
    if not reports:
        out["metrics"] = {k: 0.0 for k in METRIC_NAMES}
        return out
    if not micro:
        vals = [r.values() for r in reports]
        out["metrics"] = {k: sum(v[k] for v in vals) / len(vals) for k in METRIC_NAMES}
        return out
    f1 = {name: sum((getattr(r, name) for r in reports), F1Counts(0, 0, 0)) for name in _F1_FIELDS}
    ratio = {name: sum((getattr(r, name) for r in reports), Ratio(0, 0)) for name in _RATIO_FIELDS}
    defined = [r.kendall_tau for r in reports if r.kendall_defined]
    out["metrics"] = {
        "symbol_f1": f1["symbol_detection"].f1,
        "symbol_f1_iou": f1["symbol_detection_iou"].f1,
        "symbol_name_f1": f1["symbol_name"].f1,
        "symbol_value_f1": f1["symbol_value"].f1,
        "symbol_type_f1": f1["symbol_type"].f1,
        "symbol_bbox_iou": ratio["symbol_bbox_iou"].value,
        "pin_f1": f1["pin_detection"].f1,
        "pin_f1_iou": f1["pin_detection_iou"].f1,
        "pin_name_f1": f1["pin_name"].f1,
        "pad_name_f1": f1["pad_name"].f1,
        "pin_bbox_iou": ratio["pin_bbox_iou"].value,
        "net_f1": f1["net"].f1,
        "net_name_acc": ratio["net_name"].value,
        "edge_iou": ratio["edge_iou"].value,
        "one_minus_ged": 1.0 - ratio["ged"].value if ratio["ged"].den else 1.0,
        "kendall_tau": sum(defined) / len(defined) if defined else 0.0,
        "pass_rate": ratio["passed_ratio"].value,
    }
    out["counts"] = {k: vars(v) for k, v in {**f1, **ratio}.items()}
    return out
