"""Node correspondence between a predicted and a ground-truth netlist graph.

Symbols are matched first by maximum-weight bipartite assignment over a
weighted sum of type agreement, name and value similarity and coarse
position agreement. Pins are then matched independently inside every
accepted symbol pair, scored by net, pin and pad name similarity plus
connected-component size agreement. Pairs scoring below the acceptance
threshold are dropped after assignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .boxes import bbox_iou
from .graph import NetlistGraph, PinNode, SymbolNode, center

DEFAULT_TYPE_ALIASES = {
    "R": "RESISTOR", "RES": "RESISTOR", "R-US": "RESISTOR", "R-US_": "RESISTOR", "R-EU": "RESISTOR",
    "R-EU_": "RESISTOR",
    "C": "CAPACITOR", "CAP": "CAPACITOR", "C-US": "CAPACITOR", "C-EU": "CAPACITOR", "CPOL": "CAPACITOR_POL",
    "CPOL-US": "CAPACITOR_POL", "CPOL-EU": "CAPACITOR_POL",
    "L": "INDUCTOR", "IND": "INDUCTOR", "L-US": "INDUCTOR", "L-EU": "INDUCTOR",
    "D": "DIODE", "LED": "LED", "Q": "TRANSISTOR",
    "GND": "GND", "AGND": "GND", "DGND": "GND",
    "VCC": "POWER", "VDD": "POWER", "+5V": "POWER", "+3V3": "POWER", "3V3": "POWER", "V+": "POWER",
    "SUPPLY": "POWER",
    "CONN": "CONNECTOR", "HEADER": "CONNECTOR", "PINHD": "CONNECTOR",
}


@dataclass(frozen=True)
class MatchWeights:
    symbol: tuple[float, float, float, float] = (0.4, 0.3, 0.2, 0.1)  # type, name, value, position
    pin: tuple[float, float, float, float] = (0.3, 0.3, 0.2, 0.2)     # net, pin name, pad name, component
    accept_threshold: float = 0.5
    iou_threshold: float = 0.5
    type_aliases: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_TYPE_ALIASES))

    def __post_init__(self):
        for name in ("symbol", "pin"):
            ws = getattr(self, name)
            if len(ws) != 4 or any(not 0.0 <= w <= 1.0 for w in ws):
                raise ValueError(f"{name} weights must be four values in [0, 1]")
            if abs(sum(ws) - 1.0) > 1e-9:
                raise ValueError(f"{name} weights must sum to 1, got {sum(ws)}")
        if not 0.0 <= self.accept_threshold <= 1.0:
            raise ValueError("accept_threshold must lie in [0, 1]")
        if not 0.0 < self.iou_threshold <= 1.0:
            raise ValueError("iou_threshold must lie in (0, 1]")


DEFAULT_WEIGHTS = MatchWeights()


# --------------------------------------------------------------------------
# similarity terms


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def text_sim(a: Optional[str], b: Optional[str]) -> float:
    """Normalized edit similarity, case-insensitive after trimming."""
    a = (a or "").strip().lower()
    b = (b or "").strip().lower()
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def grid_cell(pos: tuple[float, float]) -> tuple[int, int]:
    return tuple(min(2, max(0, int(math.floor(v * 3)))) for v in pos)


def pos_sim(r_hat: Optional[tuple[float, float]], r: Optional[tuple[float, float]]) -> float:
    """Agreement of two normalized centers on a 3 x 3 grid."""
    if r_hat is None or r is None:
        return 0.0
    (a, b), (c, d) = grid_cell(r_hat), grid_cell(r)
    dist = max(abs(a - c), abs(b - d))
    return 1.0 if dist == 0 else 0.5 if dist == 1 else 0.0


def comp_sim(c_hat: int, c: int) -> float:
    return min(c_hat, c) / max(c_hat, c)


def canonical_type(t: Optional[str], aliases: Mapping[str, str] = DEFAULT_TYPE_ALIASES) -> str:
    key = (t or "").strip().upper()
    return aliases.get(key, key)


def normalized_center(node, dims: Optional[tuple[int, int]]):
    if node.bbox is None:
        return None
    cx, cy = center(node.bbox)
    if dims is None:
        return (cx, cy)
    return (cx / dims[0], cy / dims[1])


def symbol_score(pred: SymbolNode, gt: SymbolNode, w: MatchWeights = DEFAULT_WEIGHTS,
                 pred_dims: Optional[tuple[int, int]] = None, gt_dims: Optional[tuple[int, int]] = None) -> float:
    """Weighted symbol similarity in [0, 1].

    ``*_dims`` normalize bbox centers; leave them out when boxes are
    already in unit coordinates.
    """
    wt, wn, wv, wr = w.symbol
    same_type = canonical_type(pred.symbol_type, w.type_aliases) == canonical_type(gt.symbol_type, w.type_aliases)
    # fsum keeps a perfect match at exactly 1.0
    return math.fsum((wt * float(same_type),
                      wn * text_sim(pred.name, gt.name),
                      wv * text_sim(pred.value, gt.value),
                      wr * pos_sim(normalized_center(pred, pred_dims), normalized_center(gt, gt_dims))))


def pin_score(pred: PinNode, gt: PinNode, w: MatchWeights = DEFAULT_WEIGHTS,
              pred_comp: int = 1, gt_comp: int = 1) -> float:
    wn, wp, wa, wc = w.pin
    return math.fsum((wn * text_sim(pred.net_name, gt.net_name),
                      wp * text_sim(pred.pin_name, gt.pin_name),
                      wa * text_sim(pred.pad_name, gt.pad_name),
                      wc * comp_sim(pred_comp, gt_comp)))


# --------------------------------------------------------------------------
# assignment


def max_weight_assignment(scores) -> list[tuple[int, int]]:
    """Exact one-to-one assignment maximizing the total score.

    Works for rectangular matrices; every row or column of the smaller
    side is assigned.
    """
    m = np.asarray(scores, dtype=float)
    if m.size == 0:
        return []
    rows, cols = linear_sum_assignment(m, maximize=True)
    return sorted(zip(rows.tolist(), cols.tolist()))


@dataclass(frozen=True)
class MatchResult:
    symbol_map: tuple[tuple[str, str, float], ...] = ()
    pin_map: tuple[tuple[str, str, float], ...] = ()
    unmatched_pred_symbols: tuple[str, ...] = ()
    unmatched_gt_symbols: tuple[str, ...] = ()
    unmatched_pred_pins: tuple[str, ...] = ()
    unmatched_gt_pins: tuple[str, ...] = ()

    @property
    def symbols(self) -> dict[str, str]:
        return {p: g for p, g, _ in self.symbol_map}

    @property
    def pins(self) -> dict[str, str]:
        return {p: g for p, g, _ in self.pin_map}

    @property
    def node_map(self) -> dict[str, str]:
        return {**self.symbols, **self.pins}


def symbol_score_matrix(pred: NetlistGraph, gt: NetlistGraph, w: MatchWeights = DEFAULT_WEIGHTS) -> np.ndarray:
    m = np.zeros((len(pred.symbols), len(gt.symbols)))
    for i, ps in enumerate(pred.symbols):
        for j, gs in enumerate(gt.symbols):
            m[i, j] = symbol_score(ps, gs, w, pred.image_dims, gt.image_dims)
    return m


def match_symbols(pred: NetlistGraph, gt: NetlistGraph, w: MatchWeights = DEFAULT_WEIGHTS) -> list[tuple[str, str, float]]:
    """Accepted symbol pairs ``(pred_id, gt_id, score)``."""
    m = symbol_score_matrix(pred, gt, w)
    out = []
    for i, j in max_weight_assignment(m):
        if m[i, j] >= w.accept_threshold:
            out.append((pred.symbols[i].id, gt.symbols[j].id, float(m[i, j])))
    return out


def match_pins(pred: NetlistGraph, gt: NetlistGraph, symbol_map, w: MatchWeights = DEFAULT_WEIGHTS) -> list[tuple[str, str, float]]:
    """Pin pairs, assigned separately inside each matched symbol pair."""
    pc, gc = pred.component_sizes, gt.component_sizes
    out = []
    for ps_id, gs_id, *_ in symbol_map:
        ppins = pred.pins_of.get(ps_id, ())
        gpins = gt.pins_of.get(gs_id, ())
        if not ppins or not gpins:
            continue
        m = np.array([[pin_score(a, b, w, pc[a.id], gc[b.id]) for b in gpins] for a in ppins])
        for i, j in max_weight_assignment(m):
            if m[i, j] >= w.accept_threshold:
                out.append((ppins[i].id, gpins[j].id, float(m[i, j])))
    return out


def match_graphs(pred: NetlistGraph, gt: NetlistGraph, w: MatchWeights = DEFAULT_WEIGHTS) -> MatchResult:
    smap = match_symbols(pred, gt, w)
    pmap = match_pins(pred, gt, smap, w)
    ms_p = {p for p, _, _ in smap}
    ms_g = {g for _, g, _ in smap}
    mp_p = {p for p, _, _ in pmap}
    mp_g = {g for _, g, _ in pmap}
    return MatchResult(
        tuple(smap), tuple(pmap),
        tuple(s.id for s in pred.symbols if s.id not in ms_p),
        tuple(s.id for s in gt.symbols if s.id not in ms_g),
        tuple(p.id for p in pred.pins if p.id not in mp_p),
        tuple(p.id for p in gt.pins if p.id not in mp_g),
    )


def match_by_iou(pred_boxes: Sequence, gt_boxes: Sequence, iou_threshold: float = 0.5) -> list[tuple[int, int, float]]:
    """Index pairs ``(i, j, iou)`` of a max-IoU assignment above threshold.

    ``None`` boxes never match.
    """
    m = np.zeros((len(pred_boxes), len(gt_boxes)))
    for i, a in enumerate(pred_boxes):
        if a is None:
            continue
        for j, b in enumerate(gt_boxes):
            if b is not None:
                m[i, j] = bbox_iou(a, b)
    return [(i, j, float(m[i, j])) for i, j in max_weight_assignment(m) if m[i, j] >= iou_threshold]
