import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_assignment, edit_distance
from schnet.graph import NetlistGraph, PinNode, SymbolNode
from schnet.matching import (DEFAULT_WEIGHTS, MatchWeights, canonical_type, comp_sim, grid_cell, levenshtein,
                             match_by_iou, match_graphs, match_pins, match_symbols, max_weight_assignment,
                             pin_score, pos_sim, symbol_score, symbol_score_matrix, text_sim)
from strategies import DIMS, drop_symbols, graph_pairs, random_graph

from conftest import rendered


def sym(id="s0", name="R1", value="10k", type="R", bbox=(10, 10, 20, 20)):
    return SymbolNode(id, name, value, type, bbox=bbox)


def pin(id="p0", parent="s0", pin_name="1", pad_name="1", net="N1"):
    return PinNode(id, parent, pin_name, pad_name, net)


class TestTextSim:
    @pytest.mark.parametrize("a,b,expected", [
        ("R1", "r1", 1.0), ("", "", 1.0), ("GND", "GNDA", 0.75), ("  R1 ", "R1", 1.0), ("", "x", 0.0),
        (None, "", 1.0), ("abc", "xyz", 0.0),
    ])
    def test_examples(self, a, b, expected):
        assert text_sim(a, b) == pytest.approx(expected)

    @given(st.text(max_size=12), st.text(max_size=12))
    def test_levenshtein_matches_oracle(self, a, b):
        assert levenshtein(a, b) == edit_distance(a, b)

    @given(st.text(max_size=12), st.text(max_size=12))
    def test_range_and_symmetry(self, a, b):
        v = text_sim(a, b)
        assert 0.0 <= v <= 1.0
        assert v == text_sim(b, a)


class TestPosAndComp:
    def test_same_cell(self):
        assert pos_sim((0.1, 0.1), (0.2, 0.2)) == 1.0

    def test_diagonal_neighbour(self):
        assert pos_sim((0.1, 0.1), (0.5, 0.5)) == 0.5

    def test_far(self):
        assert pos_sim((0.1, 0.1), (0.9, 0.9)) == 0.0

    def test_missing(self):
        assert pos_sim(None, (0.5, 0.5)) == 0.0

    def test_grid_edges(self):
        assert grid_cell((0.0, 1.0)) == (0, 2)
        assert grid_cell((1 / 3, 0.999)) == (1, 2)

    @pytest.mark.parametrize("a,b,expected", [(4, 4, 1.0), (1, 1, 1.0), (2, 6, 1 / 3)])
    def test_comp(self, a, b, expected):
        assert comp_sim(a, b) == pytest.approx(expected)


class TestScores:
    def test_identical_symbol(self):
        assert symbol_score(sym(), sym(), DEFAULT_WEIGHTS, (100, 100), (100, 100)) == pytest.approx(1.0)

    @given(st.lists(st.integers(0, 100), min_size=4, max_size=4).filter(lambda v: sum(v) > 0))
    def test_identical_any_weights(self, raw):
        ws = [v / sum(raw) for v in raw]
        ws[-1] = 1.0 - sum(ws[:-1])
        w = MatchWeights(symbol=tuple(ws))
        assert symbol_score(sym(), sym(), w, (100, 100), (100, 100)) == pytest.approx(1.0)

    def test_only_type_differs(self):
        assert symbol_score(sym(type="C"), sym(), DEFAULT_WEIGHTS, (100, 100), (100, 100)) == pytest.approx(0.6)

    def test_weighted_sum(self):
        # name sim 0.75 (one edit over 4), value identical, diagonal grid neighbours
        a = sym(name="GNDA", bbox=(10, 10, 20, 20))
        b = sym(name="GND", bbox=(45, 45, 55, 55))
        assert symbol_score(a, b, DEFAULT_WEIGHTS, (100, 100), (100, 100)) == pytest.approx(0.875)

    def test_aliases(self):
        assert canonical_type("res") == canonical_type("RESISTOR")
        assert symbol_score(sym(type="RES"), sym(type="RESISTOR"), DEFAULT_WEIGHTS, (100, 100), (100, 100)) == 1.0
        w = MatchWeights(type_aliases={"FOO": "BAR"})
        assert canonical_type("foo", w.type_aliases) == "BAR"

    def test_pin_identical(self):
        assert pin_score(pin(), pin()) == pytest.approx(1.0)

    def test_pin_all_empty(self):
        assert pin_score(pin(pin_name="", pad_name="", net=""), pin(pin_name="", pad_name="", net=""), pred_comp=3,
                         gt_comp=3) == pytest.approx(1.0)

    def test_pin_net_only(self):
        a = pin(pin_name="A", pad_name="1")
        b = pin(pin_name="B", pad_name="2")
        assert pin_score(a, b) == pytest.approx(0.5)

    @given(graph_pairs)
    def test_symmetric(self, pair):
        pred, gt = pair
        for a in pred.symbols:
            for b in gt.symbols:
                assert symbol_score(a, b, DEFAULT_WEIGHTS, DIMS, DIMS) == symbol_score(b, a, DEFAULT_WEIGHTS, DIMS, DIMS)
        for a in pred.pins[:6]:
            for b in gt.pins[:6]:
                assert pin_score(a, b, DEFAULT_WEIGHTS, 2, 3) == pin_score(b, a, DEFAULT_WEIGHTS, 3, 2)

    @pytest.mark.parametrize("kw", [dict(symbol=(0.5, 0.5, 0.5, 0.5)), dict(pin=(1.0, 0.0, 0.0)),
                                    dict(symbol=(1.2, -0.2, 0.0, 0.0)), dict(accept_threshold=1.5),
                                    dict(iou_threshold=0.0)])
    def test_weight_validation(self, kw):
        with pytest.raises(ValueError):
            MatchWeights(**kw)


class TestAssignment:
    def test_three_by_three(self):
        m = [[0.9, 0.1, 0.1], [0.1, 0.8, 0.1], [0.1, 0.1, 0.7]]
        pairs = max_weight_assignment(m)
        assert pairs == [(0, 0), (1, 1), (2, 2)]
        assert math.fsum(m[i][j] for i, j in pairs) == pytest.approx(2.4)
        assert brute_force_assignment(m)[0] == pytest.approx(2.4)

    def test_empty(self):
        assert max_weight_assignment(np.zeros((0, 3))) == []

    def test_two_by_three_with_threshold(self):
        pred = NetlistGraph((100, 100), (sym("s0", "R1"), sym("s1", "Q9", "x", "NPN", (80, 80, 90, 90))))
        gt = NetlistGraph((100, 100), (sym("s0", "R1"), sym("s1", "C7", "1u", "C", (10, 80, 20, 90)),
                                       sym("s2", "D3", "", "LED", (80, 10, 90, 20))))
        m = symbol_score_matrix(pred, gt)
        total, pairs = brute_force_assignment(m)
        best = sorted(m[i, j] for i, j in pairs)
        assert best[-1] >= 0.5 > best[0]
        smap = match_symbols(pred, gt)
        assert [(p, g) for p, g, _ in smap] == [("s0", "s0")]

    def test_pred_empty(self):
        gt = rendered("divider").graph
        res = match_graphs(NetlistGraph(gt.image_dims), gt)
        assert res.symbol_map == () and res.pin_map == ()
        assert res.unmatched_gt_symbols == tuple(s.id for s in gt.symbols)

    @settings(max_examples=60)
    @given(graph_pairs)
    def test_symbol_assignment_matches_brute_force(self, pair):
        pred, gt = pair
        m = symbol_score_matrix(pred, gt)
        got = math.fsum(m[i, j] for i, j in max_weight_assignment(m))
        assert abs(got - brute_force_assignment(m)[0]) <= 1e-12

    @settings(max_examples=60)
    @given(graph_pairs)
    def test_pin_assignment_matches_brute_force(self, pair):
        pred, gt = pair
        smap = match_symbols(pred, gt)
        pmap = match_pins(pred, gt, smap)
        pc, gc = pred.component_sizes, gt.component_sizes
        for ps, gs, _ in smap:
            a, b = pred.pins_of[ps], gt.pins_of[gs]
            m = np.array([[pin_score(x, y, DEFAULT_WEIGHTS, pc[x.id], gc[y.id]) for y in b] for x in a])
            if m.size == 0:
                continue
            got = sorted(max_weight_assignment(m))
            assert abs(math.fsum(m[i, j] for i, j in got) - brute_force_assignment(m)[0]) <= 1e-12
            accepted = {(a[i].id, b[j].id) for i, j in got if m[i, j] >= DEFAULT_WEIGHTS.accept_threshold}
            assert accepted == {(p, g) for p, g, _ in pmap if p in {x.id for x in a}}


class TestMatchGraphs:
    @given(graph_pairs)
    def test_one_to_one_and_dependent(self, pair):
        pred, gt = pair
        res = match_graphs(pred, gt)
        smap = res.symbols
        assert len(set(smap.values())) == len(smap)
        assert len(set(res.pins.values())) == len(res.pins)
        for p, g, score in res.pin_map:
            assert smap[pred.pin_index[p].parent] == gt.pin_index[g].parent
            assert score >= DEFAULT_WEIGHTS.accept_threshold
        assert all(score >= DEFAULT_WEIGHTS.accept_threshold for *_, score in res.symbol_map)
        assert len(res.unmatched_pred_symbols) + len(smap) == len(pred.symbols)
        assert len(res.unmatched_gt_pins) + len(res.pins) == len(gt.pins)

    def test_cardinality_bound(self):
        gt = NetlistGraph((100, 100), (sym(),), tuple(pin(f"p{i}", pin_name=str(i), pad_name=str(i)) for i in range(4)),
                          {"N1": tuple(f"p{i}" for i in range(4))})
        pred = NetlistGraph((100, 100), (sym(),), tuple(pin(f"p{i}", pin_name=str(i), pad_name=str(i))
                                                        for i in range(2)), {"N1": ("p0", "p1")})
        res = match_graphs(pred, gt)
        assert len(res.pin_map) <= 2

    def test_identical_pins(self):
        pins = tuple(pin(f"p{i}", pin_name=n, pad_name=str(i)) for i, n in enumerate("ABC"))
        g = NetlistGraph((100, 100), (sym(),), pins, {"N1": ("p0", "p1", "p2")})
        res = match_graphs(g, g)
        assert [(p, g_, s) for p, g_, s in res.pin_map] == [(f"p{i}", f"p{i}", 1.0) for i in range(3)]

    @given(st.integers(0, 2**32 - 1))
    def test_self_match_is_identity(self, seed):
        g = random_graph(random.Random(seed), unique=True)
        res = match_graphs(g, g)
        assert [(p, q) for p, q, _ in res.symbol_map] == [(s.id, s.id) for s in g.symbols]
        assert all(s == 1.0 for *_, s in res.symbol_map)

    def test_self_match_fixtures(self, fixture_name):
        g = rendered(fixture_name).graph
        res = match_graphs(g, g)
        assert res.symbols == {s.id: s.id for s in g.symbols}
        assert res.pins == {p.id: p.id for p in g.pins}
        assert all(s == pytest.approx(1.0) for *_, s in res.symbol_map + res.pin_map)

    @given(graph_pairs, st.integers(0, 6))
    def test_deleting_a_prediction_never_adds_matches(self, pair, k):
        pred, gt = pair
        if not pred.symbols:
            return
        victim = pred.symbols[k % len(pred.symbols)].id
        assert len(match_symbols(drop_symbols(pred, [victim]), gt)) <= len(match_symbols(pred, gt))


class TestMatchByIoU:
    def test_identical(self):
        boxes = [(0, 0, 10, 10), (20, 20, 40, 30)]
        assert match_by_iou(boxes, boxes) == [(0, 0, 1.0), (1, 1, 1.0)]

    def test_disjoint(self):
        assert match_by_iou([(0, 0, 10, 10)], [(50, 50, 60, 60)]) == []

    def test_third(self):
        assert match_by_iou([(0, 0, 100, 100)], [(50, 0, 150, 100)]) == []
        assert match_by_iou([(0, 0, 100, 100)], [(50, 0, 150, 100)], 0.3)[0][2] == pytest.approx(1 / 3)

    def test_none_never_matches(self):
        assert match_by_iou([None], [(0, 0, 1, 1)]) == []
