"""Drive the crop-tool loop with scripted adapters and print the scores.

    python3 demos/agent_crops.py
"""

from pathlib import Path

from schnet.agent import (EmptyAdapter, ProseAdapter, ScriptedOracleAdapter, dump_trajectory, evaluate_query,
                          make_queries, summarize)
from schnet.pipeline import process_file
from schnet.render import RenderConfig

ROOT = Path(__file__).resolve().parent.parent
r = process_file(ROOT / "tests" / "fixtures" / "divider.sch", RenderConfig())
items = make_queries(r.annotations, r.graph)
print(f"{len(items)} queries on a {r.image.size[0]}x{r.image.size[1]} image")

q, truth = next((q, t) for q, t in items if q.kind == "net_name")
session, score = evaluate_query(r.image, q, truth, ScriptedOracleAdapter(truth))
print(q.question)
print(dump_trajectory(session, score))

for label, make in (("oracle", ScriptedOracleAdapter), ("empty", lambda t: EmptyAdapter()),
                    ("prose", lambda t: ProseAdapter())):
    for setting in ("without_gt_bbox", "with_gt_bbox"):
        scores = [evaluate_query(r.image, q, t, make(t), setting)[1] for q, t in items]
        s = summarize(scores)
        print(f"{label:7s} {setting:16s} accuracy {s['accuracy']:.2f}  coverage {s['target_coverage']:.2f}  "
              f"steps {s['step_efficiency']}  trace {s['trace_quality']}")
