"""Score a degraded model prediction against ground truth.

The prediction is built from the true graph with one symbol dropped, a net
renamed and a value typo, then serialized as a chatty model reply.

    python3 demos/score_a_prediction.py
"""

import json
from pathlib import Path

from schnet.metrics import METRIC_NAMES, evaluate_all, pass_rate
from schnet.pipeline import process_file
from schnet.prediction import graph_to_prediction
from schnet.render import RenderConfig

ROOT = Path(__file__).resolve().parent.parent
gt = process_file(ROOT / "tests" / "fixtures" / "rc_filter.sch", RenderConfig()).graph

doc = graph_to_prediction(gt)
dropped = doc["symbols"].pop()
last = len(doc["symbols"])
keep = [i for i, p in enumerate(doc["pins"]) if p["parent"] != last]
remap = {old: new for new, old in enumerate(keep)}
doc["pins"] = [doc["pins"][i] for i in keep]
doc["nets"] = [{"name": n["name"], "pins": [remap[i] for i in n["pins"] if i in remap]} for n in doc["nets"]]
doc["nets"] = [n for n in doc["nets"] if n["pins"]]
doc["nets"][0]["name"] = doc["nets"][0]["name"] + "_X"
doc["symbols"][0]["value"] = doc["symbols"][0]["value"] + "0"

reply = "Sure, here is the netlist I extracted:\n```json\n" + json.dumps(doc) + "\n```"
report = evaluate_all(reply, gt)

print(f"dropped {dropped['name']}, renamed net {doc['nets'][0]['name']}, changed value of {doc['symbols'][0]['name']}")
values = report.values()
for name in METRIC_NAMES:
    print(f"  {name:16s} {values[name]:.4f}")
print(f"pass rate over [reply, prose]: {pass_rate([reply, 'I cannot read this image.'])}")
