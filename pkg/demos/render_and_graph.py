"""Parse a schematic, render it under every variation and build its graph.

    python3 demos/render_and_graph.py [path/to/file.sch] [out_dir]
"""

import sys
from pathlib import Path

from schnet.annotations import VARIATIONS
from schnet.eagle import load_schematic
from schnet.pipeline import process
from schnet.render import RenderConfig, export_annotations, png_bytes

ROOT = Path(__file__).resolve().parent.parent
src = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "tests" / "fixtures" / "led_driver.sch"
out = Path(sys.argv[2]) if len(sys.argv) > 2 else ROOT / "demos" / "out"
out.mkdir(parents=True, exist_ok=True)

doc = load_schematic(src)
print(f"{src.name}: {len(doc.parts)} parts on {len(doc.sheets)} sheet(s)")
for d in doc.diagnostics:
    print(f"  {d.severity}: {d.path}: {d.message}")

for variation in VARIATIONS:
    r = process(doc, RenderConfig(variation=variation))
    (out / f"{src.stem}.{variation}.png").write_bytes(png_bytes(r.image))
    (out / f"{src.stem}.{variation}.annotations.json").write_text(export_annotations(r.annotations))
    print(f"{variation:14s} {r.image.size[0]}x{r.image.size[1]} px, {len(r.annotations.texts)} text boxes")

g = process(doc, RenderConfig()).graph
print(f"graph: {len(g.symbols)} symbols, {len(g.pins)} pins, {len(g.nets)} nets")
print(f"       {len(g.membership_edges)} membership edges, {len(g.connectivity_edges)} connectivity edges")
for e in sorted(g.connectivity_edges, key=lambda e: -e.spatial_weight)[:5]:
    print(f"  longest: {e.net_name:10s} {e.key[0]}-{e.key[1]}  weight {e.spatial_weight:.3f}")
print(f"wrote {out}")
