"""Command-line entry point: ``schnet {parse,render,graph,eval,agent,report}``.

Flags override values from ``--config`` (a JSON object), which override the
built-in defaults. Exit codes: 0 success, 1 any file-level failure, 2 usage.
"""

from __future__ import annotations

import argparse
import glob
import json
import logging
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from . import __version__
from .agent import SETTINGS, make_adapter, make_queries, summarize
from .agent.runner import dump_trajectory, evaluate_query
from .annotations import VARIATIONS, load_annotations
from .eagle import load_schematic
from .errors import SchnetError
from .graph import load_graph, serialize_graph
from .ir import dump_ir
from .matching import MatchWeights
from .metrics import aggregate, evaluate_all
from .pipeline import process
from .render import PALETTES, RenderConfig, export_annotations, png_bytes

log = logging.getLogger("schnet")

DEFAULTS = {
    "workers": 1, "out_dir": "out", "strict": False, "seed": 0,
    "scale": 10.0, "variation": ["full_text"], "downsample": 1, "palette": "eagle_default",
    "micro": False, "weights": {},
    "setting": "without-gt-bbox", "budget": 10, "adapter": "scripted", "model": "default", "timeout": 60.0,
    "bins": 10,
}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# helpers


def write_atomic(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def expand(patterns: Iterable[str], suffixes: Sequence[str] = (".sch",)) -> list[Path]:
    found: set[Path] = set()
    for pat in patterns:
        p = Path(pat)
        if p.is_dir():
            found.update(q for q in p.iterdir() if q.is_file() and q.name.endswith(tuple(suffixes)))
        elif p.is_file():
            found.add(p)
        else:
            found.update(Path(q) for q in glob.glob(pat, recursive=True) if Path(q).is_file())
    return sorted(found)


def stem(path: Path) -> str:
    return path.name.split(".")[0]


def fan_out(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def settings(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}") from e
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(loaded)
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if isinstance(cfg["variation"], str):
        cfg["variation"] = [cfg["variation"]]
    if "all" in cfg["variation"]:
        cfg["variation"] = list(VARIATIONS)
    if cfg["workers"] < 1:
        raise UsageError("--workers must be >= 1")
    return cfg


def render_config(cfg: dict, variation: str = "full_text") -> RenderConfig:
    try:
        return RenderConfig(scale=float(cfg["scale"]), variation=variation, palette=cfg["palette"],
                            downsample=int(cfg["downsample"]))
    except (ValueError, TypeError) as e:
        raise UsageError(str(e)) from e


def match_weights(cfg: dict) -> MatchWeights:
    w = dict(cfg["weights"])
    for k in ("symbol", "pin"):
        if k in w:
            w[k] = tuple(w[k])
    try:
        return MatchWeights(**w)
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad weights: {e}") from e


def _warn_empty(paths) -> bool:
    if not paths:
        log.warning("no input files matched")
        return True
    return False


# --------------------------------------------------------------------------
# commands


def cmd_parse(args, cfg) -> int:
    paths = expand(args.paths)
    if _warn_empty(paths):
        return 0
    out = Path(cfg["out_dir"])

    def one(path: Path):
        try:
            doc = load_schematic(path)
        except (SchnetError, OSError) as e:
            diag = {"file": path.name, "ok": False, "error": f"{type(e).__name__}: {e}", "diagnostics": []}
            write_atomic(out / f"{stem(path)}.diag.json", dumps(diag))
            return False, f"{path.name}: FAILED {type(e).__name__}: {e}"
        write_atomic(out / f"{stem(path)}.ir.json", dump_ir(doc))
        diags = [{"severity": d.severity, "path": d.path, "message": d.message} for d in doc.diagnostics]
        write_atomic(out / f"{stem(path)}.diag.json", dumps({"file": path.name, "ok": True, "diagnostics": diags}))
        return True, f"{path.name}: ok, {len(doc.parts)} parts, {sum(len(s.nets) for s in doc.sheets)} nets, {len(diags)} diagnostics"

    results = fan_out(one, paths, cfg["workers"])
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


def cmd_render(args, cfg) -> int:
    paths = expand(args.paths)
    if _warn_empty(paths):
        return 0
    out = Path(cfg["out_dir"])
    rcfgs = [render_config(cfg, v) for v in cfg["variation"]]
    for v in cfg["variation"]:
        if v not in VARIATIONS:
            raise UsageError(f"unknown variation {v!r}")

    def one(path: Path):
        try:
            doc = load_schematic(path)
            lines = []
            for rc in rcfgs:
                r = process(doc, rc)
                base = f"{stem(path)}.{rc.variation}"
                write_atomic(out / f"{base}.png", png_bytes(r.image))
                write_atomic(out / f"{base}.annotations.json", export_annotations(r.annotations))
                lines.append(f"{path.name}: {rc.variation} {r.image.size[0]}x{r.image.size[1]}")
            return True, "\n".join(lines)
        except (SchnetError, OSError) as e:
            log.error("%s: %s: %s", path.name, type(e).__name__, e)
            return False, f"{path.name}: FAILED {type(e).__name__}: {e}"

    results = fan_out(one, paths, cfg["workers"])
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


def cmd_graph(args, cfg) -> int:
    paths = expand(args.paths)
    if _warn_empty(paths):
        return 0
    out = Path(cfg["out_dir"])
    rc = render_config(cfg)

    def one(path: Path):
        try:
            g = process(load_schematic(path), rc).graph
        except (SchnetError, OSError) as e:
            write_atomic(out / f"{stem(path)}.graph.error.json",
                         dumps({"file": path.name, "error": type(e).__name__, "message": str(e)}))
            return False, f"{path.name}: FAILED {type(e).__name__}: {e}"
        write_atomic(out / f"{stem(path)}.graph.json", serialize_graph(g))
        return True, (f"{path.name}: {len(g.symbols)} symbols, {len(g.pins)} pins, "
                      f"{len(g.membership_edges)} membership, {len(g.connectivity_edges)} connectivity")

    results = fan_out(one, paths, cfg["workers"])
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


_METRIC_COLUMNS = ("symbol_f1", "pin_f1", "symbol_name_f1", "net_f1", "edge_iou", "one_minus_ged", "kendall_tau",
                   "pass_rate")


def cmd_eval(args, cfg) -> int:
    w = match_weights(cfg)
    gt_paths = expand([args.gt], (".graph.json",))
    pred_paths = expand([args.pred], (".json", ".txt")) if Path(args.pred).exists() else []
    preds = {}
    for p in pred_paths:
        if p.name.endswith(".error.json"):
            continue
        preds.setdefault(stem(p), p)
    if _warn_empty(gt_paths):
        print(dumps(aggregate([], micro=cfg["micro"])), end="")
        return 0
    out = Path(cfg["out_dir"])
    gt_stems = {stem(p) for p in gt_paths}
    for s in sorted(set(preds) - gt_stems):
        log.warning("prediction %s has no ground truth", s)

    def one(gt_path: Path):
        s = stem(gt_path)
        try:
            gt = load_graph(gt_path.read_text())
        except (SchnetError, OSError) as e:
            return s, None, f"{s}: FAILED ground truth {type(e).__name__}: {e}"
        if s not in preds:
            log.warning("%s: missing prediction", s)
            raw = None
        else:
            text = preds[s].read_text()
            try:
                data = json.loads(text)
                raw = data if isinstance(data, dict) else text
            except json.JSONDecodeError:
                raw = text
        if isinstance(raw, dict) and "symbols" in raw and "nets" in raw and "image" in raw:
            try:
                raw = load_graph(raw)
            except SchnetError:
                pass
        rep = evaluate_all(raw, gt, w)
        write_atomic(out / f"{s}.report.json", dumps(rep.to_dict()))
        return s, rep, None

    results = fan_out(one, gt_paths, cfg["workers"])
    reports = [r for _, r, _ in results if r is not None]
    agg = aggregate(reports, micro=cfg["micro"])
    write_atomic(out / "aggregate.json", dumps(agg))
    print("stem".ljust(24) + "".join(c.rjust(15) for c in _METRIC_COLUMNS))
    for s, r, err in results:
        if r is None:
            print(err)
            continue
        v = r.values()
        print(s.ljust(24) + "".join(f"{v[c]:15.4f}" for c in _METRIC_COLUMNS))
    print(f"{agg['mode']} ({agg['n']})".ljust(24) + "".join(f"{agg['metrics'][c]:15.4f}" for c in _METRIC_COLUMNS))
    failed_gt = any(r is None for _, r, _ in results)
    if failed_gt:
        return 1
    if cfg["strict"] and any(not r.passed for r in reports):
        return 1
    return 0


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def cmd_agent(args, cfg) -> int:
    paths = expand(args.paths)
    if _warn_empty(paths):
        return 0
    setting = cfg["setting"].replace("-", "_")
    if setting not in SETTINGS:
        raise UsageError(f"unknown setting {cfg['setting']!r}")
    if cfg["budget"] < 0:
        raise UsageError("--budget must be >= 0")
    adapter_name = cfg["adapter"]
    if adapter_name not in ("scripted", "empty", "prose") and not adapter_name.startswith(("http://", "https://")):
        raise UsageError(f"unknown adapter {adapter_name!r}")
    out = Path(cfg["out_dir"]) / "trajectories"
    rc = render_config(cfg)
    http_kw = {"model": cfg["model"], "timeout": float(cfg["timeout"])} if adapter_name.startswith("http") else {}

    def one(path: Path):
        try:
            r = process(load_schematic(path), rc)
        except (SchnetError, OSError) as e:
            return path.name, None, f"{path.name}: FAILED {type(e).__name__}: {e}"
        scores = []
        for q, truth in make_queries(r.annotations, r.graph):
            session, score = evaluate_query(r.image, q, truth, make_adapter(adapter_name, truth, **http_kw), setting,
                                            int(cfg["budget"]))
            write_atomic(out / stem(path) / f"{_safe(q.id)}.json", dump_trajectory(session, score))
            scores.append(score)
        return path.name, scores, None

    results = fan_out(one, paths, cfg["workers"])
    all_scores = []
    failed = False
    for name, scores, err in results:
        if scores is None:
            print(err)
            failed = True
            continue
        all_scores.extend(scores)
        s = summarize(scores)
        print(f"{name}: {s['sessions']} sessions, accuracy {s['accuracy']:.4f}, coverage {s['target_coverage']:.4f}")
    summary = {"setting": setting, "budget": cfg["budget"], "adapter": adapter_name if not adapter_name.startswith("http") else "http",
               **summarize(all_scores)}
    write_atomic(Path(cfg["out_dir"]) / "agent_summary.json", dumps(summary))
    print(dumps(summary), end="")
    return 1 if failed else 0


def histogram(values: Sequence[int], bins: int) -> list[dict]:
    if not values:
        return []
    lo, hi = min(values), max(values)
    width = max(1, -(-(hi - lo + 1) // bins))
    edges = list(range(lo, hi + 1, width))
    counts = [0] * len(edges)
    for v in values:
        counts[(v - lo) // width] += 1
    return [{"lo": e, "hi": e + width - 1, "count": c} for e, c in zip(edges, counts)]


def cmd_report(args, cfg) -> int:
    paths = expand(args.paths, (".annotations.json",))
    out = Path(cfg["out_dir"])
    rows, failed = [], False
    for p in paths:
        try:
            ann = load_annotations(p.read_text())
        except (SchnetError, OSError, ValueError) as e:
            log.error("%s: %s", p.name, e)
            failed = True
            continue
        rows.append({"file": p.name, "symbols": len(ann.symbols), "pins": len(ann.pins), "nets": len(ann.nets),
                     "texts": len(ann.texts)})
    cols = ("symbols", "pins", "nets", "texts")
    table = {
        "images": len(rows),
        "rows": rows,
        "histograms": {c: histogram([r[c] for r in rows], int(cfg["bins"])) for c in cols},
        "totals": {c: sum(r[c] for r in rows) for c in cols},
    }
    lines = ["file".ljust(40) + "".join(c.rjust(9) for c in cols)]
    lines += [r["file"].ljust(40) + "".join(f"{r[c]:9d}" for c in cols) for r in rows]
    if rows:
        lines.append("total".ljust(40) + "".join(f"{table['totals'][c]:9d}" for c in cols))
    for c in cols:
        for b in table["histograms"][c]:
            lines.append(f"{c:8s} {b['lo']:5d}-{b['hi']:<5d} {'#' * b['count']} {b['count']}")
    text = "\n".join(lines) + "\n"
    write_atomic(out / "report.json", dumps(table))
    write_atomic(out / "report.txt", text)
    print(text, end="")
    return 1 if failed else 0


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    keep = argparse.SUPPRESS
    common.add_argument("--workers", type=int, default=keep, help="parallel files (default 1)")
    common.add_argument("--config", default=keep, help="JSON file overriding defaults")
    common.add_argument("--out-dir", dest="out_dir", default=keep, help="output directory (default ./out)")
    common.add_argument("--strict", action="store_true", default=keep, help="fail on any invalid prediction")
    common.add_argument("--seed", type=int, default=keep, help="seed for stochastic features (none yet)")
    common.add_argument("-v", "--verbose", action="store_true", default=keep)

    render_opts = argparse.ArgumentParser(add_help=False)
    render_opts.add_argument("--scale", type=float, default=None, help="pixels per mm (default 10)")
    render_opts.add_argument("--palette", choices=sorted(PALETTES), default=None)
    render_opts.add_argument("--downsample", type=int, default=None)

    p = argparse.ArgumentParser(prog="schnet", parents=[common], description="Schematic netlist toolchain.")
    p.add_argument("--version", action="version", version=f"schnet {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="parse schematics into IR documents")
    sp.add_argument("paths", nargs="*")

    sp = sub.add_parser("render", parents=[common, render_opts], help="render images and annotations")
    sp.add_argument("paths", nargs="*")
    sp.add_argument("--variation", action="append", choices=list(VARIATIONS) + ["all"], default=None)

    sp = sub.add_parser("graph", parents=[common, render_opts], help="build netlist graph documents")
    sp.add_argument("paths", nargs="*")

    sp = sub.add_parser("eval", parents=[common], help="score predictions against ground-truth graphs")
    sp.add_argument("--pred", required=True, help="directory of predictions (<stem>.json or .txt)")
    sp.add_argument("--gt", required=True, help="directory of <stem>.graph.json files")
    sp.add_argument("--micro", action="store_true", default=None, help="pool counts instead of averaging")

    sp = sub.add_parser("agent", parents=[common], help="crop-tool agent evaluation")
    asub = sp.add_subparsers(dest="agent_command", required=True)
    ar = asub.add_parser("run", parents=[common, render_opts])
    ar.add_argument("paths", nargs="*")
    ar.add_argument("--setting", choices=["with-gt-bbox", "without-gt-bbox"], default=None)
    ar.add_argument("--budget", type=int, default=None)
    ar.add_argument("--adapter", default=None, help="scripted | empty | prose | http(s) URL")
    ar.add_argument("--model", default=None)
    ar.add_argument("--timeout", type=float, default=None)

    sp = sub.add_parser("report", parents=[common], help="corpus statistics over annotation documents")
    sp.add_argument("paths", nargs="*")
    sp.add_argument("--bins", type=int, default=None)
    return p


COMMANDS = {"parse": cmd_parse, "render": cmd_render, "graph": cmd_graph, "eval": cmd_eval, "agent": cmd_agent,
            "report": cmd_report}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = settings(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as e:
        print(f"schnet: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
