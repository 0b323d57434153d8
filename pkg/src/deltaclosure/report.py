"""Static outputs: the stacked-bar SVG of the level distribution and the CSV/JSON exports.

Everything written here is a pure function of the computed structures, so
repeated runs produce byte-identical files.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path
from xml.sax.saxutils import escape

from .concepts import ConceptGraph
from .delta import DeltaAnnotation, LevelDistribution, level_distribution
from .levels import ClosureStructure

# cool (low Δ) to warm (high Δ)
PALETTE = (
    "#313695", "#4575b4", "#74add1", "#abd9e9", "#e0f3f8",
    "#fee090", "#fdae61", "#f46d43", "#d73027", "#a50026",
)


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".") if not float(v).is_integer() else str(int(v))


def _color(i: int, n: int) -> str:
    if n <= 1:
        return PALETTE[-1]
    return PALETTE[round(i * (len(PALETTE) - 1) / (n - 1))]


def bar_segments(ratios, x0: float, width: float) -> list[tuple[float, float]]:
    """(x, w) per segment; cumulative edges are rounded once so widths add up to the bar."""
    cum = 0.0
    edges = [x0]
    for r in ratios:
        cum += r
        edges.append(x0 + round(min(cum, 1.0) * width, 3))
    edges[-1] = x0 + width
    return [(a, round(b - a, 3)) for a, b in zip(edges[:-1], edges[1:])]


def render_distribution_svg(dist: LevelDistribution, title: str = "", width: int = 720,
                            bar_height: int = 22, gap: int = 6) -> str:
    """Horizontal stacked bars, one per level, top level at the top."""
    if not dist.levels:
        raise ValueError("empty distribution")
    label_w = 120
    bar_w = width - label_w - 20
    top_pad = 30 if title else 10
    n_levels = len(dist.levels)
    legend_y = top_pad + n_levels * (bar_height + gap) + 10
    legend_rows = math.ceil(dist.n_bins / 5)
    height = legend_y + legend_rows * 20 + 10
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="18" text-anchor="middle">{escape(title)}</text>')
    for row, k in enumerate(reversed(dist.levels)):
        i = n_levels - 1 - row
        y = top_pad + row * (bar_height + gap)
        pct = f"{100 * dist.level_ratios[i]:.2f}%"
        out.append(f'<text x="{label_w - 8}" y="{y + bar_height * 0.7:.1f}" text-anchor="end">'
                   f'({k}) {pct}</text>')
        out.append(f'<g class="level" data-level="{k}">')
        for b, ((x, w), r) in enumerate(zip(bar_segments(dist.bin_ratios[i], label_w, bar_w), dist.bin_ratios[i])):
            if w <= 0:
                continue
            out.append(f'<rect x="{x:.3f}" y="{y}" width="{w:.3f}" height="{bar_height}" '
                       f'fill="{_color(b, dist.n_bins)}"><title>{100 * r:.2f}%</title></rect>')
        out.append("</g>")
    for b, (lo, hi) in enumerate(dist.bins):
        lx = label_w + (b % 5) * (bar_w / 5)
        ly = legend_y + (b // 5) * 20
        out.append(f'<rect x="{lx:.3f}" y="{ly}" width="12" height="12" fill="{_color(b, dist.n_bins)}"/>')
        out.append(f'<text x="{lx + 16:.3f}" y="{ly + 10}">({_fmt(lo)}, {_fmt(hi)}]</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- exports

def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _names(graph: ConceptGraph, x: int) -> str:
    return ";".join(graph.attribute_names[m] for m in range(graph.n_attributes) if x >> m & 1)


def concepts_csv(graph: ConceptGraph, structure: ClosureStructure | None = None,
                 annotation: DeltaAnnotation | None = None) -> str:
    rows = []
    for cid, c in enumerate(graph.concepts):
        lv = "" if structure is None or structure.level[cid] < 0 else int(structure.level[cid])
        rows.append([cid, _names(graph, c.intent), c.support, int(graph.delta_cls[cid]), lv])
    return _csv(rows, ["id", "intent", "support", "delta_cls", "level"])


def levels_csv(graph: ConceptGraph, structure: ClosureStructure) -> str:
    rows = []
    for cid, c in enumerate(graph.concepts):
        lv = int(structure.level[cid])
        sample = _names(graph, structure.passkeys[cid][0]) if structure.passkeys[cid] else ""
        rows.append([cid, _names(graph, c.intent), c.support, "" if lv < 0 else lv,
                     int(structure.passkey_counts[cid]), sample])
    return _csv(rows, ["id", "intent", "support", "level", "passkey_count", "sample_passkey"])


def delta_json(annotation: DeltaAnnotation) -> str:
    graph, structure = annotation.graph, annotation.structure
    merge = annotation.merge_threshold
    items = []
    for cid, c in enumerate(graph.concepts):
        lv = int(structure.level[cid])
        items.append({
            "id": cid,
            "intent": [graph.attribute_names[m] for m in range(graph.n_attributes) if c.intent >> m & 1],
            "support": c.support,
            "level": lv if lv >= 0 else None,
            "delta_cls": int(graph.delta_cls[cid]),
            "delta_pk": int(annotation.delta_pk[cid]),
            "merge_threshold": None if math.isinf(merge[cid]) else merge[cid],
        })
    doc = {"n_objects": graph.n_objects, "n_attributes": graph.n_attributes, "concepts": items}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def distribution_csv(dist: LevelDistribution) -> str:
    header = ["level", "level_ratio"] + [f"bin_{i + 1}" for i in range(dist.n_bins)]
    rows = [[k, repr(dist.level_ratios[i])] + [repr(v) for v in dist.bin_ratios[i]]
            for i, k in enumerate(dist.levels)]
    return _csv(rows, header)


def export_results(graph: ConceptGraph, structure: ClosureStructure, annotation: DeltaAnnotation,
                   out_dir, *, n_bins: int = 10, binning: str = "quantile", svg: bool = True,
                   extra: dict[str, str] | None = None) -> dict:
    """Write all result files plus manifest.json; returns the manifest."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    files: dict[str, str] = {
        "concepts.csv": concepts_csv(graph, structure, annotation),
        "levels.csv": levels_csv(graph, structure),
        "delta.json": delta_json(annotation),
    }
    dist = None
    if structure.complete or (structure.level >= 0).any():
        dist = level_distribution(annotation, structure, n_bins, binning)
        files["distribution.csv"] = distribution_csv(dist)
        if svg and dist.levels:
            files["distribution.svg"] = render_distribution_svg(dist)
    else:
        files["distribution.csv"] = distribution_csv(
            LevelDistribution((0.0, 1.0), (), (), (), (), 0))
    files.update(extra or {})

    entries = []
    whole = hashlib.sha256()
    for name in sorted(files):
        data = files[name].encode("utf-8")
        path = out / name
        try:
            path.write_bytes(data)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        digest = hashlib.sha256(data).hexdigest()
        whole.update(name.encode() + b"\0" + digest.encode() + b"\n")
        rows = None
        if name.endswith(".csv"):
            rows = max(data.count(b"\n") - 1, 0)
        elif name == "delta.json":
            rows = len(graph.concepts)
        entries.append({"name": name, "rows": rows, "sha256": digest})
    manifest = {
        "files": entries,
        "content_hash": whole.hexdigest(),
        "n_concepts": len(graph.concepts),
        "n_objects": graph.n_objects,
        "n_attributes": graph.n_attributes,
        "bins": [list(b) for b in dist.bins] if dist is not None else [],
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return manifest
