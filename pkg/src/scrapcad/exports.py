"""Fabrication exports: cut list (CSV), per-scrap SVG plans, and 1:1
print-and-place overlays."""

from __future__ import annotations

import csv
import io

import numpy as np

from . import cutplan
from . import geometry2d as g2
from . import parts as pg
from .model import Document

CUTLIST_FIELDS = ("part_id", "scrap_no", "qty", "length_mm", "width_mm",
                  "thickness_mm", "bevels", "tag")


def bevel_notes(verts: np.ndarray) -> str:
    """Non-square edges with their bevel angles, canonical face order."""
    notes = []
    for fa, fb in pg.EDGES:
        bevel = pg.edge_bevel_deg(verts, fa, fb)
        if bevel > 0.05:
            notes.append(f"bevel {bevel:.1f}° on edge {fa}/{fb}")
    return "; ".join(notes)


def cutlist_records(doc: Document) -> list:
    """Cut-list rows grouping congruent parts (identical local vertex
    sets) on the same scrap, with quantities and bevel notes."""
    groups = {}  # (scrap key, vertex bytes) -> [part ids]
    order = []
    for pid in sorted(doc.parts):
        part = doc.parts[pid]
        key = (part.source if part.source is not None else 0,
               part.vertices.tobytes())
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(pid)
    records = []
    for key in order:
        pids = groups[key]
        part = doc.parts[pids[0]]
        dims = part.local_dims()
        scrap = doc.scraps.get(part.source) if part.source is not None else None
        records.append({
            "part_id": pids[0],
            "scrap_no": part.source if part.source is not None else "",
            "qty": len(pids),
            "length_mm": dims[0],
            "width_mm": dims[1],
            "thickness_mm": dims[2],
            "bevels": bevel_notes(part.vertices),
            "tag": (scrap.tag or "") if scrap else "",
        })
    return records


def export_cutlist(doc: Document) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CUTLIST_FIELDS)
    writer.writeheader()
    for rec in cutlist_records(doc):
        writer.writerow(rec)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return repr(float(x))


def _path_d(poly: np.ndarray) -> str:
    coords = " L ".join(f"{_fmt(p[0])},{_fmt(p[1])}" for p in poly)
    return f"M {coords} Z"


def _svg_plan(doc: Document, scrap_id: int, overlay: bool) -> str:
    """SVG in millimeter user units; viewBox equals the scrap bounds."""
    scrap = doc.scrap(scrap_id)
    plan = doc.plans[scrap_id]
    length, width = scrap.length_mm, scrap.width_mm
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(length)}mm" height="{_fmt(width)}mm" '
        f'viewBox="0 0 {_fmt(length)} {_fmt(width)}">',
        f'  <g id="scrap-{scrap_id}">',
        f'    <rect class="scrap-boundary" x="0" y="0" '
        f'width="{_fmt(length)}" height="{_fmt(width)}" '
        f'fill="none" stroke="black" stroke-width="0.5"/>',
    ]
    fill = "none" if overlay else "#d9c49a"
    for pid in sorted(plan.placements):
        poly = cutplan.placed_footprint(doc, pid, plan.placements[pid])
        cx, cy = g2.polygon_centroid(poly)
        lines.append(
            f'    <path class="cut" data-part-id="{pid}" d="{_path_d(poly)}" '
            f'fill="{fill}" stroke="black" stroke-width="0.25"/>')
        lines.append(
            f'    <text class="cut-label" x="{_fmt(cx)}" y="{_fmt(cy)}" '
            f'font-size="8" text-anchor="middle">{pid}</text>')
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(doc: Document, scrap_id: int) -> str:
    """Per-scrap cut plan drawing."""
    return _svg_plan(doc, scrap_id, overlay=False)


def export_overlay(doc: Document, scrap_id: int) -> str:
    """True-scale cut outlines and labels for printing onto the scrap."""
    return _svg_plan(doc, scrap_id, overlay=True)


def parse_svg_footprints(svg_text: str) -> dict:
    """Read back the cut polygons of an exported plan (round-trip check
    and client-side rendering helper)."""
    import xml.etree.ElementTree as ET
    root = ET.fromstring(svg_text)
    out = {}
    for path in root.iter("{http://www.w3.org/2000/svg}path"):
        pid = path.get("data-part-id")
        if pid is None:
            continue
        d = path.get("d").strip()
        body = d.lstrip("M ").rstrip(" Z")
        pts = [[float(v) for v in pair.split(",")] for pair in body.split(" L ")]
        out[int(pid)] = np.array(pts)
    return out
