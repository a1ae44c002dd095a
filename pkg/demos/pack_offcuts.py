#!/usr/bin/env python3
"""Nest a pile of rectangular parts onto one offcut and watch the
automatic layout keep the saw kerf between every pair of cuts.

    python3 demos/pack_offcuts.py
"""

import numpy as np

from scrapcad import cutplan, inventory, parts
from scrapcad import geometry2d as g2
from scrapcad.model import Document

doc = Document()
board = inventory.register_scrap(doc, (600, 400, 18), tag="plywood offcut")
print(f"board: {board.length_mm:.0f}×{board.width_mm:.0f} mm, "
      f"kerf {doc.plans[board.id].kerf_blade_mm} mm")

# ---------------------------------------------------------------------------
# Spawn parts of assorted sizes; each reassignment runs the bottom-left-fill
# search and lands the footprint in free space, rotating when that helps.
sizes = [(300, 120), (300, 120), (180, 180), (90, 350), (140, 60), (140, 60)]
for w, h in sizes:
    p = parts.spawn_part(doc, dims=(w, h, 18))
    cutplan.reassign(doc, p.id, board.id)
    pl = doc.placement_of(p.id)
    print(f"  part {p.id} ({w}×{h}) -> {pl.position_mm} rot {pl.rotation_deg}°")

assert not cutplan.detect_violations(doc)

# ---------------------------------------------------------------------------
# Verify the kerf guarantee by brute force: every pair of placed footprints
# is at least one blade width apart.
ids = sorted(doc.parts)
worst = min(
    float(g2.min_distance(cutplan.placed_footprint(doc, a),
                          cutplan.placed_footprint(doc, b)))
    for i, a in enumerate(ids) for b in ids[i + 1:])
print(f"\nclosest pair of cuts: {worst:.2f} mm (blade is 3.0 mm)")

report = inventory.usage_report(doc)
print(f"board usage: {report.per_scrap[board.id] * 100:.1f}%")

# ---------------------------------------------------------------------------
# Manual tweaks stay legal: moving a cut near the edge snaps it flush, and
# the plan re-separates anything a drag would have crowded.
victim = ids[-1]
cutplan.move_cut(doc, victim, (2.0, 257.0))
print(f"\nafter nudging part {victim}: "
      f"{doc.placement_of(victim).position_mm} (snapped flush)")
cutplan.auto_resolve(doc, board.id)
print(f"violations: {cutplan.detect_violations(doc) or 'none'}")
