#!/usr/bin/env python3
"""Walk through a complete chair design, from scrap registration to the
printable cut list.  Run from the repository root:

    python3 demos/design_a_chair.py
"""

import json
from importlib import resources

from scrapcad import cutplan, exports, inventory
from scrapcad.session import Session, state_digest

# ---------------------------------------------------------------------------
# Every design is a sequence of commands; the bundled chair script is the
# same list a live editing session would have logged.  Applying it command
# by command lets us watch the document grow.
with resources.path("scrapcad.scripts", "chair.json") as path:
    commands = json.load(open(path))

session = Session()
for cmd in commands:
    event = session.apply_command(cmd)
    assert event["error"] is None, event["error"]
print(f"applied {len(commands)} commands, digest {state_digest(session.doc)[:12]}…")

doc = session.doc

# ---------------------------------------------------------------------------
# The inventory view shows how much of each registered offcut is still free.
print("\ninventory:")
for entry in inventory.query_inventory(doc):
    scrap = entry["scrap"]
    print(f"  scrap #{scrap.id}: {scrap.length_mm:.0f}×{scrap.width_mm:.0f}×"
          f"{scrap.thickness_mm:.0f} mm, {entry['free_area_mm2']:.0f} mm² free")

# Material usage mirrors what the cut plans actually consume.
report = inventory.usage_report(doc)
for scrap_id, frac in sorted(report.per_scrap.items()):
    print(f"  scrap #{scrap_id} usage: {frac * 100:.1f}%")
print(f"  overall: {report.overall * 100:.1f}%")

# ---------------------------------------------------------------------------
# No plan may violate kerf spacing or scrap bounds; a clean design reports
# an empty list here.
violations = cutplan.detect_violations(doc)
print(f"\nviolations: {violations or 'none'}")

# ---------------------------------------------------------------------------
# The cut list groups congruent parts and annotates beveled edges.
print("\ncut list:")
for rec in exports.cutlist_records(doc):
    note = f"  ({rec['bevels']})" if rec["bevels"] else ""
    print(f"  {rec['qty']}× {rec['length_mm']:.0f}×{rec['width_mm']:.0f}×"
          f"{rec['thickness_mm']:.0f} mm from scrap #{rec['scrap_no']}{note}")

# Per-scrap SVG plans (and 1:1 overlays for tracing) are one call away:
svg = exports.export_svg(doc, min(doc.scraps))
print(f"\nSVG plan for scrap #{min(doc.scraps)}: {len(svg)} bytes")
