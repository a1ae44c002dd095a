#!/usr/bin/env python3
"""Arrange parts in 3D against a scanned room: rotation snapping,
collision-resolved drags, and flush surface snapping.

    python3 demos/arrange_in_room.py
"""

import numpy as np

from scrapcad import assembly, parts
from scrapcad.model import Document

doc = Document()

# ---------------------------------------------------------------------------
# The environment is a triangle soup (here: floor plus one wall at y = 0).
floor = [[[-3000, -3000, 0], [3000, -3000, 0], [3000, 3000, 0]],
         [[-3000, -3000, 0], [3000, 3000, 0], [-3000, 3000, 0]]]
wall = [[[-3000, 0, 0], [3000, 0, 0], [3000, 0, 2400]],
        [[-3000, 0, 0], [3000, 0, 2400], [-3000, 0, 2400]]]
assembly.load_scene_mesh(doc, floor + wall,
                         tags=["floor", "floor", "wall", "wall"])
print(f"scene: {len(doc.scene_mesh.triangles)} triangles")

tabletop = parts.spawn_part(doc, dims=(900, 600, 25))
leg = parts.spawn_part(doc, dims=(80, 80, 700))

# ---------------------------------------------------------------------------
# Free-hand rotations snap to the 15° lattice before they are applied.
print("\nsnap_rotation (17, 44, 91) ->", assembly.snap_rotation((17, 44, 91)))

# A drag that would sink the leg through the floor gets pushed back out
# along the smallest escape direction.
target = assembly.pose_from_euler([500, 800, -12], [0, 0, 0])
pose = assembly.propose_move(doc, leg.id, target)
print(f"leg dropped at z=-12 resolves to z={pose.translation[2]:.1f}")

# The tabletop lands on the leg instead of passing through it.
target = assembly.pose_from_euler([450, 750, 690], [0, 0, 0])
pose = assembly.propose_move(doc, tabletop.id, target)
print(f"tabletop resolves to z={pose.translation[2]:.1f} "
      f"(leg is 700 mm tall)")

# ---------------------------------------------------------------------------
# Surface snap: a slightly tilted board near the wall snaps flush to it.
shelf = parts.spawn_part(doc, dims=(600, 200, 18))
shelf.pose = assembly.pose_from_euler([-800, 7, 1200], [2, 0, 0])
assembly.snap_to_surface(doc, shelf.id, "-y")
verts = assembly.world_vertices(doc, shelf.id)
print(f"\nshelf back face after snap: y = {verts[:, 1].min():.6f} (wall at 0)")

# Tape-measure readout between two part corners:
d = assembly.measure(assembly.world_vertices(doc, leg.id)[0],
                     assembly.world_vertices(doc, tabletop.id)[0])
print(f"leg corner to tabletop corner: {d:.1f} mm")
