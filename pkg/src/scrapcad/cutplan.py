"""Kerf-aware per-scrap 2D layout of part footprints.

Placement convention: a placement's position is the bbox-min corner of
the placed (undilated) footprint in the scrap-plan frame, with the
origin at a scrap corner and x along the scrap's length.  Bounds checks
use the undilated footprint (a cut flush to the scrap edge is legal);
overlap checks use footprints dilated by half the blade width, so the
blade consumes the material between cuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry2d as g2
from . import parts as pg
from .errors import UnassignedPart, UnknownPlacement, UnknownScrap
from .model import (AUTO_RESOLVE, EDGE_SNAP_TOL_MM, Document, Placement,
                    Violation)

BOUNDS_TOL = 1e-6
OVERLAP_TOL = 1e-6  # dilated penetration below this does not count
MAX_RESOLVE_ITERATIONS = 64
ROTATIONS = (0, 90, 180, 270)


def kerf_dilate(polygon: np.ndarray, blade_mm: float) -> np.ndarray:
    """Minkowski offset of a convex footprint outward by half the blade
    width, corners mitered."""
    if blade_mm < 0:
        raise ValueError("blade width must be non-negative")
    return g2.offset_convex(polygon, blade_mm / 2.0)


def anchored_footprint(doc: Document, part_id: int, rotation_deg: int) -> np.ndarray:
    """Part footprint rotated by a quarter-turn count and shifted so its
    bbox-min sits at the origin."""
    poly = pg.footprint(doc.parts[part_id].vertices)
    poly = g2.rotate_quarter(poly, rotation_deg // 90)
    lo, _ = g2.bbox(poly)
    return g2.canonicalize(poly - lo)


def placed_footprint(doc: Document, part_id: int,
                     placement: Optional[Placement] = None) -> np.ndarray:
    placement = placement or doc.placement_of(part_id)
    if placement is None:
        raise UnknownPlacement(f"part {part_id} has no placement")
    poly = anchored_footprint(doc, part_id, placement.rotation_deg)
    return poly + np.asarray(placement.position_mm, dtype=float)


def _dilated_obstacles(doc: Document, plan, exclude_part: int) -> list:
    obstacles = []
    for pid in sorted(plan.placements):
        if pid == exclude_part:
            continue
        poly = placed_footprint(doc, pid, plan.placements[pid])
        obstacles.append((pid, kerf_dilate(poly, plan.kerf_blade_mm)))
    return obstacles


def _grid_axis(limit: float) -> np.ndarray:
    hi = int(np.floor(limit + 1e-9))
    if hi < 0:
        return np.array([], dtype=float)
    return np.arange(0, hi + 1, dtype=float)


def find_position(doc: Document, part_id: int, scrap_id: int):
    """Bottom-left-fill search on a 1 mm grid, rotations tried in order
    0/90/180/270, candidates ordered by (y, x, rotation index).

    Returns (position, rotation_deg) of the first spot where the
    undilated footprint is in bounds and the kerf-dilated footprint is
    interior-disjoint from every existing dilated footprint, or None.
    """
    scrap = doc.scrap(scrap_id)
    plan = doc.plans[scrap_id]
    obstacles = [ob for _, ob in _dilated_obstacles(doc, plan, part_id)]

    candidates = []  # (rotation index, xs, ys, feasibility mask (ny, nx))
    for ri, rot in enumerate(ROTATIONS):
        poly = anchored_footprint(doc, part_id, rot)
        _, hi = g2.bbox(poly)
        xs = _grid_axis(scrap.length_mm - hi[0])
        ys = _grid_axis(scrap.width_mm - hi[1])
        if len(xs) == 0 or len(ys) == 0:
            continue
        mask = np.ones((len(ys), len(xs)), dtype=bool)
        if obstacles:
            gx, gy = np.meshgrid(xs, ys)
            points = np.column_stack([gx.ravel(), gy.ravel()])
            dil = kerf_dilate(poly, plan.kerf_blade_mm)
            for ob in obstacles:
                # positions whose dilated footprint would penetrate the
                # obstacle form the interior of this Minkowski sum
                forbidden = g2.minkowski_sum(ob, g2.reflect(dil))
                inside = g2.points_strictly_inside(points, forbidden)
                mask &= ~inside.reshape(mask.shape)
        candidates.append((ri, xs, ys, mask))

    best = None  # (y, x, ri)
    for ri, xs, ys, mask in candidates:
        if not mask.any():
            continue
        flat = int(np.argmax(mask.reshape(len(ys), len(xs)).any(axis=1)))
        # first feasible (y, x) for this rotation
        yi = flat
        xi = int(np.argmax(mask[yi]))
        key = (float(ys[yi]), float(xs[xi]), ri)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    y, x, ri = best
    return (x, y), ROTATIONS[ri]


def place_auto(doc: Document, part_id: int) -> Placement:
    """Place a part in free space; when no valid spot exists, place at
    the origin and let violations surface the overlap."""
    part = doc.part(part_id)
    if part.source is None:
        raise UnassignedPart(f"part {part_id} is unassigned")
    scrap_id = part.source
    if scrap_id not in doc.plans:
        raise UnknownScrap(f"no plan for scrap {scrap_id}")
    # drop any stale placement before searching
    for plan in doc.plans.values():
        plan.placements.pop(part_id, None)
    found = find_position(doc, part_id, scrap_id)
    if found is None:
        placement = Placement(part_id=part_id, scrap_id=scrap_id,
                              position_mm=(0.0, 0.0), rotation_deg=0)
    else:
        pos, rot = found
        placement = Placement(part_id=part_id, scrap_id=scrap_id,
                              position_mm=(float(pos[0]), float(pos[1])),
                              rotation_deg=rot)
    doc.plans[scrap_id].placements[part_id] = placement
    return placement


def _snap_to_edges(doc: Document, placement: Placement) -> None:
    scrap = doc.scraps[placement.scrap_id]
    poly = anchored_footprint(doc, placement.part_id, placement.rotation_deg)
    _, hi = g2.bbox(poly)
    x, y = placement.position_mm
    for lo_gap, hi_gap, flush_lo, flush_hi, axis in (
            (x, scrap.length_mm - (x + hi[0]), 0.0, scrap.length_mm - hi[0], 0),
            (y, scrap.width_mm - (y + hi[1]), 0.0, scrap.width_mm - hi[1], 1)):
        snapped = None
        if abs(lo_gap) <= EDGE_SNAP_TOL_MM and abs(lo_gap) <= abs(hi_gap):
            snapped = flush_lo
        elif abs(hi_gap) <= EDGE_SNAP_TOL_MM:
            snapped = flush_hi
        if snapped is not None:
            if axis == 0:
                x = snapped
            else:
                y = snapped
    placement.position_mm = (float(x), float(y))


def move_cut(doc: Document, part_id: int, new_pos) -> Placement:
    """Move a placement; footprint edges near a scrap boundary snap to
    flush contact, and the moved part becomes pinned."""
    placement = doc.placement_of(part_id)
    if placement is None:
        raise UnknownPlacement(f"part {part_id} has no placement")
    placement.position_mm = (float(new_pos[0]), float(new_pos[1]))
    _snap_to_edges(doc, placement)
    placement.pinned = True
    return placement


def rotate_cut(doc: Document, part_id: int) -> Placement:
    """Advance the placement rotation by 90 degrees (pins the part)."""
    placement = doc.placement_of(part_id)
    if placement is None:
        raise UnknownPlacement(f"part {part_id} has no placement")
    placement.rotation_deg = (placement.rotation_deg + 90) % 360
    placement.pinned = True
    return placement


def _clamp_into_bounds(doc: Document, placement: Placement) -> None:
    scrap = doc.scraps[placement.scrap_id]
    poly = anchored_footprint(doc, placement.part_id, placement.rotation_deg)
    _, hi = g2.bbox(poly)
    x, y = placement.position_mm
    x = min(max(x, 0.0), max(scrap.length_mm - hi[0], 0.0))
    y = min(max(y, 0.0), max(scrap.width_mm - hi[1], 0.0))
    placement.position_mm = (float(x), float(y))


def auto_resolve(doc: Document, scrap_id: int):
    """Iteratively separate overlapping cuts.

    Each pass moves the non-pinned member of the deepest-penetrating
    kerf-dilated pair along its minimum-translation vector, then clamps
    it into bounds.  Ties are broken deterministically: the higher part
    id moves; pinned parts never move.  Terminates within a fixed
    iteration budget with either zero overlaps or residual violations.
    Revisiting an already-seen arrangement means the MTV nudges are
    cycling (a part ping-ponging between two neighbours); the mover is
    then relocated outright via the placement search.
    """
    plan = doc.plans[scrap_id]
    seen = set()
    for _ in range(MAX_RESOLVE_ITERATIONS):
        ids = sorted(plan.placements)
        dilated = {pid: kerf_dilate(placed_footprint(doc, pid, plan.placements[pid]),
                                    plan.kerf_blade_mm)
                   for pid in ids}
        deepest = None  # (depth, a, b, axis)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                pa, pb = plan.placements[a], plan.placements[b]
                if pa.pinned and pb.pinned:
                    continue
                hit = g2.sat_mtv(dilated[a], dilated[b], eps=OVERLAP_TOL)
                if hit is None:
                    continue
                depth, axis = hit
                if deepest is None or depth > deepest[0] + 1e-12:
                    deepest = (depth, a, b, axis)
        if deepest is None:
            return plan
        depth, a, b, axis = deepest
        pa, pb = plan.placements[a], plan.placements[b]
        if pa.pinned:
            mover, direction = pb, axis
        elif pb.pinned:
            mover, direction = pa, -axis
        else:
            mover, direction = pb, axis  # higher id moves
        state = tuple((pid, plan.placements[pid].position_mm,
                       plan.placements[pid].rotation_deg)
                      for pid in ids)
        if state in seen:
            found = find_position(doc, mover.part_id, scrap_id)
            if found is not None:
                pos, rot = found
                mover.position_mm = (float(pos[0]), float(pos[1]))
                mover.rotation_deg = rot
                continue
        seen.add(state)
        before = mover.position_mm
        mover.position_mm = (float(before[0] + depth * direction[0]),
                             float(before[1] + depth * direction[1]))
        _clamp_into_bounds(doc, mover)
        if mover.position_mm == before:
            # clamped against the scrap edge: separate the other way,
            # which needs the combined projection width minus this depth
            da = dilated[a] @ axis
            db = dilated[b] @ axis
            other = float((da.max() - da.min()) + (db.max() - db.min())) - depth
            mover.position_mm = (float(before[0] - other * direction[0]),
                                 float(before[1] - other * direction[1]))
            _clamp_into_bounds(doc, mover)
    return plan


def detect_violations(doc: Document) -> list:
    """Recompute the full violation set from scratch (pure function of
    the document)."""
    violations = []
    for scrap_id in sorted(doc.plans):
        if scrap_id not in doc.scraps:
            continue
        scrap = doc.scraps[scrap_id]
        plan = doc.plans[scrap_id]
        ids = sorted(plan.placements)
        placed = {}
        for pid in ids:
            try:
                placed[pid] = placed_footprint(doc, pid, plan.placements[pid])
            except Exception:
                violations.append(Violation("InvalidGeometry", (pid,),
                                            "footprint could not be computed",
                                            scrap_id))
        ids = [pid for pid in ids if pid in placed]
        for pid in ids:
            lo, hi = g2.bbox(placed[pid])
            if (lo[0] < -BOUNDS_TOL or lo[1] < -BOUNDS_TOL
                    or hi[0] > scrap.length_mm + BOUNDS_TOL
                    or hi[1] > scrap.width_mm + BOUNDS_TOL):
                violations.append(Violation(
                    "OutOfBounds", (pid,),
                    f"cut exceeds scrap #{scrap_id} bounds", scrap_id))
        dilated = {pid: kerf_dilate(placed[pid], plan.kerf_blade_mm) for pid in ids}
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                if g2.sat_mtv(dilated[a], dilated[b], eps=OVERLAP_TOL) is not None:
                    violations.append(Violation(
                        "Overlap2D", (a, b),
                        f"cuts closer than the kerf on scrap #{scrap_id}",
                        scrap_id))
        for pid in ids:
            part = doc.parts[pid]
            zext = part.z_extent()
            if not doc.settings.resaw_allowed:
                if abs(zext - scrap.thickness_mm) > 1e-6:
                    violations.append(Violation(
                        "ResawViolation", (pid,),
                        f"part thickness {zext:g} mm differs from scrap "
                        f"thickness {scrap.thickness_mm:g} mm with resaw disabled",
                        scrap_id))
            elif zext > scrap.thickness_mm + 1e-6:
                violations.append(Violation(
                    "ResawViolation", (pid,),
                    f"part thickness {zext:g} mm exceeds scrap "
                    f"thickness {scrap.thickness_mm:g} mm", scrap_id))
    return sorted(violations, key=lambda v: v.sort_key())


@dataclass
class FitReport:
    scrap_id: int
    fits: bool
    position: Optional[tuple] = None
    rotation_deg: Optional[int] = None

    def to_dict(self):
        return {"scrap_id": self.scrap_id, "fits": self.fits,
                "position": list(self.position) if self.position else None,
                "rotation_deg": self.rotation_deg}


def reassign_preview(doc: Document, part_id: int, candidate_scrap_ids) -> list:
    """Run the placement search against each candidate without mutating
    any state."""
    doc.part(part_id)
    reports = []
    for scrap_id in candidate_scrap_ids:
        found = find_position(doc, part_id, scrap_id)
        if found is None:
            reports.append(FitReport(scrap_id=scrap_id, fits=False))
        else:
            pos, rot = found
            reports.append(FitReport(scrap_id=scrap_id, fits=True,
                                     position=pos, rotation_deg=rot))
    return reports


def reassign(doc: Document, part_id: int, scrap_id=None):
    """Move a part to another scrap (placement via the auto search) or
    to Unassigned.  Thickness mismatches are flagged, not rejected."""
    part = doc.part(part_id)
    if scrap_id is None:
        for plan in doc.plans.values():
            plan.placements.pop(part_id, None)
        part.source = None
        return None
    doc.scrap(scrap_id)
    part.source = scrap_id
    return place_auto(doc, part_id)


def grain_alignment(doc: Document, part_id: int) -> tuple[float, bool]:
    """Angle between the scrap's grain axis and the part's long footprint
    axis, folded to [0, 90]; warns when above 45 degrees."""
    part = doc.part(part_id)
    placement = doc.placement_of(part_id)
    if part.source is None or placement is None:
        raise UnassignedPart(f"part {part_id} is not assigned to a scrap")
    scrap = doc.scraps[part.source]
    poly = pg.footprint(part.vertices)
    lo, hi = g2.bbox(poly)
    long_axis_deg = 0.0 if (hi[0] - lo[0]) >= (hi[1] - lo[1]) else 90.0
    angle = (scrap.grain.axis_deg - placement.rotation_deg - long_axis_deg) % 180.0
    if angle > 90.0:
        angle = 180.0 - angle
    return angle, angle > 45.0


def thickness_view(doc: Document, scrap_id: int) -> list:
    """Side view: each placement's z-interval within the scrap thickness."""
    plan = doc.plans[scrap_id]
    out = []
    for pid in sorted(plan.placements):
        verts = doc.parts[pid].vertices
        out.append({"part_id": pid,
                    "z_min_mm": float(verts[:, 2].min()),
                    "z_max_mm": float(verts[:, 2].max())})
    return out
