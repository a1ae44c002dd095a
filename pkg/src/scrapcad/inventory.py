"""Scrap registration, editing, querying, and usage accounting."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import geometry2d as g2
from .errors import NonPositiveDimension
from .model import Document, GrainSpec, Scrap


def register_scrap(doc: Document, dims, material_kind: str = "wood",
                   tag=None, grain: GrainSpec | None = None,
                   color_rgb=(0.8, 0.7, 0.5)) -> Scrap:
    """Register a board; dimensions are normalized to length >= width >=
    thickness and the next sequential id is assigned."""
    from .model import CutPlanState
    dims = [float(x) for x in dims]
    if len(dims) != 3 or min(dims) <= 0:
        raise NonPositiveDimension(f"scrap dimensions must be positive, got {dims}")
    length, width, thickness = sorted(dims, reverse=True)
    scrap = Scrap(id=doc.next_scrap_id, length_mm=length, width_mm=width,
                  thickness_mm=thickness, material_kind=material_kind, tag=tag,
                  grain=grain or GrainSpec(), color_rgb=tuple(color_rgb))
    doc.next_scrap_id += 1
    doc.scraps[scrap.id] = scrap
    doc.plans[scrap.id] = CutPlanState(scrap_id=scrap.id,
                                       kerf_blade_mm=doc.settings.kerf_blade_mm)
    return scrap


def update_scrap(doc: Document, scrap_id: int, patch: dict) -> Scrap:
    """Apply a partial update.  Shrinking a scrap under existing cuts is
    allowed; affected parts surface as OutOfBounds violations instead of
    the change being rejected.  Part geometry is never touched."""
    scrap = doc.scrap(scrap_id)
    patch = dict(patch)
    if "grain" in patch:
        grain = scrap.grain.to_dict()
        grain.update(patch.pop("grain"))
        scrap.grain = GrainSpec.from_dict(grain)
    if "color_rgb" in patch:
        scrap.color_rgb = tuple(patch.pop("color_rgb"))
    dims_patch = {k: float(patch.pop(k)) for k in
                  ("length_mm", "width_mm", "thickness_mm") if k in patch}
    if dims_patch:
        dims = {"length_mm": scrap.length_mm, "width_mm": scrap.width_mm,
                "thickness_mm": scrap.thickness_mm}
        dims.update(dims_patch)
        if min(dims.values()) <= 0:
            raise NonPositiveDimension("scrap dimensions must be positive")
        scrap.length_mm, scrap.width_mm, scrap.thickness_mm = sorted(
            dims.values(), reverse=True)
    for key in ("material_kind", "tag", "retired"):
        if key in patch:
            setattr(scrap, key, patch.pop(key))
    if patch:
        from .errors import MalformedCommand
        raise MalformedCommand(f"unknown scrap fields: {sorted(patch)}")
    return scrap


def delete_scrap(doc: Document, scrap_id: int) -> None:
    """Remove a scrap; parts assigned to it become Unassigned."""
    doc.scrap(scrap_id)
    for part in doc.parts.values():
        if part.source == scrap_id:
            part.source = None
    doc.plans.pop(scrap_id, None)
    del doc.scraps[scrap_id]


def used_area_mm2(doc: Document, scrap_id: int) -> float:
    """Total kerf-free footprint area of parts assigned to a scrap."""
    from . import parts as pg
    total = 0.0
    plan = doc.plans.get(scrap_id)
    if plan is None:
        return 0.0
    for part_id in sorted(plan.placements):
        poly = pg.footprint(doc.parts[part_id].vertices)
        total += abs(g2.polygon_area(poly))
    return total


def query_inventory(doc: Document, tag=None, material_kind=None,
                    retired=None) -> list:
    """Scraps ordered by id, each with its remaining free face area."""
    out = []
    for scrap_id in sorted(doc.scraps):
        scrap = doc.scraps[scrap_id]
        if tag is not None and scrap.tag != tag:
            continue
        if material_kind is not None and scrap.material_kind != material_kind:
            continue
        if retired is not None and scrap.retired != retired:
            continue
        free = scrap.face_area_mm2() - used_area_mm2(doc, scrap_id)
        out.append({"scrap": scrap, "free_area_mm2": max(free, 0.0)})
    return out


@dataclass
class UsageReport:
    """Fractions of scrap face area consumed by cut footprints."""
    per_scrap: dict = field(default_factory=dict)   # scrap id -> fraction
    totals: dict = field(default_factory=dict)      # part group -> fraction
    overall: float = 0.0

    def to_dict(self):
        return {"per_scrap": {str(k): v for k, v in sorted(self.per_scrap.items())},
                "totals": dict(sorted(self.totals.items())),
                "overall": self.overall}


def usage_report(doc: Document) -> UsageReport:
    """Kerf-free used-area fractions, overall over non-retired scraps.

    Group totals sum the footprints of parts carrying each usage label
    over the same denominator, mirroring per-design percentages.
    """
    from . import parts as pg
    report = UsageReport()
    denom = sum(s.face_area_mm2() for s in doc.scraps.values() if not s.retired)
    used_total = 0.0
    group_areas: dict = {}
    for scrap_id in sorted(doc.scraps):
        scrap = doc.scraps[scrap_id]
        used = used_area_mm2(doc, scrap_id)
        face = scrap.face_area_mm2()
        report.per_scrap[scrap_id] = min(used / face, 1.0) if face > 0 else 0.0
        if not scrap.retired:
            used_total += used
        plan = doc.plans.get(scrap_id)
        if plan and not scrap.retired:
            for part_id in plan.placements:
                part = doc.parts[part_id]
                if part.group:
                    area = abs(g2.polygon_area(pg.footprint(part.vertices)))
                    group_areas[part.group] = group_areas.get(part.group, 0.0) + area
    if denom > 0:
        report.overall = min(used_total / denom, 1.0)
        report.totals = {k: min(v / denom, 1.0)
                         for k, v in sorted(group_areas.items())}
    return report
