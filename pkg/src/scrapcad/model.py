"""Document model: scraps, parts, placements, plans, poses, settings.

The document is the single source of truth; every derived quantity
(footprints, violations, usage) is recomputed from it.  All lengths are
millimeters, all angles degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SCHEMA_VERSION = "1"

DEFAULT_KERF_MM = 3.0
SQUARE_SNAP_TOL_MM = 1.0
MITER_TOL_DEG = 0.5
MIN_EXTENT_MM = 0.1
EDGE_SNAP_TOL_MM = 5.0
CONTACT_TOL_MM = 1e-3
SNAP_DIST_MM = 10.0
SNAP_PARALLEL_TOL_DEG = 5.0
ROTATION_SNAP_DEG = 15.0
PLANAR_TOL_MM = 1e-6


@dataclass
class GrainSpec:
    """Procedural grain parameters; rendering is a client concern."""
    axis_deg: float = 0.0
    size: float = 40.0
    wobble: float = 0.5
    seed: int = 0

    def __post_init__(self):
        self.axis_deg = float(self.axis_deg) % 180.0
        if self.size <= 0 or self.wobble <= 0:
            raise ValueError("grain size and wobble must be positive")

    def to_dict(self):
        return {"axis_deg": self.axis_deg, "size": self.size,
                "wobble": self.wobble, "seed": self.seed}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass
class Scrap:
    """Virtual twin of a registered physical board.

    Dimensions are normalized so length >= width >= thickness; the id is
    the number the user marks on the physical scrap.
    """
    id: int
    length_mm: float
    width_mm: float
    thickness_mm: float
    material_kind: str = "wood"
    tag: Optional[str] = None
    grain: GrainSpec = field(default_factory=GrainSpec)
    color_rgb: tuple = (0.8, 0.7, 0.5)
    retired: bool = False

    def face_area_mm2(self) -> float:
        return self.length_mm * self.width_mm

    def to_dict(self):
        return {"id": self.id, "length_mm": self.length_mm,
                "width_mm": self.width_mm, "thickness_mm": self.thickness_mm,
                "material_kind": self.material_kind, "tag": self.tag,
                "grain": self.grain.to_dict(),
                "color_rgb": list(self.color_rgb), "retired": self.retired}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["grain"] = GrainSpec.from_dict(d["grain"])
        d["color_rgb"] = tuple(d["color_rgb"])
        return cls(**d)


@dataclass
class Pose:
    """World pose of a part: translation plus orthonormal rotation."""
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def apply(self, points: np.ndarray) -> np.ndarray:
        return points @ self.rotation.T + self.translation

    def copy(self) -> "Pose":
        return Pose(self.translation.copy(), self.rotation.copy())

    def to_dict(self):
        return {"translation": [float(x) for x in self.translation],
                "rotation": [[float(x) for x in row] for row in self.rotation]}

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d["translation"], dtype=float),
                   np.array(d["rotation"], dtype=float))


@dataclass
class Part:
    """8-vertex convex hexahedral solid cut from a scrap (or unassigned).

    Local frame: x along the source scrap's length, y along its width,
    z along its thickness; vertex i sits at corner (i&1, i>>1&1, i>>2&1).
    """
    id: int
    source: Optional[int]  # scrap id, or None for unassigned
    vertices: np.ndarray   # (8, 3) local mm
    link_group: Optional[int] = None
    group: Optional[str] = None  # free usage-accounting label
    fabricated: bool = False     # informational only, not enforced
    pose: Pose = field(default_factory=Pose)

    def z_extent(self) -> float:
        return float(self.vertices[:, 2].max() - self.vertices[:, 2].min())

    def local_dims(self) -> tuple[float, float, float]:
        span = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        return float(span[0]), float(span[1]), float(span[2])

    def to_dict(self):
        return {"id": self.id, "source": self.source,
                "vertices": [[float(x) for x in v] for v in self.vertices],
                "link_group": self.link_group, "group": self.group,
                "fabricated": self.fabricated, "pose": self.pose.to_dict()}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["vertices"] = np.array(d["vertices"], dtype=float)
        d["pose"] = Pose.from_dict(d["pose"])
        return cls(**d)


@dataclass
class Placement:
    """2D position of a part's footprint on its scrap's plan."""
    part_id: int
    scrap_id: int
    position_mm: tuple  # (x, y) of the placed footprint's bbox-min corner
    rotation_deg: int = 0  # one of 0/90/180/270
    pinned: bool = False

    def to_dict(self):
        return {"part_id": self.part_id, "scrap_id": self.scrap_id,
                "position_mm": [float(self.position_mm[0]), float(self.position_mm[1])],
                "rotation_deg": self.rotation_deg, "pinned": self.pinned}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["position_mm"] = tuple(d["position_mm"])
        return cls(**d)


AUTO_RESOLVE = "auto_resolve"
MANUAL = "manual"


@dataclass
class CutPlanState:
    """Per-scrap 2D layout: packing mode, kerf, and placements."""
    scrap_id: int
    mode: str = AUTO_RESOLVE
    kerf_blade_mm: float = DEFAULT_KERF_MM
    placements: dict = field(default_factory=dict)  # part_id -> Placement

    def to_dict(self):
        return {"scrap_id": self.scrap_id, "mode": self.mode,
                "kerf_blade_mm": self.kerf_blade_mm,
                "placements": {str(k): v.to_dict()
                               for k, v in sorted(self.placements.items())}}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["placements"] = {int(k): Placement.from_dict(v)
                           for k, v in d["placements"].items()}
        return cls(**d)


@dataclass(frozen=True)
class Violation:
    """A derived red-state condition; persists exactly while it holds."""
    kind: str  # OutOfBounds | Overlap2D | ResawViolation | InvalidGeometry
    part_ids: tuple
    detail: str = ""
    scrap_id: Optional[int] = None

    def to_dict(self):
        return {"kind": self.kind, "part_ids": list(self.part_ids),
                "detail": self.detail, "scrap_id": self.scrap_id}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], tuple(d["part_ids"]), d["detail"], d["scrap_id"])

    def sort_key(self):
        return (self.kind, self.part_ids, self.scrap_id if self.scrap_id is not None else -1)


@dataclass
class SceneMesh:
    """Triangulated room surfaces used as collision/snapping references."""
    triangles: np.ndarray  # (N, 3, 3) world mm
    tags: list = field(default_factory=list)

    def to_dict(self):
        return {"triangles": [[[float(x) for x in p] for p in t]
                              for t in self.triangles],
                "tags": list(self.tags)}

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d["triangles"], dtype=float), list(d["tags"]))


@dataclass
class Settings:
    kerf_blade_mm: float = DEFAULT_KERF_MM
    resaw_allowed: bool = False
    rotation_snap: bool = True
    scene_collision: bool = True

    def to_dict(self):
        return {"kerf_blade_mm": self.kerf_blade_mm,
                "resaw_allowed": self.resaw_allowed,
                "rotation_snap": self.rotation_snap,
                "scene_collision": self.scene_collision}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass
class LinkGroup:
    id: int
    members: list = field(default_factory=list)  # part ids, sorted

    def to_dict(self):
        return {"id": self.id, "members": sorted(self.members)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["id"], list(d["members"]))


@dataclass
class Document:
    """Root of the design state; mutated only through the session layer."""
    version: str = SCHEMA_VERSION
    settings: Settings = field(default_factory=Settings)
    scraps: dict = field(default_factory=dict)       # id -> Scrap
    parts: dict = field(default_factory=dict)        # id -> Part
    plans: dict = field(default_factory=dict)        # scrap id -> CutPlanState
    link_groups: dict = field(default_factory=dict)  # id -> LinkGroup
    scene_mesh: Optional[SceneMesh] = None
    next_scrap_id: int = 1
    next_part_id: int = 1
    next_group_id: int = 1

    def scrap(self, scrap_id: int) -> Scrap:
        from .errors import UnknownScrap
        if scrap_id not in self.scraps:
            raise UnknownScrap(f"no scrap with id {scrap_id}")
        return self.scraps[scrap_id]

    def part(self, part_id: int) -> Part:
        from .errors import UnknownPart
        if part_id not in self.parts:
            raise UnknownPart(f"no part with id {part_id}")
        return self.parts[part_id]

    def placement_of(self, part_id: int) -> Optional[Placement]:
        for plan in self.plans.values():
            if part_id in plan.placements:
                return plan.placements[part_id]
        return None

    def link_members(self, part_id: int) -> list:
        part = self.parts[part_id]
        if part.link_group is None:
            return [part_id]
        return sorted(self.link_groups[part.link_group].members)

    def to_dict(self):
        return {
            "version": self.version,
            "settings": self.settings.to_dict(),
            "scraps": {str(k): v.to_dict() for k, v in sorted(self.scraps.items())},
            "parts": {str(k): v.to_dict() for k, v in sorted(self.parts.items())},
            "plans": {str(k): v.to_dict() for k, v in sorted(self.plans.items())},
            "link_groups": {str(k): v.to_dict()
                            for k, v in sorted(self.link_groups.items())},
            "scene_mesh": self.scene_mesh.to_dict() if self.scene_mesh else None,
            "next_scrap_id": self.next_scrap_id,
            "next_part_id": self.next_part_id,
            "next_group_id": self.next_group_id,
        }

    @classmethod
    def from_dict(cls, d):
        from .errors import SchemaViolation, VersionMismatch
        try:
            version = d["version"]
            if version != SCHEMA_VERSION:
                raise VersionMismatch(
                    f"document schema {version!r}, engine supports {SCHEMA_VERSION!r}")
            return cls(
                version=version,
                settings=Settings.from_dict(d["settings"]),
                scraps={int(k): Scrap.from_dict(v) for k, v in d["scraps"].items()},
                parts={int(k): Part.from_dict(v) for k, v in d["parts"].items()},
                plans={int(k): CutPlanState.from_dict(v) for k, v in d["plans"].items()},
                link_groups={int(k): LinkGroup.from_dict(v)
                             for k, v in d["link_groups"].items()},
                scene_mesh=(SceneMesh.from_dict(d["scene_mesh"])
                            if d.get("scene_mesh") else None),
                next_scrap_id=d["next_scrap_id"],
                next_part_id=d["next_part_id"],
                next_group_id=d["next_group_id"],
            )
        except VersionMismatch:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"malformed document: {exc}") from exc
