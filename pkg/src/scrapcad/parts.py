"""Hexahedral part creation and editing.

Parts are stored as 8 explicit local vertices; edits translate vertices
and are validated post-hoc (planar faces, convexity, minimum extent).
An edit that fails validation raises and must leave the document
unchanged (the session layer guarantees atomicity).
"""

from __future__ import annotations

import math

import numpy as np

from . import geometry2d as g2
from .errors import (DegenerateGeometry, IncongruentParts, NonConvex,
                     ResawNotAllowed, UnknownPart)
from .model import (MIN_EXTENT_MM, MITER_TOL_DEG, PLANAR_TOL_MM,
                    SQUARE_SNAP_TOL_MM, Document, LinkGroup, Part)

FACE_NAMES = ("+x", "-x", "+y", "-y", "+z", "-z")

# vertex i sits at corner (i&1, (i>>1)&1, (i>>2)&1) of the base box
FACE_CORNERS = {
    "+x": (1, 3, 5, 7), "-x": (0, 2, 4, 6),
    "+y": (2, 3, 6, 7), "-y": (0, 1, 4, 5),
    "+z": (4, 5, 6, 7), "-z": (0, 1, 2, 3),
}
OPPOSITE_FACE = {"+x": "-x", "-x": "+x", "+y": "-y",
                 "-y": "+y", "+z": "-z", "-z": "+z"}

# unordered adjacent-face pairs; each shares exactly 2 vertices
EDGES = tuple(
    (a, b)
    for i, a in enumerate(FACE_NAMES)
    for b in FACE_NAMES[i + 1:]
    if OPPOSITE_FACE[a] != b
)


def edge_vertex_indices(face_a: str, face_b: str) -> tuple[int, int]:
    if face_a not in FACE_CORNERS or face_b not in FACE_CORNERS:
        raise DegenerateGeometry(f"unknown face in edge ({face_a}, {face_b})")
    shared = sorted(set(FACE_CORNERS[face_a]) & set(FACE_CORNERS[face_b]))
    if len(shared) != 2:
        raise DegenerateGeometry(f"faces {face_a} and {face_b} do not share an edge")
    return shared[0], shared[1]


def box_vertices(length: float, width: float, thickness: float) -> np.ndarray:
    v = np.zeros((8, 3))
    for i in range(8):
        v[i] = ((i & 1) * length, ((i >> 1) & 1) * width, ((i >> 2) & 1) * thickness)
    return v


def face_plane(verts: np.ndarray, face: str) -> tuple[np.ndarray, np.ndarray]:
    """Centroid and outward unit normal of a face (assumes near-planar)."""
    idx = FACE_CORNERS[face]
    p = verts[list(idx)]
    c = p.mean(axis=0)
    # corners are stored in bit order; (0)-(3) and (1)-(2) are the diagonals
    n = np.cross(p[3] - p[0], p[2] - p[1])
    norm = np.linalg.norm(n)
    if norm < 1e-12:
        raise DegenerateGeometry(f"face {face} has collapsed")
    n = n / norm
    if float(n @ (c - verts.mean(axis=0))) < 0:
        n = -n
    return c, n


def validate_vertices(verts: np.ndarray) -> None:
    """Enforce the part invariants: planar faces, convexity, min extent."""
    planes = {}
    for face in FACE_NAMES:
        c, n = face_plane(verts, face)
        p = verts[list(FACE_CORNERS[face])]
        if np.max(np.abs((p - c) @ n)) > PLANAR_TOL_MM:
            raise DegenerateGeometry(f"face {face} is not planar")
        planes[face] = (c, n)
    for face, (c, n) in planes.items():
        if np.max((verts - c) @ n) > PLANAR_TOL_MM:
            raise NonConvex(f"vertex outside face {face} plane")
    for pos in ("+x", "+y", "+z"):
        cp, npos = planes[pos]
        cn, _ = planes[OPPOSITE_FACE[pos]]
        if float(npos @ (cp - cn)) <= MIN_EXTENT_MM:
            raise DegenerateGeometry(f"extent along {pos[1]} below minimum")


def congruent(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a, b))


def footprint(verts: np.ndarray) -> np.ndarray:
    """Convex hull of the vertices projected along z (plan footprint)."""
    return g2.convex_hull(verts[:, :2])


def edge_bevel_deg(verts: np.ndarray, face_a: str, face_b: str) -> float:
    """Deviation of the edge's dihedral from square, in degrees."""
    edge_vertex_indices(face_a, face_b)  # validates adjacency
    _, na = face_plane(verts, face_a)
    _, nb = face_plane(verts, face_b)
    cosang = float(np.clip(na @ nb, -1.0, 1.0))
    return abs(math.degrees(math.acos(cosang)) - 90.0)


def _check_resaw(doc: Document, member_ids: list, new_verts: np.ndarray) -> None:
    """With resaw disabled, assigned parts must keep the thickness of
    their scrap (unassigned parts are exempt)."""
    if doc.settings.resaw_allowed:
        return
    new_zext = float(new_verts[:, 2].max() - new_verts[:, 2].min())
    for pid in member_ids:
        part = doc.parts[pid]
        if part.source is None:
            continue
        old_zext = part.z_extent()
        if abs(new_zext - old_zext) > 1e-9:
            raise ResawNotAllowed(
                f"edit changes thickness of part {pid} while resaw is disabled")


def _apply_to_members(doc: Document, part_id: int, new_verts: np.ndarray) -> None:
    validate_vertices(new_verts)
    members = doc.link_members(part_id)
    _check_resaw(doc, members, new_verts)
    for pid in members:
        doc.parts[pid].vertices = new_verts.copy()


def spawn_part(doc: Document, scrap_id=None, dims=None, group=None) -> Part:
    """Create a part as the full box of its scrap (or the given dims)."""
    from . import cutplan
    if scrap_id is not None:
        scrap = doc.scrap(scrap_id)
        verts = box_vertices(scrap.length_mm, scrap.width_mm, scrap.thickness_mm)
    else:
        if dims is None:
            raise DegenerateGeometry("unassigned spawn requires dims")
        length, width, thickness = (float(x) for x in dims)
        if min(length, width, thickness) <= MIN_EXTENT_MM:
            raise DegenerateGeometry("part dimensions below minimum extent")
        verts = box_vertices(length, width, thickness)
    part = Part(id=doc.next_part_id, source=scrap_id, vertices=verts, group=group)
    doc.next_part_id += 1
    doc.parts[part.id] = part
    if scrap_id is not None:
        cutplan.place_auto(doc, part.id)
    return part


def push_pull_face(doc: Document, part_id: int, face: str, delta_mm: float) -> Part:
    """Translate a face along its outward normal (positive delta pulls
    the face outward, negative pushes it inward)."""
    part = doc.part(part_id)
    if face not in FACE_CORNERS:
        raise DegenerateGeometry(f"unknown face {face!r}")
    if face in ("+z", "-z") and not doc.settings.resaw_allowed and part.source is not None:
        raise ResawNotAllowed("resaw cuts are disabled for this document")
    _, n = face_plane(part.vertices, face)
    new_verts = part.vertices.copy()
    new_verts[list(FACE_CORNERS[face])] += delta_mm * n
    _apply_to_members(doc, part_id, new_verts)
    return part


def move_edge(doc: Document, part_id: int, edge: tuple, axis_face: str,
              delta_mm: float) -> Part:
    """Translate an edge along the normal of one adjacent face.

    The edge is the pair of vertices shared by the two named faces.
    axis_face names which adjacent face tilts; the movement direction is
    that face's outward normal projected into the other face's plane, so
    the other face stays planar.  Offsets within the square-snap
    tolerance collapse to exactly square.
    """
    part = doc.part(part_id)
    face_a, face_b = edge
    idx = edge_vertex_indices(face_a, face_b)
    if axis_face not in (face_a, face_b):
        raise DegenerateGeometry("axis must name one of the edge's adjacent faces")
    stay_face = face_b if axis_face == face_a else face_a
    _, n_axis = face_plane(part.vertices, axis_face)
    _, n_stay = face_plane(part.vertices, stay_face)
    d = n_axis - float(n_axis @ n_stay) * n_stay
    norm = np.linalg.norm(d)
    if norm < 1e-9:
        raise DegenerateGeometry("edge movement direction is degenerate")
    d = d / norm

    new_verts = part.vertices.copy()
    new_verts[list(idx)] += delta_mm * d

    # square snap: offset of the moved edge from the opposite edge of the
    # tilting face, measured along the movement direction
    moved = list(idx)
    others = [i for i in FACE_CORNERS[axis_face] if i not in idx]
    offset = float(d @ (new_verts[moved].mean(axis=0) - new_verts[others].mean(axis=0)))
    if abs(offset) <= SQUARE_SNAP_TOL_MM:
        new_verts[moved] -= offset * d

    _apply_to_members(doc, part_id, new_verts)
    return part


def miter_check(doc: Document, part_id: int, edge: tuple,
                target_joint_deg: float) -> tuple[bool, float]:
    """True when the edge's bevel is half the target joint angle."""
    part = doc.part(part_id)
    bevel = edge_bevel_deg(part.vertices, edge[0], edge[1])
    deviation = bevel - target_joint_deg / 2.0
    return abs(deviation) <= MITER_TOL_DEG, deviation


def duplicate_part(doc: Document, part_id: int, join_link_group: bool = False) -> Part:
    from . import cutplan
    src = doc.part(part_id)
    part = Part(id=doc.next_part_id, source=src.source,
                vertices=src.vertices.copy(), group=src.group)
    doc.next_part_id += 1
    doc.parts[part.id] = part
    if join_link_group and src.link_group is not None:
        doc.link_groups[src.link_group].members.append(part.id)
        part.link_group = src.link_group
    if src.source is not None:
        cutplan.place_auto(doc, part.id)
    return part


def set_link_group(doc: Document, part_ids) -> LinkGroup:
    part_ids = sorted(set(int(p) for p in part_ids))
    if len(part_ids) < 2:
        raise IncongruentParts("a link group needs at least two parts")
    parts = [doc.part(pid) for pid in part_ids]
    ref = parts[0].vertices
    for p in parts[1:]:
        if not congruent(ref, p.vertices):
            raise IncongruentParts(
                f"parts {parts[0].id} and {p.id} have different local geometry")
    for p in parts:
        if p.link_group is not None:
            unlink(doc, p.id)
    group = LinkGroup(id=doc.next_group_id, members=list(part_ids))
    doc.next_group_id += 1
    doc.link_groups[group.id] = group
    for p in parts:
        p.link_group = group.id
    return group


def unlink(doc: Document, part_id: int) -> None:
    part = doc.part(part_id)
    gid = part.link_group
    if gid is None:
        return
    group = doc.link_groups[gid]
    group.members = [m for m in group.members if m != part_id]
    part.link_group = None
    if len(group.members) <= 1:
        for m in group.members:
            doc.parts[m].link_group = None
        del doc.link_groups[gid]


def delete_part(doc: Document, part_id: int) -> None:
    doc.part(part_id)
    unlink(doc, part_id)
    for plan in doc.plans.values():
        plan.placements.pop(part_id, None)
    del doc.parts[part_id]


def part_footprint(doc: Document, part_id: int) -> np.ndarray:
    return footprint(doc.part(part_id).vertices)
