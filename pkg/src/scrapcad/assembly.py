"""World-space arrangement of parts.

Grab/release pose changes resolve collisions against other parts and the
scene mesh by iterating along the instantaneous deepest-contact
minimum-translation vector; only the grabbed part ever moves.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial.transform import Rotation

from . import geometry3d as g3
from . import parts as pg
from .errors import (DegenerateTriangle, NoSnapTarget, UnresolvedCollision)
from .model import (CONTACT_TOL_MM, ROTATION_SNAP_DEG, SNAP_DIST_MM,
                    SNAP_PARALLEL_TOL_DEG, Document, Pose, SceneMesh)

MAX_RESOLVE_ITERATIONS = 32


def snap_rotation(euler_deg) -> tuple:
    """Round each Euler angle to the nearest 15-degree multiple; exact
    ties round away from zero.  Idempotent."""
    out = []
    for a in euler_deg:
        a = float(a)
        snapped = math.copysign(
            math.floor(abs(a) / ROTATION_SNAP_DEG + 0.5) * ROTATION_SNAP_DEG, a)
        out.append(snapped + 0.0)  # normalize -0.0
    return tuple(out)


def pose_from_euler(translation, euler_deg, snap: bool = False) -> Pose:
    if snap:
        euler_deg = snap_rotation(euler_deg)
    rot = Rotation.from_euler("xyz", euler_deg, degrees=True).as_matrix()
    return Pose(np.asarray(translation, dtype=float), rot)


def world_vertices(doc: Document, part_id: int, pose: Pose | None = None) -> np.ndarray:
    part = doc.part(part_id)
    return (pose or part.pose).apply(part.vertices)


def _hexa_collision_data(verts: np.ndarray):
    normals = np.array([pg.face_plane(verts, f)[1] for f in pg.FACE_NAMES])
    edges = []
    for fa, fb in pg.EDGES:
        i, j = pg.edge_vertex_indices(fa, fb)
        edges.append(verts[j] - verts[i])
    return normals, np.array(edges)


def _tri_collision_data(tri: np.ndarray):
    n = g3.triangle_normal(tri)
    return n[None, :], g3.triangle_edges(tri)


def _obstacles(doc: Document, moving_part: int):
    """Deterministically ordered collision obstacles: other parts by id,
    then scene triangles by index."""
    obstacles = []
    for pid in sorted(doc.parts):
        if pid == moving_part:
            continue
        verts = world_vertices(doc, pid)
        normals, edges = _hexa_collision_data(verts)
        obstacles.append((("part", pid), verts, normals, edges))
    if doc.settings.scene_collision and doc.scene_mesh is not None:
        for ti, tri in enumerate(doc.scene_mesh.triangles):
            tri = np.asarray(tri, dtype=float)
            normals, edges = _tri_collision_data(tri)
            obstacles.append((("triangle", ti), tri, normals, edges))
    return obstacles


def _deepest_contact(doc: Document, part_id: int, pose: Pose, obstacles):
    verts = world_vertices(doc, part_id, pose)
    normals, edges = _hexa_collision_data(verts)
    deepest = None
    for _key, ov, on, oe in obstacles:
        hit = g3.sat_mtv_3d(ov, on, oe, verts, normals, edges,
                            eps=CONTACT_TOL_MM)
        if hit is None:
            continue
        depth, axis = hit
        if deepest is None or depth > deepest[0] + 1e-12:
            deepest = (depth, axis)
    return deepest


def intersection_test(doc: Document, part_a: int, part_b: int,
                      pose_a: Pose | None = None, pose_b: Pose | None = None):
    """Exact separating-axis result between two parts at given poses.

    Returns None when disjoint, else (depth_mm, axis) with the axis
    pushing part_b away from part_a.
    """
    va = world_vertices(doc, part_a, pose_a)
    vb = world_vertices(doc, part_b, pose_b)
    na, ea = _hexa_collision_data(va)
    nb, eb = _hexa_collision_data(vb)
    return g3.sat_mtv_3d(va, na, ea, vb, nb, eb, eps=0.0)


def propose_move(doc: Document, part_id: int, target: Pose) -> Pose:
    """Set a part's pose, pushing it out of any penetration along the
    deepest-contact MTV.  Fails (pose unchanged) if the iteration budget
    is exhausted."""
    part = doc.part(part_id)
    prior = part.pose
    obstacles = _obstacles(doc, part_id)
    pose = target.copy()
    for _ in range(MAX_RESOLVE_ITERATIONS):
        contact = _deepest_contact(doc, part_id, pose, obstacles)
        if contact is None:
            part.pose = pose
            return pose
        depth, axis = contact
        pose = Pose(pose.translation + depth * axis, pose.rotation)
    if _deepest_contact(doc, part_id, pose, obstacles) is None:
        part.pose = pose
        return pose
    part.pose = prior
    raise UnresolvedCollision(
        f"could not resolve collisions for part {part_id} within "
        f"{MAX_RESOLVE_ITERATIONS} iterations")


def _face_data(doc: Document, part_id: int, face: str):
    verts = world_vertices(doc, part_id)
    idx = list(pg.FACE_CORNERS[face])
    pts = verts[idx]
    c = pts.mean(axis=0)
    n = pg.face_plane(verts, face)[1]
    return c, n


def _snap_candidates(doc: Document, part_id: int):
    """(sort key, plane point, plane normal) for every snappable surface."""
    candidates = []
    for pid in sorted(doc.parts):
        if pid == part_id:
            continue
        verts = world_vertices(doc, pid)
        for fi, face in enumerate(pg.FACE_NAMES):
            pts = verts[list(pg.FACE_CORNERS[face])]
            n = pg.face_plane(verts, face)[1]
            candidates.append(((1, pid, fi), pts.mean(axis=0), n))
    if doc.scene_mesh is not None:
        for ti, tri in enumerate(doc.scene_mesh.triangles):
            tri = np.asarray(tri, dtype=float)
            candidates.append(((0, ti, 0), tri.mean(axis=0),
                               g3.triangle_normal(tri)))
    return candidates


def snap_to_surface(doc: Document, part_id: int, face: str) -> Pose:
    """Rotate/translate a part minimally so the chosen face sits flush on
    the nearest near-parallel surface, then run collision resolution."""
    part = doc.part(part_id)
    c, n = _face_data(doc, part_id, face)
    cos_tol = math.cos(math.radians(SNAP_PARALLEL_TOL_DEG))
    best = None  # (gap, sort key, plane point, mate normal)
    for key, point, sn in _snap_candidates(doc, part_id):
        # mating surfaces face each other: the surface normal opposes the
        # part face normal (either stored orientation may occur)
        mate = -sn if float(sn @ n) > 0 else sn
        if float((-mate) @ n) < cos_tol:
            continue
        gap = abs(float((c - point) @ mate))
        if gap > SNAP_DIST_MM:
            continue
        entry = (gap, key, point, mate)
        if best is None or (gap < best[0] - 1e-12) or \
                (abs(gap - best[0]) <= 1e-12 and key < best[1]):
            best = entry
    if best is None:
        raise NoSnapTarget(f"no surface within {SNAP_DIST_MM} mm of face {face}")
    _gap, _key, point, mate = best
    # minimal rotation taking the face normal onto -mate, about the face center
    target_n = -mate
    rot, _ = Rotation.align_vectors(target_n[None, :], n[None, :])
    r = rot.as_matrix()
    t = part.pose.translation
    new_rot = r @ part.pose.rotation
    new_t = c + r @ (t - c)
    # the face center is the rotation pivot; slide along the mate normal
    # until the face lies in the target plane
    dist = float((c - point) @ mate)
    new_t = new_t - dist * mate
    return propose_move(doc, part_id, Pose(new_t, new_rot))


def load_scene_mesh(doc: Document, triangles, tags=None) -> SceneMesh:
    """Install room surfaces as collision obstacles for later moves."""
    tris = np.asarray(triangles, dtype=float).reshape(-1, 3, 3)
    for i, tri in enumerate(tris):
        if g3.triangle_area(tri) <= 1e-6:
            raise DegenerateTriangle(f"triangle {i} has near-zero area")
    tags = list(tags) if tags else [""] * len(tris)
    if len(tags) != len(tris):
        raise DegenerateTriangle("tag count does not match triangle count")
    doc.scene_mesh = SceneMesh(triangles=tris, tags=tags)
    return doc.scene_mesh


def parse_scene_mesh_text(text: str):
    """Parse either the line-oriented 9-reals-per-triangle format or an
    ASCII STL triangle soup.  Returns (triangles, tags)."""
    stripped = text.lstrip()
    if stripped.lower().startswith("solid"):
        return _parse_ascii_stl(text)
    triangles, tags = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        coords = [float(x) for x in fields[:9]]
        if len(coords) != 9:
            raise DegenerateTriangle(f"expected 9 coordinates per line, got {line!r}")
        triangles.append(np.array(coords).reshape(3, 3))
        tags.append(" ".join(fields[9:]))
    return triangles, tags


def _parse_ascii_stl(text: str):
    triangles, tags = [], []
    current = []
    for line in text.splitlines():
        fields = line.split()
        if not fields:
            continue
        if fields[0] == "vertex":
            current.append([float(x) for x in fields[1:4]])
        elif fields[0] == "endfacet":
            if len(current) != 3:
                raise DegenerateTriangle("facet without exactly 3 vertices")
            triangles.append(np.array(current))
            tags.append("")
            current = []
    return triangles, tags


def measure(point_a, point_b) -> float:
    """Virtual measuring tape: Euclidean distance in mm."""
    a = np.asarray(point_a, dtype=float)
    b = np.asarray(point_b, dtype=float)
    return float(np.linalg.norm(b - a))


def measure_part(doc: Document, part_id: int) -> tuple[float, float, float]:
    """Oriented bounding dims from the part's local geometry."""
    return doc.part(part_id).local_dims()
