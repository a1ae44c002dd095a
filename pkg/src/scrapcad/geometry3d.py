"""Separating-axis collision for convex solids and triangles.

Vertices are numpy arrays of shape (N, 3) in world millimeters.  The
minimum-translation vector returned by :func:`sat_mtv_3d` always pushes
the *second* body out of the first.
"""

from __future__ import annotations

import numpy as np

EPS = 1e-12


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    return v / n if n > EPS else v


def triangle_normal(tri: np.ndarray) -> np.ndarray:
    return unit(np.cross(tri[1] - tri[0], tri[2] - tri[0]))


def triangle_area(tri: np.ndarray) -> float:
    return 0.5 * float(np.linalg.norm(np.cross(tri[1] - tri[0], tri[2] - tri[0])))


def triangle_edges(tri: np.ndarray) -> np.ndarray:
    return np.array([tri[1] - tri[0], tri[2] - tri[1], tri[0] - tri[2]])


def _candidate_axes(normals_a, edges_a, normals_b, edges_b) -> np.ndarray:
    axes = [normals_a, normals_b]
    cross = np.cross(edges_a[:, None, :], edges_b[None, :, :]).reshape(-1, 3)
    lens = np.linalg.norm(cross, axis=1)
    good = lens > 1e-9
    if np.any(good):
        axes.append(cross[good] / lens[good][:, None])
    return np.vstack(axes)


def sat_mtv_3d(verts_a: np.ndarray, normals_a: np.ndarray, edges_a: np.ndarray,
               verts_b: np.ndarray, normals_b: np.ndarray, edges_b: np.ndarray,
               eps: float = 0.0):
    """Exact separating-axis test between two convex shapes.

    Returns None when separated (projection gap > -eps on some axis),
    otherwise (depth, axis) with axis oriented so translating shape b by
    depth * axis resolves the penetration.
    """
    axes = _candidate_axes(normals_a, edges_a, normals_b, edges_b)
    pa = verts_a @ axes.T  # (Na, K)
    pb = verts_b @ axes.T
    amin, amax = pa.min(axis=0), pa.max(axis=0)
    bmin, bmax = pb.min(axis=0), pb.max(axis=0)
    # directional push distances for b; taking the min per axis handles
    # containment and zero-thickness triangles exactly
    d_pos = amax - bmin
    d_neg = bmax - amin
    overlap = np.minimum(d_pos, d_neg)
    if np.any(overlap <= eps):
        return None
    k = int(np.argmin(overlap))
    depth = float(overlap[k])
    axis = axes[k] if d_pos[k] <= d_neg[k] else -axes[k]
    return depth, axis
