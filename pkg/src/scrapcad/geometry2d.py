"""Convex 2D polygon primitives for the cut-plan engine.

All polygons are numpy arrays of shape (N, 2), counter-clockwise, with
no duplicate or collinear vertices, starting at the lexicographically
smallest vertex.  Units are millimeters throughout.
"""

from __future__ import annotations

import numpy as np

EPS = 1e-9


def canonicalize(poly: np.ndarray) -> np.ndarray:
    """Rotate vertex order so the lexicographically smallest vertex is first."""
    poly = np.asarray(poly, dtype=float)
    start = min(range(len(poly)), key=lambda i: (poly[i, 0], poly[i, 1]))
    return np.roll(poly, -start, axis=0)


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull, CCW, collinear points dropped."""
    pts = np.asarray(points, dtype=float)
    uniq = sorted({(float(x), float(y)) for x, y in pts})
    if len(uniq) < 3:
        return canonicalize(np.array(uniq, dtype=float).reshape(-1, 2))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= EPS:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= EPS:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return canonicalize(np.array(hull, dtype=float))


def polygon_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_centroid(poly: np.ndarray) -> np.ndarray:
    a = polygon_area(poly)
    if abs(a) < EPS:
        return poly.mean(axis=0)
    x, y = poly[:, 0], poly[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    c = x * yn - xn * y
    cx = float(np.sum((x + xn) * c)) / (6.0 * a)
    cy = float(np.sum((y + yn) * c)) / (6.0 * a)
    return np.array([cx, cy])


def bbox(poly: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return poly.min(axis=0), poly.max(axis=0)


def rotate_quarter(poly: np.ndarray, quarter_turns: int) -> np.ndarray:
    """Rotate CCW by 90-degree increments about the origin (exact)."""
    q = quarter_turns % 4
    x, y = poly[:, 0].copy(), poly[:, 1].copy()
    for _ in range(q):
        x, y = -y, x
    return np.column_stack([x, y])


def edge_normals(poly: np.ndarray) -> np.ndarray:
    """Outward unit normals, one per edge (edge i runs v[i] -> v[i+1])."""
    e = np.roll(poly, -1, axis=0) - poly
    n = np.column_stack([e[:, 1], -e[:, 0]])
    lens = np.linalg.norm(n, axis=1)
    return n / lens[:, None]


def offset_convex(poly: np.ndarray, r: float) -> np.ndarray:
    """Mitered outward offset of a convex CCW polygon by distance r.

    Each edge line is shifted outward by r and consecutive lines are
    intersected, so the result is again convex.  r = 0 is the identity.
    """
    if r == 0:
        return poly
    n = edge_normals(poly)
    c = np.einsum("ij,ij->i", n, poly) + r  # line i: n[i].x == c[i]
    k = len(poly)
    out = np.empty_like(poly)
    for i in range(k):
        j = (i - 1) % k
        a = np.array([n[j], n[i]])
        b = np.array([c[j], c[i]])
        out[i] = np.linalg.solve(a, b)
    return canonicalize(out)


def _project(poly: np.ndarray, axis: np.ndarray) -> tuple[float, float]:
    d = poly @ axis
    return float(d.min()), float(d.max())


def sat_mtv(a: np.ndarray, b: np.ndarray, eps: float = EPS):
    """Separating-axis test for two convex polygons.

    Returns None when the interiors are disjoint (touching counts as
    disjoint, controlled by eps), otherwise (depth, axis) where moving b
    by depth * axis separates the pair.
    """
    axes = np.vstack([edge_normals(a), edge_normals(b)])
    best_depth = np.inf
    best_axis = None
    for axis in axes:
        amin, amax = _project(a, axis)
        bmin, bmax = _project(b, axis)
        # directional push distances for b (handles containment exactly)
        d_pos = amax - bmin
        d_neg = bmax - amin
        depth = min(d_pos, d_neg)
        if depth <= eps:
            return None
        if depth < best_depth:
            best_depth = depth
            best_axis = axis if d_pos <= d_neg else -axis
    return best_depth, best_axis


def _point_segment_distance(p, s0, s1):
    d = s1 - s0
    t = float((p - s0) @ d) / max(float(d @ d), EPS)
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - (s0 + t * d)))


def min_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Minimum edge-to-edge distance between convex polygons (0 if they
    overlap or touch)."""
    if sat_mtv(a, b) is not None:
        return 0.0
    best = np.inf
    for p_poly, s_poly in ((a, b), (b, a)):
        for p in p_poly:
            for i in range(len(s_poly)):
                d = _point_segment_distance(p, s_poly[i], s_poly[(i + 1) % len(s_poly)])
                best = min(best, d)
    return best


def points_strictly_inside(points: np.ndarray, poly: np.ndarray,
                           eps: float = 1e-7) -> np.ndarray:
    """Vectorized strict interior test for many points at once."""
    n = edge_normals(poly)
    c = np.einsum("ij,ij->i", n, poly)
    d = points @ n.T  # (P, E)
    return np.all(d < c[None, :] - eps, axis=1)


def minkowski_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minkowski sum of convex polygons (hull of pairwise vertex sums)."""
    sums = (a[:, None, :] + b[None, :, :]).reshape(-1, 2)
    return convex_hull(sums)


def reflect(poly: np.ndarray) -> np.ndarray:
    return convex_hull(-poly)
