"""Independent oracles used to check derived behavior.

Deliberately implemented with different machinery than the engine:
shapely for polygon distance and offsets, scipy ConvexHull for
halfspaces, matplotlib paths for rasterization, and plain interval
arithmetic for the exhaustive rectangle-packing grid search.
"""

import numpy as np
from matplotlib.path import Path
from scipy.spatial import ConvexHull
from shapely.geometry import Polygon


# -- exhaustive 1 mm grid feasibility for axis-aligned rectangles --------

def _rects_clash(ax, ay, aw, ah, bx, by, bw, bh, kerf, tol=1e-6):
    """True when the two kerf-dilated rectangles overlap with interior
    penetration beyond tol."""
    half = kerf / 2.0
    ox = min(ax + aw + half, bx + bw + half) - max(ax - half, bx - half)
    oy = min(ay + ah + half, by + bh + half) - max(ay - half, by - half)
    return ox > tol and oy > tol


def grid_find_rect(scrap_lw, placed, w, h, kerf):
    """Exhaustive bottom-left search for a w x h rectangle on a 1 mm grid
    with 0/90 degree rotations.  `placed` is a list of (x, y, w, h)
    undilated rectangles already on the scrap.  Returns (x, y, rot) of
    the first feasible spot in (y, x, rotation) order, or None.
    """
    L, W = scrap_lw
    best = None
    for rot, (rw, rh) in enumerate(((w, h), (h, w))):
        if rw > L + 1e-9 or rh > W + 1e-9:
            continue
        xs = np.arange(0, int(np.floor(L - rw + 1e-9)) + 1, dtype=float)
        ys = np.arange(0, int(np.floor(W - rh + 1e-9)) + 1, dtype=float)
        gx, gy = np.meshgrid(xs, ys)
        ok = np.ones(gx.shape, dtype=bool)
        for (px, py, pw, ph) in placed:
            half = kerf / 2.0
            ox = (np.minimum(gx + rw + half, px + pw + half)
                  - np.maximum(gx - half, px - half))
            oy = (np.minimum(gy + rh + half, py + ph + half)
                  - np.maximum(gy - half, py - half))
            ok &= ~((ox > 1e-6) & (oy > 1e-6))
        if not ok.any():
            continue
        yi = int(np.argmax(ok.any(axis=1)))
        xi = int(np.argmax(ok[yi]))
        key = (float(ys[yi]), float(xs[xi]), rot)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    y, x, rot = best
    return x, y, rot * 90


# -- polygon distance and offset ------------------------------------------

def polygon_distance(a, b) -> float:
    """Minimum edge-to-edge distance between two polygons (0 on overlap)."""
    return Polygon([tuple(p) for p in a]).distance(Polygon([tuple(p) for p in b]))


def mitre_offset_area(poly, r) -> float:
    """Area of the mitre-joined outward offset (shapely's buffer)."""
    return Polygon([tuple(p) for p in poly]).buffer(
        r, join_style=2, mitre_limit=1e6).area


def point_in_offset(poly, r, points) -> np.ndarray:
    """Membership of points in the r-offset of a polygon: distance to the
    original polygon <= r."""
    from shapely.geometry import Point
    shape = Polygon([tuple(p) for p in poly])
    return np.array([shape.distance(Point(p)) <= r for p in points])


# -- 1 mm rasterization usage ---------------------------------------------

def raster_usage(length_mm, width_mm, polygons) -> float:
    """Fraction of the scrap face covered by the union of footprints,
    measured on a 1 mm pixel grid (pixel centers)."""
    nx, ny = int(round(length_mm)), int(round(width_mm))
    if nx == 0 or ny == 0:
        return 0.0
    cx = np.arange(nx) + 0.5
    cy = np.arange(ny) + 0.5
    gx, gy = np.meshgrid(cx, cy)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    covered = np.zeros(len(pts), dtype=bool)
    for poly in polygons:
        covered |= Path(np.asarray(poly)).contains_points(pts, radius=1e-9)
    return float(covered.sum()) / float(nx * ny)


# -- convex 3D sampling oracles -------------------------------------------

def halfspaces(verts):
    """(A, b) with A @ x + b <= 0 for interior points, from scipy's hull."""
    hull = ConvexHull(np.asarray(verts, dtype=float))
    eq = hull.equations
    return eq[:, :3], eq[:, 3]


def interior_margins(verts, points):
    """Clearance of each point inside the hull (negative when outside)."""
    A, b = halfspaces(verts)
    return -(points @ A.T + b).max(axis=1)


def _sample_grid(lo, hi, step):
    axes = [np.arange(lo[i], hi[i] + step / 2, step) for i in range(3)]
    if any(len(a) == 0 for a in axes):
        return np.empty((0, 3))
    gx, gy, gz = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([gx.ravel(), gy.ravel(), gz.ravel()])


def sampled_penetration(verts_a, verts_b, step=0.5) -> float:
    """Lower bound on the penetration depth between two convex solids:
    the best interior clearance any 0.5 mm sample point enjoys inside
    both bodies at once.  0 when no sample is inside both."""
    va, vb = np.asarray(verts_a, float), np.asarray(verts_b, float)
    lo = np.maximum(va.min(axis=0), vb.min(axis=0)) - step
    hi = np.minimum(va.max(axis=0), vb.max(axis=0)) + step
    if np.any(hi < lo):
        return 0.0
    pts = _sample_grid(lo, hi, step)
    if len(pts) == 0:
        return 0.0
    m = np.minimum(interior_margins(va, pts), interior_margins(vb, pts))
    return float(max(m.max(), 0.0))


def sampled_point_to_plane_penetration(verts, tri, step=0.5) -> float:
    """How deep any sampled interior point of a solid sits past a
    triangle's plane while over the triangle (scene-mesh contact check).
    """
    verts = np.asarray(verts, float)
    tri = np.asarray(tri, float)
    n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
    n = n / np.linalg.norm(n)
    pts = _sample_grid(verts.min(axis=0), verts.max(axis=0), step)
    if len(pts) == 0:
        return 0.0
    inside = interior_margins(verts, pts) > 0
    pts = pts[inside]
    if len(pts) == 0:
        return 0.0
    d = (pts - tri[0]) @ n
    # only points whose projection lands on the triangle constrain it;
    # the solid may legitimately pass the plane elsewhere
    proj = pts - np.outer(d, n)
    d = d[_in_triangle(proj, tri)]
    if len(d) == 0:
        return 0.0
    above = float(d.max())
    below = float(-d.min())
    # separation requires clearing the shallower side of the plane
    return max(min(above, below), 0.0)


def _in_triangle(points, tri):
    v0 = tri[1] - tri[0]
    v1 = tri[2] - tri[0]
    w = points - tri[0]
    d00, d01, d11 = v0 @ v0, v0 @ v1, v1 @ v1
    d20, d21 = w @ v0, w @ v1
    denom = d00 * d11 - d01 * d01
    u = (d11 * d20 - d01 * d21) / denom
    v = (d00 * d21 - d01 * d20) / denom
    return (u >= -1e-9) & (v >= -1e-9) & (u + v <= 1 + 1e-9)


def sampled_overlap(verts_a, verts_b, step=0.5, margin=1e-9) -> bool:
    """True when some sample point is strictly inside both solids."""
    return sampled_penetration(verts_a, verts_b, step) > margin


# -- brute-force projection hull -------------------------------------------

def projection_hull(verts_3d):
    """Vertices of the z-projection hull via scipy (CCW order)."""
    pts = np.asarray(verts_3d, float)[:, :2]
    hull = ConvexHull(pts)
    return pts[hull.vertices]


def aabb_mtv(a_lo, a_hi, b_lo, b_hi):
    """Analytic minimum-translation vector pushing box b out of box a.
    Returns None when disjoint, else the displacement vector."""
    a_lo, a_hi = np.asarray(a_lo, float), np.asarray(a_hi, float)
    b_lo, b_hi = np.asarray(b_lo, float), np.asarray(b_hi, float)
    push_pos = a_hi - b_lo   # move b in +axis
    push_neg = b_hi - a_lo   # move b in -axis
    depth = np.minimum(push_pos, push_neg)
    if np.any(depth <= 0):
        return None
    k = int(np.argmin(depth))
    vec = np.zeros(3)
    vec[k] = depth[k] if push_pos[k] <= push_neg[k] else -depth[k]
    return vec
