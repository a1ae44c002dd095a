"""3D arrangement: rotation snap, collision resolution, surface snap."""

import numpy as np
import pytest

import oracles
from conftest import make_part, make_scrap
from scrapcad import assembly
from scrapcad.errors import (DegenerateTriangle, NoSnapTarget,
                             UnresolvedCollision)
from scrapcad.model import Pose

FLOOR = [[[-5000.0, -5000.0, 0.0], [5000.0, -5000.0, 0.0], [5000.0, 5000.0, 0.0]],
         [[-5000.0, -5000.0, 0.0], [5000.0, 5000.0, 0.0], [-5000.0, 5000.0, 0.0]]]


def room_box(lx=3000.0, ly=3000.0, lz=2400.0):
    """12 triangles of an axis-aligned box room, inward-facing normals."""
    c = np.array([[0, 0, 0], [lx, 0, 0], [0, ly, 0], [lx, ly, 0],
                  [0, 0, lz], [lx, 0, lz], [0, ly, lz], [lx, ly, lz]], float)
    quads = [(0, 1, 3, 2), (4, 5, 7, 6), (0, 1, 5, 4),
             (2, 3, 7, 6), (0, 2, 6, 4), (1, 3, 7, 5)]
    tris = []
    for a, b, d, e in quads:
        tris.append([c[a], c[b], c[d]])
        tris.append([c[a], c[d], c[e]])
    return tris


class TestSnapRotation:
    def test_examples(self):
        assert assembly.snap_rotation((17, 44, 91)) == (15, 45, 90)
        assert assembly.snap_rotation((30, 45, 60)) == (30, 45, 60)

    def test_tie_away_from_zero(self):
        assert assembly.snap_rotation((7.5, -7.5, 0)) == (15, -15, 0)

    def test_idempotent_and_odd(self):
        rng = np.random.default_rng(3)
        for e in rng.uniform(-180, 180, (50, 3)):
            snapped = assembly.snap_rotation(e)
            assert assembly.snap_rotation(snapped) == snapped
            if not any(abs(abs(x) % 15 - 7.5) < 1e-9 for x in e):
                neg = assembly.snap_rotation(tuple(-x for x in e))
                assert neg == tuple(-s for s in snapped)


class TestProposeMove:
    def _two_cubes(self, doc):
        a = make_part(doc, dims=(100, 100, 100))
        b = make_part(doc, dims=(100, 100, 100))
        return a, b

    def test_free_target_is_identity(self, doc):
        a, b = self._two_cubes(doc)
        target = assembly.pose_from_euler([500, 0, 0], [0, 0, 0])
        pose = assembly.propose_move(doc, b.id, target)
        assert np.allclose(pose.translation, [500, 0, 0])

    def test_box_overlap_resolves_flush(self, doc):
        a, b = self._two_cubes(doc)
        assembly.propose_move(doc, a.id, assembly.pose_from_euler([500, 0, 0], [0, 0, 0]))
        target = assembly.pose_from_euler([580, 0, 0], [0, 0, 0])
        pose = assembly.propose_move(doc, b.id, target)
        assert np.allclose(pose.translation, [600, 0, 0], atol=1e-9)
        va = assembly.world_vertices(doc, a.id)
        vb = assembly.world_vertices(doc, b.id)
        assert oracles.sampled_penetration(va, vb) <= 1e-3

    def test_only_moved_part_changes(self, doc):
        a, b = self._two_cubes(doc)
        assembly.propose_move(doc, a.id, assembly.pose_from_euler([500, 0, 0], [0, 0, 0]))
        before = a.pose.to_dict()
        assembly.propose_move(doc, b.id, assembly.pose_from_euler([580, 0, 0], [0, 0, 0]))
        assert a.pose.to_dict() == before

    def test_floor_drop_lifts(self, doc):
        assembly.load_scene_mesh(doc, FLOOR, ["floor", "floor"])
        p = make_part(doc, dims=(200, 100, 20))
        target = assembly.pose_from_euler([1000, 1000, -5], [0, 0, 0])
        pose = assembly.propose_move(doc, p.id, target)
        assert pose.translation[2] == pytest.approx(0.0, abs=1e-9)
        for tri in doc.scene_mesh.triangles:
            assert oracles.sampled_point_to_plane_penetration(
                assembly.world_vertices(doc, p.id), tri) <= 1e-3

    def test_no_escape_reverts(self, doc):
        # a 80 mm floor/ceiling gap cannot host a 100 mm cube: the MTV
        # iteration ping-pongs and must give up with the pose untouched
        ceiling = [[[-5000.0, -5000.0, 80.0], [5000.0, -5000.0, 80.0],
                    [5000.0, 5000.0, 80.0]],
                   [[-5000.0, -5000.0, 80.0], [5000.0, 5000.0, 80.0],
                    [-5000.0, 5000.0, 80.0]]]
        assembly.load_scene_mesh(doc, FLOOR + ceiling)
        p = make_part(doc, dims=(100, 100, 100))
        p.pose = assembly.pose_from_euler([2000, 2000, 200], [0, 0, 0])
        prior = p.pose.to_dict()
        with pytest.raises(UnresolvedCollision):
            assembly.propose_move(doc, p.id,
                                  assembly.pose_from_euler([0, 0, -10], [0, 0, 0]))
        assert p.pose.to_dict() == prior

    def test_snap_applied_through_session(self, session):
        session.apply_command({"name": "spawn_part",
                               "args": {"dims": [100, 100, 100]}})
        event = session.apply_command({"name": "propose_move",
                                       "args": {"part_id": 1,
                                                "translation": [500, 0, 0],
                                                "euler_deg": [17, 44, 91]}})
        from scipy.spatial.transform import Rotation
        rot = np.array(event["result"]["pose"]["rotation"])
        euler = Rotation.from_matrix(rot).as_euler("xyz", degrees=True)
        assert np.allclose(euler, [15, 45, 90], atol=1e-9)


class TestSnapToSurface:
    def test_flush_to_floor(self, doc):
        assembly.load_scene_mesh(doc, FLOOR, ["floor", "floor"])
        p = make_part(doc, dims=(200, 100, 20))
        # 4 mm above the floor, 2 degrees off parallel
        p.pose = assembly.pose_from_euler([0, 0, 4], [2, 0, 0])
        assembly.snap_to_surface(doc, p.id, "-z")
        verts = assembly.world_vertices(doc, p.id)
        assert np.allclose(verts[:4, 2], 0.0, atol=1e-9)

    def test_out_of_range(self, doc):
        assembly.load_scene_mesh(doc, FLOOR, ["floor", "floor"])
        p = make_part(doc, dims=(200, 100, 20))
        p.pose = assembly.pose_from_euler([0, 0, 25], [0, 0, 0])
        with pytest.raises(NoSnapTarget):
            assembly.snap_to_surface(doc, p.id, "-z")

    def test_nearest_wins(self, doc):
        shelf = [[[-500.0, -500.0, 26.0], [500.0, -500.0, 26.0], [500.0, 500.0, 26.0]],
                 [[-500.0, -500.0, 26.0], [500.0, 500.0, 26.0], [-500.0, 500.0, 26.0]]]
        assembly.load_scene_mesh(doc, FLOOR + shelf)
        p = make_part(doc, dims=(200, 100, 20))
        p.pose = assembly.pose_from_euler([0, 0, 3], [0, 0, 0])
        # floor gap 3 mm < shelf gap 23 mm
        assembly.snap_to_surface(doc, p.id, "-z")
        assert assembly.world_vertices(doc, p.id)[:, 2].min() == pytest.approx(0.0)


class TestSceneMesh:
    def test_room_box(self, doc):
        mesh = assembly.load_scene_mesh(doc, room_box())
        assert len(mesh.triangles) == 12

    def test_zero_area_rejected(self, doc):
        bad = [[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]]]
        with pytest.raises(DegenerateTriangle):
            assembly.load_scene_mesh(doc, bad)

    def test_replace_keeps_poses(self, doc):
        assembly.load_scene_mesh(doc, FLOOR)
        p = make_part(doc, dims=(100, 100, 20))
        p.pose = assembly.pose_from_euler([0, 0, -5], [0, 0, 0])
        assembly.load_scene_mesh(doc, room_box())
        assert p.pose.translation[2] == -5  # poses are user-owned

    def test_parse_plain_text(self):
        text = "0 0 0 100 0 0 0 100 0 floor\n# comment\n0 0 0 0 0 50 50 0 0 wall\n"
        tris, tags = assembly.parse_scene_mesh_text(text)
        assert len(tris) == 2 and tags == ["floor", "wall"]

    def test_parse_ascii_stl(self):
        text = ("solid room\n facet normal 0 0 1\n  outer loop\n"
                "   vertex 0 0 0\n   vertex 100 0 0\n   vertex 0 100 0\n"
                "  endloop\n endfacet\nendsolid room\n")
        tris, tags = assembly.parse_scene_mesh_text(text)
        assert len(tris) == 1
        assert np.allclose(tris[0][1], [100, 0, 0])


class TestMeasure:
    def test_straight(self):
        assert assembly.measure((0, 0, 0), (100, 0, 0)) == 100.0

    def test_pythagoras(self):
        assert assembly.measure((0, 0, 0), (3, 4, 0)) == 5.0

    def test_part_dims(self, doc):
        p = make_part(doc, dims=(800, 100, 20))
        assert assembly.measure_part(doc, p.id) == (800, 100, 20)


class TestIntersectionTest:
    def test_disjoint(self, doc):
        a = make_part(doc, dims=(1, 1, 1))
        b = make_part(doc, dims=(1, 1, 1))
        b.pose = assembly.pose_from_euler([200, 0, 0], [0, 0, 0])
        assert assembly.intersection_test(doc, a.id, b.id) is None

    def test_identical_poses(self, doc):
        a = make_part(doc, dims=(100, 50, 20))
        b = make_part(doc, dims=(100, 50, 20))
        depth, _ = assembly.intersection_test(doc, a.id, b.id)
        assert depth == pytest.approx(20.0)

    def test_agrees_with_sampling_oracle(self, doc):
        a = make_part(doc, dims=(80, 60, 40))
        b = make_part(doc, dims=(50, 50, 50))
        rng = np.random.default_rng(11)
        for _ in range(60):
            b.pose = assembly.pose_from_euler(
                rng.uniform(-60, 120, 3), rng.uniform(-180, 180, 3))
            hit = assembly.intersection_test(doc, a.id, b.id)
            va = assembly.world_vertices(doc, a.id)
            vb = assembly.world_vertices(doc, b.id)
            pen = oracles.sampled_penetration(va, vb)
            if hit is None:
                assert pen <= 0.5  # sampling cannot refute a thin sliver
            elif hit[0] > 0.5:
                assert pen > 0.0
