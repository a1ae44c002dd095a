"""Fabrication exports: cut list, SVG plans, overlays, round-trips."""

import csv
import io

import numpy as np
import pytest

from conftest import make_part, make_scrap
from scrapcad import cutplan, exports, parts


def _setup(doc):
    s = make_scrap(doc, 300, 300, 20, tag="offcut")
    p = make_part(doc, dims=(100, 100, 20))
    cutplan.reassign(doc, p.id, s.id)
    return s, p


class TestCutlist:
    def test_single_part_row(self, doc):
        s, p = _setup(doc)
        rows = list(csv.DictReader(io.StringIO(exports.export_cutlist(doc))))
        assert len(rows) == 1
        row = rows[0]
        assert row["part_id"] == str(p.id)
        assert row["scrap_no"] == str(s.id)
        assert (row["length_mm"], row["width_mm"], row["thickness_mm"]) == \
            ("100.0", "100.0", "20.0")
        assert row["tag"] == "offcut"

    def test_congruent_parts_grouped(self, doc):
        s, p = _setup(doc)
        parts.duplicate_part(doc, p.id)
        rows = exports.cutlist_records(doc)
        assert len(rows) == 1
        assert rows[0]["qty"] == 2

    def test_bevel_note(self, doc):
        s = make_scrap(doc, 200, 100, 100)
        p = make_part(doc, s.id)
        parts.move_edge(doc, p.id, ("+x", "+z"), "+x", -100.0)
        rows = exports.cutlist_records(doc)
        assert "bevel 45.0° on edge +x/+z" in rows[0]["bevels"]

    def test_dims_equal_model_exactly(self, doc):
        s = make_scrap(doc, 300, 300, 20)
        p = make_part(doc, dims=(123.456, 78.9, 20.0))
        cutplan.reassign(doc, p.id, s.id)
        rec = exports.cutlist_records(doc)[0]
        assert (rec["length_mm"], rec["width_mm"], rec["thickness_mm"]) == \
            p.local_dims()


class TestSvg:
    def test_structure(self, doc):
        s, p = _setup(doc)
        svg = exports.export_svg(doc, s.id)
        assert f'<g id="scrap-{s.id}">' in svg
        assert 'class="scrap-boundary"' in svg
        assert f'data-part-id="{p.id}"' in svg
        assert f">{p.id}</text>" in svg
        assert 'viewBox="0 0 300.0 300.0"' in svg

    def test_mm_units(self, doc):
        s, _ = _setup(doc)
        svg = exports.export_svg(doc, s.id)
        assert 'width="300.0mm"' in svg and 'height="300.0mm"' in svg

    def test_roundtrip_equals_footprints(self, doc):
        s, p = _setup(doc)
        cutplan.move_cut(doc, p.id, (37.25, 91.125))
        got = exports.parse_svg_footprints(exports.export_svg(doc, s.id))
        want = cutplan.placed_footprint(doc, p.id)
        assert np.max(np.abs(got[p.id] - want)) <= 1e-6

    def test_overlay_unfilled_same_geometry(self, doc):
        s, p = _setup(doc)
        overlay = exports.export_overlay(doc, s.id)
        assert 'fill="none"' in overlay
        a = exports.parse_svg_footprints(overlay)
        b = exports.parse_svg_footprints(exports.export_svg(doc, s.id))
        assert np.array_equal(a[p.id], b[p.id])

    def test_pentagon_roundtrip(self, doc):
        s = make_scrap(doc, 400, 300, 50)
        p = make_part(doc, dims=(200, 100, 50))
        parts.move_edge(doc, p.id, ("+x", "+z"), "+x", 30.0)
        parts.move_edge(doc, p.id, ("+y", "-z"), "+y", 20.0)
        cutplan.reassign(doc, p.id, s.id)
        got = exports.parse_svg_footprints(exports.export_svg(doc, s.id))
        want = cutplan.placed_footprint(doc, p.id)
        assert got[p.id].shape == want.shape == (5, 2)
        assert np.max(np.abs(got[p.id] - want)) <= 1e-6
