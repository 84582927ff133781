import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from kgatlas.errors import MissingPositionError
from kgatlas.graph import build_graph
from kgatlas.layout import LayoutConfig, run_layout
from kgatlas.model import Triplet
from kgatlas.svg import RenderOptions, edge_control_point, render_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def parse_svg(text):
    return ET.fromstring(text)


class TestControlPoint:
    def test_zero_curvature_on_chord(self):
        ctrl = edge_control_point((0, 0), (10, 0), 0.0)
        assert ctrl == (5.0, 0.0)

    def test_offset_equals_curvature_times_chord(self):
        p0, p1 = (1.0, 2.0), (7.0, -3.0)
        curvature = 0.15
        ctrl = edge_control_point(p0, p1, curvature)
        chord = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
        mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
        offset = math.hypot(ctrl[0] - mid[0], ctrl[1] - mid[1])
        assert abs(offset - abs(curvature) * chord) < 1e-9

    def test_offset_perpendicular_to_chord(self):
        p0, p1 = (0.0, 0.0), (3.0, 4.0)
        ctrl = edge_control_point(p0, p1, 0.2)
        mid = (1.5, 2.0)
        chord_vec = (3.0, 4.0)
        off_vec = (ctrl[0] - mid[0], ctrl[1] - mid[1])
        dot = chord_vec[0] * off_vec[0] + chord_vec[1] * off_vec[1]
        assert abs(dot) < 1e-9


class TestRenderSvg:
    def test_single_node_no_edges(self):
        g = build_graph([Triplet("solo", "r", "solo")])
        # Self-loop makes 1 node, 1 edge; drop the edge case: use isolated pair.
        g = build_graph([Triplet("a", "r", "b")])
        positions = np.array([[0.0, 0.0], [10.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=False))
        root = parse_svg(doc)
        assert len(root.findall(f"{SVG_NS}circle")) == 2
        assert len(root.findall(f"{SVG_NS}path")) == 1

    def test_one_circle_zero_paths(self):
        g = build_graph([Triplet("only", "self", "only")])
        # A single node with a self-loop still renders one circle.
        positions = np.array([[0.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=False))
        root = parse_svg(doc)
        assert len(root.findall(f"{SVG_NS}circle")) == 1

    def test_parallel_edges_have_distinct_control_points(self):
        g = build_graph([Triplet("a", "r1", "b"), Triplet("a", "r2", "b")])
        positions = np.array([[0.0, 0.0], [100.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=False))
        root = parse_svg(doc)
        paths = [p.get("d") for p in root.findall(f"{SVG_NS}path")]
        assert len(paths) == 2 and paths[0] != paths[1]

    def test_straight_edge_control_on_chord(self):
        g = build_graph([Triplet("a", "r", "b")])
        positions = np.array([[0.0, 0.0], [10.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=False))
        root = parse_svg(doc)
        d = root.find(f"{SVG_NS}path").get("d")
        tokens = d.replace("M", "").replace("Q", "").split()
        x0, y0, cx, cy, x1, y1 = map(float, tokens)
        assert cy == pytest.approx((y0 + y1) / 2, abs=1e-6)
        assert cx == pytest.approx((x0 + x1) / 2, abs=1e-6)

    def test_labels_fall_back_to_relation(self):
        g = build_graph([Triplet("a", "some relation", "b")])
        positions = np.array([[0.0, 0.0], [10.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=True))
        assert "some relation" in doc

    def test_byte_identical_for_identical_input(self):
        g = build_graph([Triplet("a", "r", "b"), Triplet("b", "s", "c")])
        result = run_layout(g, LayoutConfig(seed=11))
        assert render_svg(g, result.positions) == render_svg(g, result.positions)

    def test_missing_position_error(self):
        g = build_graph([Triplet("a", "r", "b")])
        with pytest.raises(MissingPositionError):
            render_svg(g, np.zeros((1, 2)))

    def test_z_order_edges_nodes_labels(self):
        g = build_graph([Triplet("a", "r", "b")])
        positions = np.array([[0.0, 0.0], [10.0, 0.0]])
        doc = render_svg(g, positions, RenderOptions(show_labels=True))
        root = parse_svg(doc)
        tags = [child.tag.replace(SVG_NS, "") for child in root]
        assert tags.index("path") < tags.index("circle") < tags.index("text")

    def test_well_formed_xml_with_special_chars(self):
        g = build_graph([Triplet("a<b>", 'rel "x" & y', "c&d")])
        positions = np.array([[0.0, 0.0], [10.0, 0.0]])
        parse_svg(render_svg(g, positions))
