import math

import numpy as np
import pytest
from scipy.optimize import brentq

from kgatlas.graph import build_graph
from kgatlas.layout import (
    LayoutConfig,
    initial_positions,
    run_layout,
    step,
)
from kgatlas.model import Triplet


@pytest.fixture
def pair_graph():
    return build_graph([Triplet("a", "r", "b")])


class TestInitialPositions:
    def test_single_node(self):
        g = build_graph([Triplet("a", "r", "a")])
        state = initial_positions(g, seed=1)
        assert state.positions.shape == (1, 2)
        assert np.all(np.abs(state.positions) <= 50.0)  # side 100*sqrt(1)
        assert np.all(state.velocities == 0)

    def test_same_seed_identical(self, pair_graph):
        a = initial_positions(pair_graph, seed=42)
        b = initial_positions(pair_graph, seed=42)
        assert np.array_equal(a.positions, b.positions)

    def test_different_seeds_differ(self, pair_graph):
        a = initial_positions(pair_graph, seed=1)
        b = initial_positions(pair_graph, seed=2)
        assert not np.array_equal(a.positions, b.positions)

    def test_square_scales_with_node_count(self):
        g = build_graph([Triplet(f"n{i}", "r", f"n{i+1}") for i in range(99)])
        state = initial_positions(g, seed=5)
        side = 100.0 * math.sqrt(g.node_count)
        assert np.all(np.abs(state.positions) <= side / 2)


class TestStep:
    def test_coincident_nodes_separate(self):
        g = build_graph([Triplet("a", "r", "b")])
        state = initial_positions(g, seed=0)
        state.positions[:] = 0.0
        nxt = step(state, g, LayoutConfig())
        assert np.linalg.norm(nxt.positions[0] - nxt.positions[1]) > 0

    def test_single_node_moves_toward_origin(self):
        g = build_graph([Triplet("solo", "r", "solo")])
        state = initial_positions(g, seed=0)
        state.positions[0] = [40.0, 30.0]
        before = np.linalg.norm(state.positions[0])
        nxt = step(state, g, LayoutConfig())
        after = np.linalg.norm(nxt.positions[0])
        assert after < before

    def test_spring_zero_at_rest_length(self, pair_graph):
        cfg = LayoutConfig()
        state = initial_positions(pair_graph, seed=0)
        state.positions[0] = [-cfg.spring_rest_length / 2, 0.0]
        state.positions[1] = [cfg.spring_rest_length / 2, 0.0]
        state.velocities[:] = 0.0
        nxt = step(state, pair_graph, cfg)
        # Only repulsion and centering act; both are purely horizontal here.
        assert nxt.positions[0][1] == pytest.approx(0.0)
        assert nxt.positions[1][1] == pytest.approx(0.0)

    def test_pinned_nodes_immobile(self, pair_graph):
        state = initial_positions(pair_graph, seed=7)
        state.pinned[:] = True
        current = state
        for _ in range(300):
            current = step(current, pair_graph, LayoutConfig())
        assert np.array_equal(current.positions, state.positions)

    def test_symmetric_pair_stays_symmetric(self, pair_graph):
        state = initial_positions(pair_graph, seed=0)
        state.positions[0] = [-30.0, -10.0]
        state.positions[1] = [30.0, 10.0]
        state.velocities[:] = 0.0
        current = state
        for _ in range(50):
            current = step(current, pair_graph, LayoutConfig())
            assert np.allclose(current.positions[0], -current.positions[1], atol=1e-9)


class TestRunLayout:
    def test_single_node_converges_at_origin(self):
        g = build_graph([Triplet("solo", "r", "solo")])
        result = run_layout(g, LayoutConfig(seed=3, displacement_epsilon=0.001))
        assert result.converged
        assert np.linalg.norm(result.positions[0]) < 0.1

    def test_two_node_equilibrium_matches_force_balance(self, pair_graph):
        cfg = LayoutConfig(seed=3)
        result = run_layout(pair_graph, cfg)
        separation = float(np.linalg.norm(result.positions[0] - result.positions[1]))

        def net_force(d):
            return (
                cfg.repulsion_strength / d**2
                - cfg.spring_stiffness * (d - cfg.spring_rest_length)
                - cfg.centering_strength * d / 2
            )

        equilibrium = brentq(net_force, 1.0, 1000.0)
        assert abs(separation - equilibrium) / equilibrium < 0.05

    def test_deterministic(self):
        g = build_graph([
            Triplet("a", "r", "b"),
            Triplet("b", "r", "c"),
            Triplet("c", "r", "a"),
            Triplet("c", "s", "d"),
        ])
        cfg = LayoutConfig(seed=9)
        a = run_layout(g, cfg)
        b = run_layout(g, cfg)
        assert np.array_equal(a.positions, b.positions)
        assert a.iterations == b.iterations

    def test_empty_graph(self):
        result = run_layout(build_graph([]), LayoutConfig())
        assert result.positions.shape == (0, 2)


class TestConfigValidation:
    def test_ranges(self):
        with pytest.raises(ValueError):
            LayoutConfig(repulsion_strength=0)
        with pytest.raises(ValueError):
            LayoutConfig(spring_stiffness=0)
        with pytest.raises(ValueError):
            LayoutConfig(velocity_decay=1.0)
        with pytest.raises(ValueError):
            LayoutConfig(centering_strength=1.5)
