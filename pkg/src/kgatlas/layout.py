"""Deterministic headless force-directed layout.

Mirrors the browser-side live simulation so that exports and tests are
reproducible: same graph, config, and seed give bit-identical positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Set, Tuple

import numpy as np

from kgatlas.graph import KnowledgeGraph


@dataclass(frozen=True)
class LayoutConfig:
    repulsion_strength: float = 1000.0
    spring_rest_length: float = 60.0
    spring_stiffness: float = 0.08
    centering_strength: float = 0.05
    velocity_decay: float = 0.4
    max_iterations: int = 300
    displacement_epsilon: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.repulsion_strength <= 0:
            raise ValueError("repulsion_strength must be > 0")
        if not 0 < self.spring_stiffness <= 1:
            raise ValueError("spring_stiffness must be in (0, 1]")
        if not 0 <= self.centering_strength <= 1:
            raise ValueError("centering_strength must be in [0, 1]")
        if not 0 < self.velocity_decay < 1:
            raise ValueError("velocity_decay must be in (0, 1)")


@dataclass
class LayoutState:
    positions: np.ndarray  # (n, 2)
    velocities: np.ndarray  # (n, 2)
    pinned: np.ndarray  # (n,) bool
    iteration: int = 0

    def copy(self) -> "LayoutState":
        return LayoutState(
            positions=self.positions.copy(),
            velocities=self.velocities.copy(),
            pinned=self.pinned.copy(),
            iteration=self.iteration,
        )


@dataclass(frozen=True)
class LayoutResult:
    positions: np.ndarray
    converged: bool
    iterations: int


def initial_positions(graph: KnowledgeGraph, seed: int = 0) -> LayoutState:
    """Seeded uniform placement in a square of side 100 * sqrt(node count)."""
    n = graph.node_count
    rng = np.random.default_rng(seed)
    side = 100.0 * math.sqrt(n) if n else 0.0
    positions = rng.uniform(-side / 2, side / 2, size=(n, 2))
    return LayoutState(
        positions=positions,
        velocities=np.zeros((n, 2)),
        pinned=np.zeros(n, dtype=bool),
    )


def _fallback_directions(n: int) -> np.ndarray:
    """Deterministic unit vectors used to separate exactly coincident nodes,
    derived from node index so the simulation stays reproducible."""
    angles = np.arange(n) * (2.0 * math.pi * 0.6180339887498949)
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def step(
    state: LayoutState, graph: KnowledgeGraph, config: LayoutConfig
) -> LayoutState:
    """One simulation tick: repulsion, springs, centering, then damped
    velocity integration. Pinned nodes do not move."""
    n = graph.node_count
    if n == 0:
        return state.copy()
    pos = state.positions
    forces = np.zeros((n, 2))

    # Pairwise repulsion ~ k / d^2, distance clamped below by 1 unit.
    diff = pos[:, None, :] - pos[None, :, :]  # (n, n, 2) i minus j
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    coincident = dist < 1e-12
    np.fill_diagonal(coincident, False)
    fallback = _fallback_directions(n)
    unit = np.divide(diff, np.maximum(dist, 1e-12)[:, :, None])
    if coincident.any():
        ii, jj = np.nonzero(coincident)
        sign = np.where(ii > jj, 1.0, -1.0)
        unit[ii, jj] = sign[:, None] * fallback[np.minimum(ii, jj)]
    clamped = np.maximum(dist, 1.0)
    magnitude = config.repulsion_strength / (clamped * clamped)
    np.fill_diagonal(magnitude, 0.0)
    forces += np.einsum("ij,ijk->ik", magnitude, unit)

    # Hooke springs per edge toward rest length.
    for e in graph.edges:
        if e.source == e.target:
            continue
        d_vec = pos[e.target] - pos[e.source]
        d = float(np.hypot(d_vec[0], d_vec[1]))
        if d < 1e-12:
            continue  # repulsion separates coincident endpoints first
        pull = config.spring_stiffness * (d - config.spring_rest_length)
        f = pull * d_vec / d
        forces[e.source] += f
        forces[e.target] -= f

    # Centering pull toward the origin.
    forces -= config.centering_strength * pos

    velocities = (state.velocities + forces) * (1.0 - config.velocity_decay)
    velocities[state.pinned] = 0.0
    positions = pos + velocities
    positions[state.pinned] = pos[state.pinned]
    return LayoutState(
        positions=positions,
        velocities=velocities,
        pinned=state.pinned.copy(),
        iteration=state.iteration + 1,
    )


def run_layout(
    graph: KnowledgeGraph,
    config: Optional[LayoutConfig] = None,
    state: Optional[LayoutState] = None,
) -> LayoutResult:
    """Iterate until the largest per-node displacement drops below epsilon or
    the iteration budget runs out."""
    cfg = config or LayoutConfig()
    current = state.copy() if state is not None else initial_positions(graph, cfg.seed)
    converged = False
    iterations = 0
    for _ in range(cfg.max_iterations):
        nxt = step(current, graph, cfg)
        iterations += 1
        moved = np.abs(nxt.positions - current.positions).max() if graph.node_count else 0.0
        current = nxt
        if moved < cfg.displacement_epsilon:
            converged = True
            break
    return LayoutResult(
        positions=current.positions, converged=converged, iterations=iterations
    )
