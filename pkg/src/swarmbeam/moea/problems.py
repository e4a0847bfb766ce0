"""Adapters that expose scenarios as mixed-genome optimization problems.

The adapters own the genome layout, decode genomes into scenario solutions
(including a deterministic minimum-separation repair so every decoded
solution is feasible), and forward evaluation to the scenario objectives.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..emcore import Vec3, generate_baseline_geometry
from ..errors import ConfigError
from ..scenarios import (
    Box,
    ElementConfig,
    ObjectiveVector,
    RelayScenario,
    RelaySolution,
    TwoWayScenario,
    TwoWaySolution,
    evaluate_relay,
    evaluate_twoway,
)
from .genome import Genome, GenomeSchema


def _axis_values(box_range: tuple[float, float], grid: int | None) -> np.ndarray | None:
    if grid is None:
        return None
    if grid < 2:
        raise ConfigError(f"position grid needs >= 2 levels per axis, got {grid!r}")
    return np.linspace(box_range[0], box_range[1], grid)


def _snap(value: float, axis: np.ndarray) -> float:
    idx = int(np.argmin(np.abs(axis - value)))
    return float(axis[idx])


def _repair_separation(
    pts: np.ndarray, box: Box, d_min: float, max_rounds: int = 60
) -> np.ndarray:
    """Deterministically push too-close UAVs apart until all pairs clear d_min.

    The push overshoots d_min slightly so pairs pinned against the box wall
    (which only separate by half steps) still clear the bound in a few
    rounds rather than approaching it asymptotically.
    """
    if d_min <= 0 or pts.shape[0] < 2:
        return pts
    lo = np.array([box.x[0], box.y[0], box.z[0]])
    hi = np.array([box.x[1], box.y[1], box.z[1]])
    target = d_min * (1.0 + 1e-3)
    n = pts.shape[0]
    for _ in range(max_rounds):
        moved = False
        for i in range(n):
            for j in range(i + 1, n):
                diff = pts[i] - pts[j]
                d = float(np.linalg.norm(diff))
                if d >= d_min * (1.0 - 1e-9):
                    continue
                if d == 0.0:
                    # deterministic tie-break direction from the pair index
                    ang = 2.399963229728653 * (i * n + j)  # golden-angle spacing
                    unit = np.array([math.cos(ang), math.sin(ang), 0.0])
                else:
                    unit = diff / d
                push = unit * (target - d) / 2.0
                pts[i] = np.minimum(np.maximum(pts[i] + push, lo), hi)
                pts[j] = np.minimum(np.maximum(pts[j] - push, lo), hi)
                moved = True
        if not moved:
            return pts
    return pts


def _box_gene_bounds(box: Box, n_uavs: int) -> tuple[list[float], list[float], bool]:
    free_z = box.z[1] > box.z[0]
    lo, hi = [], []
    for _ in range(n_uavs):
        lo.extend([box.x[0], box.y[0]] + ([box.z[0]] if free_z else []))
        hi.extend([box.x[1], box.y[1]] + ([box.z[1]] if free_z else []))
    return lo, hi, free_z


def _decode_formation(
    genes: np.ndarray,
    box: Box,
    n_uavs: int,
    free_z: bool,
    d_min: float,
    grid_x: np.ndarray | None,
    grid_y: np.ndarray | None,
) -> list[Vec3]:
    per = 3 if free_z else 2
    pts = np.empty((n_uavs, 3))
    for u in range(n_uavs):
        g = genes[u * per : (u + 1) * per]
        x, y = float(g[0]), float(g[1])
        if grid_x is not None:
            x, y = _snap(x, grid_x), _snap(y, grid_y)
        pts[u] = (x, y, float(g[2]) if free_z else box.z[0])
    pts = _repair_separation(pts, box, d_min)
    return [Vec3(*pts[u]) for u in range(n_uavs)]


class RelayProblem:
    """Genome layout for a relay scenario.

    Continuous genes hold, per cluster leg, each UAV's x/y (plus z when the
    box has vertical freedom) followed by the per-UAV excitation weights
    (omitted when ``weight_levels`` turns them into integer genes). Integer
    genes then hold per-leg weight levels (optional) and one receiver choice
    per cluster; the permutation gene is the cluster visiting order.

    ``position_grid`` snaps decoded x/y to an n-point lattice per axis,
    shrinking the search space to an enumerable set.
    """

    def __init__(
        self,
        scenario: RelayScenario,
        position_grid: int | None = None,
        weight_levels: Sequence[float] | None = None,
    ):
        self.scenario = scenario
        self.n_uavs = scenario.n_uavs
        self.n_clusters = len(scenario.clusters)
        self._grid_x = _axis_values(scenario.swarm_box.x, position_grid)
        self._grid_y = _axis_values(scenario.swarm_box.y, position_grid)
        self.weight_levels = None if weight_levels is None else [float(w) for w in weight_levels]
        if self.weight_levels is not None:
            if not self.weight_levels:
                raise ConfigError("weight_levels must not be empty")
            for w in self.weight_levels:
                if not (0.0 <= w <= 1.0):
                    raise ConfigError(f"weight level {w!r} outside [0, 1]")

        pos_lo, pos_hi, self._free_z = _box_gene_bounds(scenario.swarm_box, self.n_uavs)
        self._pos_genes = len(pos_lo)
        lo, hi = [], []
        for _ in range(self.n_clusters):
            lo.extend(pos_lo)
            hi.extend(pos_hi)
            if self.weight_levels is None:
                lo.extend([0.0] * self.n_uavs)
                hi.extend([1.0] * self.n_uavs)
        int_lo, int_hi = [], []
        if self.weight_levels is not None:
            int_lo.extend([0] * (self.n_clusters * self.n_uavs))
            int_hi.extend([len(self.weight_levels) - 1] * (self.n_clusters * self.n_uavs))
        for c in scenario.clusters:
            int_lo.append(0)
            int_hi.append(len(c.terminals) - 1)
        self.schema = GenomeSchema(
            np.array(lo), np.array(hi), np.array(int_lo), np.array(int_hi), self.n_clusters
        )

    def _leg_block(self) -> int:
        per_leg = self._pos_genes
        if self.weight_levels is None:
            per_leg += self.n_uavs
        return per_leg

    def decode(self, genome: Genome) -> RelaySolution:
        block = self._leg_block()
        legs = []
        for c in range(self.n_clusters):
            genes = genome.continuous[c * block : (c + 1) * block]
            positions = _decode_formation(
                genes[: self._pos_genes],
                self.scenario.swarm_box,
                self.n_uavs,
                self._free_z,
                self.scenario.min_separation_m,
                self._grid_x,
                self._grid_y,
            )
            if self.weight_levels is None:
                weights = tuple(float(w) for w in genes[self._pos_genes :])
            else:
                idx = genome.integers[c * self.n_uavs : (c + 1) * self.n_uavs]
                weights = tuple(self.weight_levels[int(i)] for i in idx)
            legs.append(ElementConfig(tuple(positions), weights))
        receivers = tuple(int(v) for v in genome.integers[-self.n_clusters :])
        route = tuple(int(v) for v in genome.permutation)
        return RelaySolution(tuple(legs), receivers, route)

    def evaluate(self, genome: Genome) -> ObjectiveVector:
        return evaluate_relay(self.scenario, self.decode(genome))

    def initial_genome(self) -> Genome:
        """The do-nothing plan: stay at the initial deployment, full power."""
        cont = []
        for _ in range(self.n_clusters):
            for p in self.scenario.swarm_initial:
                cont.extend([p.x, p.y] + ([p.z] if self._free_z else []))
            if self.weight_levels is None:
                cont.extend([1.0] * self.n_uavs)
        ints = []
        if self.weight_levels is not None:
            best = int(np.argmax(self.weight_levels))
            ints.extend([best] * (self.n_clusters * self.n_uavs))
        ints.extend([0] * self.n_clusters)
        return Genome(
            np.array(cont, dtype=float),
            np.array(ints, dtype=np.int64),
            np.arange(self.n_clusters),
        )

    def baseline_genome(self, kind: str, spacing_m: float = 0.5) -> Genome:
        """Encode a fixed LAA/RAA formation at the box center for every leg."""
        center = self.scenario.swarm_box.center()
        pts = generate_baseline_geometry(kind, self.n_uavs, spacing_m, center)
        genome = self.initial_genome()
        block = self._leg_block()
        for c in range(self.n_clusters):
            base = c * block
            per = 3 if self._free_z else 2
            for u, p in enumerate(pts):
                genome.continuous[base + u * per] = p.x
                genome.continuous[base + u * per + 1] = p.y
                if self._free_z:
                    genome.continuous[base + u * per + 2] = p.z
        return genome


class TwoWayProblem:
    """Genome layout for a two-way scenario.

    Continuous genes hold swarm A's positions then weights, followed by the
    same for swarm B. The two integer genes pick the receiving UAV of each
    direction (A->B receiver in swarm B first). ``fixed_weights`` removes
    the weight genes and pins every element to that excitation.
    """

    def __init__(
        self,
        scenario: TwoWayScenario,
        position_grid: int | None = None,
        fixed_weights: float | None = None,
    ):
        self.scenario = scenario
        self.n_a = len(scenario.swarm_a_initial)
        self.n_b = len(scenario.swarm_b_initial)
        self.fixed_weights = fixed_weights
        self._grids = (
            (_axis_values(scenario.box_a.x, position_grid), _axis_values(scenario.box_a.y, position_grid)),
            (_axis_values(scenario.box_b.x, position_grid), _axis_values(scenario.box_b.y, position_grid)),
        )
        lo_a, hi_a, self._free_z_a = _box_gene_bounds(scenario.box_a, self.n_a)
        lo_b, hi_b, self._free_z_b = _box_gene_bounds(scenario.box_b, self.n_b)
        self._pos_a, self._pos_b = len(lo_a), len(lo_b)
        lo, hi = list(lo_a), list(hi_a)
        if fixed_weights is None:
            lo.extend([0.0] * self.n_a)
            hi.extend([1.0] * self.n_a)
        lo.extend(lo_b)
        hi.extend(hi_b)
        if fixed_weights is None:
            lo.extend([0.0] * self.n_b)
            hi.extend([1.0] * self.n_b)
        self.schema = GenomeSchema(
            np.array(lo),
            np.array(hi),
            np.array([0, 0]),
            np.array([self.n_b - 1, self.n_a - 1]),
            0,
        )

    def _split(self, genome: Genome) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        w_a = 0 if self.fixed_weights is not None else self.n_a
        w_b = 0 if self.fixed_weights is not None else self.n_b
        c = genome.continuous
        a_pos = c[: self._pos_a]
        a_w = c[self._pos_a : self._pos_a + w_a]
        b_pos = c[self._pos_a + w_a : self._pos_a + w_a + self._pos_b]
        b_w = c[self._pos_a + w_a + self._pos_b : self._pos_a + w_a + self._pos_b + w_b]
        return a_pos, a_w, b_pos, b_w

    def decode(self, genome: Genome) -> TwoWaySolution:
        a_pos, a_w, b_pos, b_w = self._split(genome)
        scn = self.scenario
        pos_a = _decode_formation(
            a_pos, scn.box_a, self.n_a, self._free_z_a, scn.min_separation_m, *self._grids[0]
        )
        pos_b = _decode_formation(
            b_pos, scn.box_b, self.n_b, self._free_z_b, scn.min_separation_m, *self._grids[1]
        )
        if self.fixed_weights is not None:
            weights_a = tuple([self.fixed_weights] * self.n_a)
            weights_b = tuple([self.fixed_weights] * self.n_b)
        else:
            weights_a = tuple(float(w) for w in a_w)
            weights_b = tuple(float(w) for w in b_w)
        return TwoWaySolution(
            ElementConfig(tuple(pos_a), weights_a),
            ElementConfig(tuple(pos_b), weights_b),
            int(genome.integers[0]),
            int(genome.integers[1]),
        )

    def evaluate(self, genome: Genome) -> ObjectiveVector:
        return evaluate_twoway(self.scenario, self.decode(genome))

    def initial_genome(self) -> Genome:
        cont = []
        for p in self.scenario.swarm_a_initial:
            cont.extend([p.x, p.y] + ([p.z] if self._free_z_a else []))
        if self.fixed_weights is None:
            cont.extend([1.0] * self.n_a)
        for p in self.scenario.swarm_b_initial:
            cont.extend([p.x, p.y] + ([p.z] if self._free_z_b else []))
        if self.fixed_weights is None:
            cont.extend([1.0] * self.n_b)
        return Genome(np.array(cont, dtype=float), np.array([0, 0], dtype=np.int64), None)

    def baseline_genome(self, kind: str, spacing_m: float = 0.5) -> Genome:
        genome = self.initial_genome()
        per_a = 3 if self._free_z_a else 2
        per_b = 3 if self._free_z_b else 2
        pts_a = generate_baseline_geometry(kind, self.n_a, spacing_m, self.scenario.box_a.center())
        pts_b = generate_baseline_geometry(kind, self.n_b, spacing_m, self.scenario.box_b.center())
        w_a = 0 if self.fixed_weights is not None else self.n_a
        off_b = self._pos_a + w_a
        for u, p in enumerate(pts_a):
            genome.continuous[u * per_a] = p.x
            genome.continuous[u * per_a + 1] = p.y
            if self._free_z_a:
                genome.continuous[u * per_a + 2] = p.z
        for u, p in enumerate(pts_b):
            genome.continuous[off_b + u * per_b] = p.x
            genome.continuous[off_b + u * per_b + 1] = p.y
            if self._free_z_b:
                genome.continuous[off_b + u * per_b + 2] = p.z
        return genome


def make_problem(scenario, **kwargs):
    """Problem adapter for either scenario kind."""
    if isinstance(scenario, RelayScenario):
        return RelayProblem(scenario, **kwargs)
    if isinstance(scenario, TwoWayScenario):
        return TwoWayProblem(scenario, **kwargs)
    raise ConfigError(f"unknown scenario type {type(scenario).__name__}")
