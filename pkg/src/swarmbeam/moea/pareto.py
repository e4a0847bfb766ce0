"""Pareto dominance, nondominated filtering, and the bounded solution archive."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError
from .genome import Individual


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True when ``a`` Pareto-dominates ``b`` under minimization.

    Every component of ``a`` is <= the matching component of ``b`` and at
    least one is strictly smaller.
    """
    if len(a) != len(b):
        raise ValueError(f"objective dimensions differ: {len(a)} vs {len(b)}")
    better = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            better = True
    return better


def nondominated_indices(points: Sequence[Sequence[float]]) -> list[int]:
    """Indices of the nondominated points, in the original input order.

    Uses a lexicographic presort so each point only needs checking against
    the current front, rather than naive all-pairs comparison.
    """
    n = len(points)
    if n == 0:
        return []
    arr = np.asarray(points, dtype=float)
    order = np.lexsort(arr.T[::-1])  # by first objective, then the rest
    front: list[int] = []
    for idx in order:
        p = arr[idx]
        if not any(dominates(arr[j], p) for j in front):
            front.append(int(idx))
    return sorted(front)


def nondominated_filter(points: Sequence[Sequence[float]]) -> list:
    """The nondominated subset of ``points`` with input order preserved."""
    keep = set(nondominated_indices(points))
    return [p for i, p in enumerate(points) if i in keep]


@dataclass
class _Entry:
    individual: Individual
    seq: int


class Archive:
    """Bounded store of mutually nondominated solutions.

    Crowding is measured on a fixed hypercube segmentation of the archive's
    objective bounding box (``segments`` per axis). When the archive
    overflows, a member from the most crowded cube is dropped, breaking ties
    toward larger f1, then larger f2, then the earliest insertion.
    """

    def __init__(self, capacity: int, segments: int = 10):
        if capacity < 1:
            raise ConfigError(f"archive capacity must be >= 1, got {capacity!r}")
        if segments < 1:
            raise ConfigError(f"crowding segments must be >= 1, got {segments!r}")
        self.capacity = capacity
        self.segments = segments
        self._entries: list[_Entry] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._entries)

    def members(self) -> list[Individual]:
        """Members in insertion order (do not mutate)."""
        return [e.individual for e in self._entries]

    def objectives(self) -> np.ndarray:
        return np.array([e.individual.objectives for e in self._entries], dtype=float)

    def insert(self, individual: Individual) -> bool:
        """Offer a solution; returns True when it was admitted.

        Dominated entrants are rejected; an admitted entrant evicts every
        member it dominates. Over capacity, crowding decides who leaves.
        """
        if individual.objectives is None:
            raise ConfigError("cannot archive an unevaluated individual")
        obj = individual.objectives
        for e in self._entries:
            if dominates(e.individual.objectives, obj):
                return False
        self._entries = [
            e for e in self._entries if not dominates(obj, e.individual.objectives)
        ]
        self._entries.append(_Entry(individual, self._next_seq))
        self._next_seq += 1
        if len(self._entries) > self.capacity:
            self._evict()
        return True

    def _cube_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-member cube ids and the occupancy count of each member's cube."""
        objs = self.objectives()
        lo = objs.min(axis=0)
        span = objs.max(axis=0) - lo
        span[span == 0.0] = 1.0
        coords = np.floor((objs - lo) / span * self.segments).astype(np.int64)
        coords = np.clip(coords, 0, self.segments - 1)
        ids = coords[:, 0]
        for d in range(1, coords.shape[1]):
            ids = ids * self.segments + coords[:, d]
        _, inverse, counts = np.unique(ids, return_inverse=True, return_counts=True)
        return ids, counts[inverse]

    def _evict(self) -> None:
        _, occupancy = self._cube_counts()
        worst = occupancy.max()
        candidates = [i for i, c in enumerate(occupancy) if c == worst]
        candidates.sort(
            key=lambda i: (
                -self._entries[i].individual.objectives[0],
                -self._entries[i].individual.objectives[1],
                self._entries[i].seq,
            )
        )
        del self._entries[candidates[0]]

    def _roulette(self, rng: np.random.Generator, weights: np.ndarray) -> Individual:
        total = weights.sum()
        if total <= 0:
            weights = np.ones_like(weights)
            total = weights.sum()
        cumulative = np.cumsum(weights / total)
        return self._entries[int(np.searchsorted(cumulative, rng.random()))].individual

    def select_food(self, rng: np.random.Generator) -> Individual:
        """Roulette pick favouring members in sparse hypercubes."""
        if not self._entries:
            raise ConfigError("archive is empty")
        _, occupancy = self._cube_counts()
        return self._roulette(rng, 1.0 / occupancy)

    def select_enemy(self, rng: np.random.Generator) -> Individual:
        """Roulette pick favouring members in crowded hypercubes."""
        if not self._entries:
            raise ConfigError("archive is empty")
        _, occupancy = self._cube_counts()
        return self._roulette(rng, occupancy.astype(float))

    def select_uniform(self, rng: np.random.Generator) -> Individual:
        if not self._entries:
            raise ConfigError("archive is empty")
        return self._entries[int(rng.integers(len(self._entries)))].individual

    def elite(self) -> Individual:
        """Deterministic least-crowded member (ties: smaller f1/f2, older first)."""
        if not self._entries:
            raise ConfigError("archive is empty")
        _, occupancy = self._cube_counts()
        best = min(
            range(len(self._entries)),
            key=lambda i: (
                occupancy[i],
                self._entries[i].individual.objectives[0],
                self._entries[i].individual.objectives[1],
                self._entries[i].seq,
            ),
        )
        return self._entries[best].individual

    def best_per_objective(self) -> list[float]:
        """Componentwise minimum over the archive."""
        return [float(v) for v in self.objectives().min(axis=0)]
