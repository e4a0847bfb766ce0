"""Shared optimizer plumbing: run configuration, schedules, progress records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol

import numpy as np

from ..errors import ConfigError
from .genome import Genome, GenomeSchema, Individual
from .pareto import Archive, dominates


class Problem(Protocol):
    schema: GenomeSchema

    def evaluate(self, genome: Genome): ...

    def initial_genome(self) -> Genome: ...


@dataclass(frozen=True)
class DragonflyParams:
    """Swarm-term schedule (start, end) pairs plus the attractor pulls."""

    separation: tuple[float, float] = (0.1, 0.0)
    alignment: tuple[float, float] = (0.1, 0.0)
    cohesion: tuple[float, float] = (0.1, 0.0)
    food: tuple[float, float] = (0.5, 1.0)
    enemy: tuple[float, float] = (0.5, 0.0)
    inertia: tuple[float, float] = (0.9, 0.4)
    gravity_personal: float = 0.5
    gravity_random: float = 0.25
    levels: int = 5


@dataclass(frozen=True)
class AntLionParams:
    """Walk shaping and the two-stage schedule of the ant-lion variant."""

    stage_fraction: float = 0.5
    immigrant_rate: float = 0.1
    elite_amplify: float = 2.0
    late_radius_scale: float = 2.0
    walk_steps: int = 32
    init_walk_steps: int = 32
    init_radius_fraction: float = 0.25
    int_mutation_rate: float = 0.1

    def __post_init__(self):
        if not (0.0 <= self.stage_fraction <= 1.0):
            raise ConfigError("stage_fraction must lie in [0, 1]")
        if not (0.0 <= self.immigrant_rate <= 1.0):
            raise ConfigError("immigrant_rate must lie in [0, 1]")


@dataclass(frozen=True)
class MopsoParams:
    inertia: float = 0.7
    pull_personal: float = 1.5
    pull_leader: float = 1.5


@dataclass(frozen=True)
class OptimizerConfig:
    """Budget and bookkeeping shared by every optimizer."""

    seed: int
    population: int = 50
    iterations: int = 200
    archive_capacity: int = 100
    crowding_segments: int = 10
    dragonfly: DragonflyParams = field(default_factory=DragonflyParams)
    antlion: AntLionParams = field(default_factory=AntLionParams)
    mopso: MopsoParams = field(default_factory=MopsoParams)

    def __post_init__(self):
        if self.population < 2:
            raise ConfigError("population must be >= 2")
        if self.iterations < 0:
            raise ConfigError("iterations must be >= 0")


@dataclass(frozen=True)
class ProgressRecord:
    """One line of the per-iteration progress stream."""

    iteration: int
    archive_size: int
    best_f1: float
    best_f2: float
    best_f3: float
    hypervolume: float


ProgressFn = Callable[[ProgressRecord], None]


def interp(pair: tuple[float, float], t: int, iterations: int) -> float:
    """Linear schedule value at iteration t (0-based) of ``iterations`` total."""
    frac = t / (iterations - 1) if iterations > 1 else 0.0
    return pair[0] + (pair[1] - pair[0]) * frac


def update_personal_best(ind: Individual, rng: np.random.Generator) -> None:
    """Dominance-based personal-best update; coin flip on incomparable."""
    if ind.best_objectives is None or dominates(ind.objectives, ind.best_objectives):
        ind.best_genome = ind.genome
        ind.best_objectives = ind.objectives
        return
    if dominates(ind.best_objectives, ind.objectives):
        return
    if rng.random() < 0.5:
        ind.best_genome = ind.genome
        ind.best_objectives = ind.objectives


def emit_progress(
    progress: Optional[ProgressFn], iteration: int, archive: Archive
) -> None:
    if progress is None:
        return
    from ..analysis import archive_hypervolume

    best = archive.best_per_objective()
    progress(
        ProgressRecord(
            iteration,
            len(archive),
            best[0],
            best[1],
            best[2],
            archive_hypervolume(archive.objectives()),
        )
    )


def seed_archive(
    problem: Problem, genomes: list[Genome], config: OptimizerConfig
) -> tuple[list[Individual], Archive]:
    """Evaluate an initial population and archive its nondominated members."""
    archive = Archive(config.archive_capacity, config.crowding_segments)
    individuals = []
    for g in genomes:
        ind = Individual(g, tuple(problem.evaluate(g)))
        ind.step = np.zeros(problem.schema.n_continuous)
        ind.best_genome = g
        ind.best_objectives = ind.objectives
        individuals.append(ind)
        archive.insert(Individual(g, ind.objectives))
    return individuals, archive
