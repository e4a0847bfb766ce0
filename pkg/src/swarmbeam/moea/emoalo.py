"""Ant-lion optimizer variant for two-swarm deployments.

Ants are rebuilt every iteration from bounded random walks around a
roulette-picked archive member and the elite (least-crowded) member, with
walk windows shrinking over time. The start population walks out from the
initial UAV deployment, the elite pull is amplified in the early stage, and
the late stage widens the walk windows, admits random immigrants, and keeps
mutating the integer genes.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .common import (
    OptimizerConfig,
    Problem,
    ProgressFn,
    emit_progress,
    seed_archive,
)
from .genome import Genome, Individual
from .operators import integer_mutation, pmx, random_walk
from .pareto import Archive


def _walk_window(
    center: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    scale: float,
) -> tuple[np.ndarray, np.ndarray]:
    radius = (upper - lower) / 2.0 * scale
    return np.maximum(center - radius, lower), np.minimum(center + radius, upper)


def _initial_population(
    problem: Problem, config: OptimizerConfig, rng: np.random.Generator
) -> list[Genome]:
    """Initial genomes from random walks anchored at the initial deployment."""
    schema = problem.schema
    params = config.antlion
    anchor = problem.initial_genome()
    genomes = [anchor]
    lo, hi = _walk_window(
        anchor.continuous, schema.lower, schema.upper, params.init_radius_fraction
    )
    for _ in range(config.population - 1):
        path = random_walk(lo, hi, params.init_walk_steps, rng, start=anchor.continuous)
        cont = path[-1]
        ints = (
            rng.integers(schema.int_lower, schema.int_upper + 1)
            if schema.n_integers
            else np.empty(0, dtype=np.int64)
        )
        perm = rng.permutation(schema.permutation_size) if schema.permutation_size else None
        genomes.append(Genome(cont, np.atleast_1d(ints).astype(np.int64), perm))
    return genomes


def emoalo_run(
    problem: Problem,
    config: OptimizerConfig,
    progress: Optional[ProgressFn] = None,
) -> Archive:
    """Run the ant-lion variant; returns the final archive.

    Fully deterministic for a given seed. Performs exactly
    ``population * (iterations + 1)`` objective evaluations.
    """
    rng = np.random.default_rng(config.seed)
    schema = problem.schema
    params = config.antlion
    individuals, archive = seed_archive(
        problem, _initial_population(problem, config, rng), config
    )
    emit_progress(progress, 0, archive)

    stage_switch = params.stage_fraction * config.iterations
    for t in range(config.iterations):
        late = t >= stage_switch
        # walk windows shrink as the hunt proceeds, then widen again late
        shrink = 1.0 / (1.0 + 9.0 * (t / config.iterations) ** 2) if config.iterations else 1.0
        scale = shrink * (params.late_radius_scale if late else 1.0)
        amplify = 1.0 if late else params.elite_amplify

        for ind in individuals:
            if late and rng.random() < params.immigrant_rate:
                genome = schema.random_genome(rng)
            else:
                antlion = archive.select_food(rng)
                elite = archive.elite()
                lo_a, hi_a = _walk_window(
                    antlion.genome.continuous, schema.lower, schema.upper, scale
                )
                walk_a = random_walk(lo_a, hi_a, params.walk_steps, rng)[-1]
                lo_e, hi_e = _walk_window(
                    elite.genome.continuous, schema.lower, schema.upper, scale
                )
                walk_e = random_walk(lo_e, hi_e, params.walk_steps, rng)[-1]
                cont = schema.clip((walk_a + amplify * walk_e) / (1.0 + amplify))
                if schema.n_integers:
                    from_elite = rng.random(schema.n_integers) < 0.5
                    ints = np.where(from_elite, elite.genome.integers, antlion.genome.integers)
                else:
                    ints = np.empty(0, dtype=np.int64)
                if schema.permutation_size:
                    cut1 = int(rng.integers(0, schema.permutation_size))
                    cut2 = int(rng.integers(cut1 + 1, schema.permutation_size + 1))
                    perm = pmx(antlion.genome.permutation, elite.genome.permutation, cut1, cut2)
                else:
                    perm = None
                genome = integer_mutation(
                    Genome(cont, ints.astype(np.int64), perm),
                    params.int_mutation_rate,
                    rng,
                    schema,
                )
            ind.genome = genome
            ind.objectives = tuple(problem.evaluate(genome))
            archive.insert(Individual(genome, ind.objectives))

        emit_progress(progress, t + 1, archive)
    return archive
