"""Reference optimizers used for comparisons: random search and a particle swarm."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .common import (
    OptimizerConfig,
    Problem,
    ProgressFn,
    emit_progress,
    seed_archive,
    update_personal_best,
)
from .genome import Genome, Individual
from .operators import pmx
from .pareto import Archive


def random_search_run(
    problem: Problem,
    config: OptimizerConfig,
    progress: Optional[ProgressFn] = None,
) -> Archive:
    """Uniform sampling at the same evaluation budget as the real optimizers."""
    rng = np.random.default_rng(config.seed)
    schema = problem.schema
    genomes = [schema.random_genome(rng) for _ in range(config.population)]
    _, archive = seed_archive(problem, genomes, config)
    emit_progress(progress, 0, archive)
    for t in range(config.iterations):
        for _ in range(config.population):
            g = schema.random_genome(rng)
            archive.insert(Individual(g, tuple(problem.evaluate(g))))
        emit_progress(progress, t + 1, archive)
    return archive


def mopso_run(
    problem: Problem,
    config: OptimizerConfig,
    progress: Optional[ProgressFn] = None,
) -> Archive:
    """Archive-guided particle swarm over the mixed genome.

    Integer genes ride along as continuous shadows and are rounded at
    evaluation time; permutations follow the roulette-picked leader via PMX.
    """
    rng = np.random.default_rng(config.seed)
    schema = problem.schema
    params = config.mopso
    genomes = [schema.random_genome(rng) for _ in range(config.population)]
    individuals, archive = seed_archive(problem, genomes, config)
    emit_progress(progress, 0, archive)

    int_lo = schema.int_lower.astype(float)
    int_hi = schema.int_upper.astype(float)
    shadows = [ind.genome.integers.astype(float) for ind in individuals]
    int_steps = [np.zeros(schema.n_integers) for _ in individuals]

    for t in range(config.iterations):
        for i, ind in enumerate(individuals):
            leader = archive.select_food(rng)
            r1 = rng.random(schema.n_continuous)
            r2 = rng.random(schema.n_continuous)
            step = (
                params.inertia * ind.step
                + params.pull_personal * r1 * (ind.best_genome.continuous - ind.genome.continuous)
                + params.pull_leader * r2 * (leader.genome.continuous - ind.genome.continuous)
            )
            cont = schema.clip(ind.genome.continuous + step)
            if schema.n_integers:
                s1 = rng.random(schema.n_integers)
                s2 = rng.random(schema.n_integers)
                int_steps[i] = (
                    params.inertia * int_steps[i]
                    + params.pull_personal * s1 * (ind.best_genome.integers - shadows[i])
                    + params.pull_leader * s2 * (leader.genome.integers - shadows[i])
                )
                shadows[i] = np.clip(shadows[i] + int_steps[i], int_lo, int_hi)
                ints = np.rint(shadows[i]).astype(np.int64)
            else:
                ints = np.empty(0, dtype=np.int64)
            if schema.permutation_size:
                cut1 = int(rng.integers(0, schema.permutation_size))
                cut2 = int(rng.integers(cut1 + 1, schema.permutation_size + 1))
                perm = pmx(ind.genome.permutation, leader.genome.permutation, cut1, cut2)
            else:
                perm = None
            ind.genome = Genome(cont, ints, perm)
            ind.step = step
            ind.objectives = tuple(problem.evaluate(ind.genome))
            update_personal_best(ind, rng)
            archive.insert(Individual(ind.genome, ind.objectives))
        emit_progress(progress, t + 1, archive)
    return archive
