"""Dragonfly-swarm optimizer with orthogonal start and multi-attractor updates.

Continuous genes follow dragonfly swarm dynamics (separation, alignment,
cohesion, attraction to an uncrowded archive member, flight from a crowded
one) extended with pulls toward the personal best and a random archive
member. Integer and permutation genes move through the multi-gravity
adoption and PMX rules, so the one optimizer covers the mixed search space.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .common import (
    OptimizerConfig,
    Problem,
    ProgressFn,
    emit_progress,
    interp,
    seed_archive,
    update_personal_best,
)
from .genome import Genome, Individual
from .operators import (
    GravityAttractors,
    GravityWeights,
    gravity_integers,
    gravity_permutation,
    orthogonal_init,
)
from .pareto import Archive


def imodaom_run(
    problem: Problem,
    config: OptimizerConfig,
    progress: Optional[ProgressFn] = None,
) -> Archive:
    """Run the dragonfly-based optimizer; returns the final archive.

    Fully deterministic for a given seed. Performs exactly
    ``population * (iterations + 1)`` objective evaluations.
    """
    rng = np.random.default_rng(config.seed)
    schema = problem.schema
    params = config.dragonfly
    genomes = orthogonal_init(schema, config.population, params.levels, rng)
    individuals, archive = seed_archive(problem, genomes, config)
    emit_progress(progress, 0, archive)

    n = schema.n_continuous
    span = schema.upper - schema.lower
    for t in range(config.iterations):
        w_sep = interp(params.separation, t, config.iterations)
        w_ali = interp(params.alignment, t, config.iterations)
        w_coh = interp(params.cohesion, t, config.iterations)
        w_food = interp(params.food, t, config.iterations)
        w_enemy = interp(params.enemy, t, config.iterations)
        inertia = interp(params.inertia, t, config.iterations)
        gravity = GravityWeights(
            food=w_food,
            personal=params.gravity_personal,
            random_elite=params.gravity_random,
            inertia=inertia,
        )

        food = archive.select_food(rng)
        enemy = archive.select_enemy(rng)
        X = np.array([ind.genome.continuous for ind in individuals])
        V = np.array([ind.step for ind in individuals])
        pop = len(individuals)
        if pop > 1:
            diff = X[:, None, :] - X[None, :, :]  # i - j
            dist = np.linalg.norm(diff, axis=2)
            sep = (diff / (dist[:, :, None] + 1.0)).sum(axis=1)
            ali = (V.sum(axis=0)[None, :] - V) / (pop - 1)
            coh = (X.sum(axis=0)[None, :] - X) / (pop - 1) - X
        else:
            sep = np.zeros_like(X)
            ali = np.zeros_like(V)
            coh = np.zeros_like(X)

        for i, ind in enumerate(individuals):
            r = rng.random(5)
            relite = archive.select_uniform(rng)
            step = (
                inertia * V[i]
                + w_sep * r[0] * sep[i]
                + w_ali * r[1] * ali[i]
                + w_coh * r[2] * coh[i]
                + w_food * r[3] * (food.genome.continuous - X[i])
                + w_enemy * r[4] * (X[i] - enemy.genome.continuous)
            )
            step = step + gravity.personal * rng.random(n) * (
                ind.best_genome.continuous - X[i]
            )
            step = step + gravity.random_elite * rng.random(n) * (
                relite.genome.continuous - X[i]
            )
            step = np.clip(step, -span, span)
            new_cont = schema.clip(X[i] + step)
            attractors = GravityAttractors(food.genome, ind.best_genome, relite.genome)
            new_ints = gravity_integers(ind.genome.integers, attractors, gravity, rng)
            new_perm = (
                gravity_permutation(ind.genome.permutation, attractors, gravity, rng)
                if ind.genome.permutation is not None
                else None
            )
            ind.genome = Genome(new_cont, new_ints, new_perm)
            ind.step = step
            ind.objectives = tuple(problem.evaluate(ind.genome))
            update_personal_best(ind, rng)
            archive.insert(Individual(ind.genome, ind.objectives))

        emit_progress(progress, t + 1, archive)
    return archive
