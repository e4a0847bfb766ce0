"""Variation and initialization operators shared by the optimizers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DomainError
from .genome import Genome, GenomeSchema, Individual


def orthogonal_init(
    schema: GenomeSchema,
    population: int,
    levels: int,
    rng: np.random.Generator,
) -> list[Genome]:
    """Level-balanced initial population over the continuous genes.

    Each continuous gene is quantized to ``levels`` midpoints. When the full
    factorial design exactly fits the population it is used verbatim;
    otherwise a Latin-hypercube completion assigns every level to each gene
    as evenly as possible (counts differ by at most one) with independent
    per-gene shuffles. Integer and permutation genes are drawn uniformly.
    """
    if population < 1:
        raise ConfigError(f"population must be >= 1, got {population!r}")
    if levels < 2:
        raise ConfigError(f"levels must be >= 2, got {levels!r}")
    if population < levels:
        raise ConfigError(
            f"population {population} cannot cover {levels} levels per gene"
        )
    n = schema.n_continuous
    if n and levels**n == population:
        grid = np.array(list(itertools.product(range(levels), repeat=n)), dtype=float)
    else:
        grid = np.empty((population, n))
        base = np.tile(np.arange(levels), population // levels + 1)[:population]
        for g in range(n):
            grid[:, g] = rng.permutation(base)
    midpoints = (grid + 0.5) / levels
    span = schema.upper - schema.lower
    genomes = []
    for row in midpoints if n else np.zeros((population, 0)):
        cont = schema.lower + row * span if n else np.empty(0)
        ints = (
            rng.integers(schema.int_lower, schema.int_upper + 1)
            if schema.n_integers
            else np.empty(0, dtype=np.int64)
        )
        perm = rng.permutation(schema.permutation_size) if schema.permutation_size else None
        genomes.append(Genome(np.atleast_1d(cont), np.atleast_1d(ints).astype(np.int64), perm))
    return genomes


def pmx(
    parent_a: np.ndarray, parent_b: np.ndarray, cut1: int, cut2: int
) -> np.ndarray:
    """Partially mapped crossover of two permutations.

    The child keeps ``parent_a``'s segment [cut1, cut2) and takes the other
    positions from ``parent_b``, chasing the segment mapping whenever the
    inherited value would collide.
    """
    a = np.asarray(parent_a)
    b = np.asarray(parent_b)
    m = a.size
    if b.size != m:
        raise DomainError("parent permutations differ in length")
    if not (0 <= cut1 <= cut2 <= m):
        raise DomainError(f"cuts ({cut1}, {cut2}) invalid for length {m}")
    child = np.empty(m, dtype=a.dtype)
    child[cut1:cut2] = a[cut1:cut2]
    segment = {int(v): i for i, v in enumerate(a[cut1:cut2], start=cut1)}
    for i in list(range(0, cut1)) + list(range(cut2, m)):
        v = int(b[i])
        while v in segment:
            v = int(b[segment[v]])
        child[i] = v
    return child


@dataclass(frozen=True)
class GravityWeights:
    """Pull strengths of the three attractors plus the step inertia."""

    food: float = 1.0
    personal: float = 0.5
    random_elite: float = 0.25
    inertia: float = 0.5

    def __post_init__(self):
        for name in ("food", "personal", "random_elite"):
            if getattr(self, name) < 0:
                raise ConfigError(f"gravity weight {name} must be >= 0")


@dataclass(frozen=True)
class GravityAttractors:
    """Evaluated reference genomes the update is pulled toward."""

    food: Genome
    personal: Genome
    random_elite: Genome

    def ordered(self) -> list[Genome]:
        return [self.food, self.personal, self.random_elite]


def gravity_integers(
    integers: np.ndarray,
    attractors: GravityAttractors,
    weights: GravityWeights,
    rng: np.random.Generator,
) -> np.ndarray:
    """Per-gene adoption of attractor integers, proportional to the weights.

    Keeping the own gene carries one unit of weight, so all-zero pull
    weights leave the genes untouched.
    """
    w = np.array([weights.food, weights.personal, weights.random_elite])
    out = integers.copy()
    if out.size == 0:
        return out
    u = rng.random(out.size)
    edges = np.cumsum(w) / (1.0 + w.sum())
    sources = attractors.ordered()
    for g in range(out.size):
        for k, e in enumerate(edges):
            if u[g] < e:
                out[g] = sources[k].integers[g]
                break
    return out


def gravity_permutation(
    permutation: np.ndarray,
    attractors: GravityAttractors,
    weights: GravityWeights,
    rng: np.random.Generator,
) -> np.ndarray:
    """Pull a permutation toward the food attractor via PMX at random cuts.

    A zero food weight keeps the permutation unchanged (matching the
    all-weights-zero fixed point of the continuous part).
    """
    if weights.food <= 0.0:
        return permutation.copy()
    m = permutation.size
    cut1 = int(rng.integers(0, m))
    cut2 = int(rng.integers(cut1 + 1, m + 1))
    return pmx(permutation, attractors.food.permutation, cut1, cut2)


def multi_gravity_update(
    individual: Individual,
    attractors: GravityAttractors,
    weights: GravityWeights,
    rng: np.random.Generator,
    schema: GenomeSchema,
) -> Genome:
    """One multi-attractor move of a mixed genome.

    Continuous genes integrate a velocity pulled toward each attractor with
    per-gene random strengths, then clamp to bounds (``individual.step`` is
    updated in place). Integer genes adopt attractor values with probability
    proportional to the weights; the permutation is PMX-blended with the
    food attractor.
    """
    genome = individual.genome
    n = schema.n_continuous
    if individual.step is None:
        individual.step = np.zeros(n)
    x = genome.continuous
    step = weights.inertia * individual.step
    for w, attr in zip(
        (weights.food, weights.personal, weights.random_elite), attractors.ordered()
    ):
        r = rng.random(n)
        step = step + w * r * (attr.continuous - x)
    individual.step = step
    new_cont = schema.clip(x + step)
    new_ints = gravity_integers(genome.integers, attractors, weights, rng)
    new_perm = (
        gravity_permutation(genome.permutation, attractors, weights, rng)
        if genome.permutation is not None
        else None
    )
    return Genome(new_cont, new_ints, new_perm)


def random_walk(
    lower: np.ndarray,
    upper: np.ndarray,
    n_steps: int,
    rng: np.random.Generator,
    start: np.ndarray | None = None,
) -> np.ndarray:
    """Bounded cumulative +/-1 random walk, one column per gene.

    Returns an ``(n_steps + 1, n_genes)`` path whose per-gene extrema map
    exactly onto [lower, upper] (min-max normalization). The first row of
    the raw walk sits at ``start``'s normalized coordinate when given, so
    paths wander away from a chosen anchor point.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if n_steps < 1:
        raise ConfigError(f"n_steps must be >= 1, got {n_steps!r}")
    if lower.shape != upper.shape or np.any(lower > upper):
        raise ConfigError("walk bounds invalid")
    n = lower.size
    span = upper - lower
    if start is None:
        x0 = np.zeros(n)
    else:
        start = np.asarray(start, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            x0 = np.where(span > 0, (start - lower) / np.where(span > 0, span, 1.0), 0.5)
    steps = rng.integers(0, 2, size=(n_steps, n)) * 2 - 1
    raw = np.vstack([x0, x0 + np.cumsum(steps, axis=0)])
    lo = raw.min(axis=0)
    ptp = raw.max(axis=0) - lo
    ptp[ptp == 0.0] = 1.0  # cannot happen for n_steps >= 1, kept for safety
    return lower + (raw - lo) / ptp * span


def integer_mutation(
    genome: Genome, rate: float, rng: np.random.Generator, schema: GenomeSchema
) -> Genome:
    """Uniform resample of each integer gene independently with probability ``rate``."""
    if not (0.0 <= rate <= 1.0):
        raise ConfigError(f"mutation rate must lie in [0, 1], got {rate!r}")
    out = genome.copy()
    if schema.n_integers == 0:
        return out
    hits = rng.random(schema.n_integers) < rate
    fresh = rng.integers(schema.int_lower, schema.int_upper + 1)
    out.integers = np.where(hits, fresh, out.integers)
    return out
