"""Initialization and variation operators against hand-traced oracles."""

import itertools

import numpy as np
import pytest

from swarmbeam.errors import ConfigError, DomainError
from swarmbeam.moea import (
    Genome,
    GenomeSchema,
    GravityAttractors,
    GravityWeights,
    Individual,
    integer_mutation,
    multi_gravity_update,
    orthogonal_init,
    pmx,
    random_walk,
)


def schema_cont(n, lo=0.0, hi=1.0):
    return GenomeSchema(
        np.full(n, lo), np.full(n, hi), np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    )


class ForcedRng:
    """Minimal rng stub returning fixed values for deterministic traces."""

    def __init__(self, uniform=1.0, integer=None):
        self.uniform = uniform
        self.integer = integer

    def random(self, n=None):
        return self.uniform if n is None else np.full(n, self.uniform)

    def integers(self, lo, hi=None, size=None):
        if self.integer is not None:
            value = self.integer
        else:
            value = lo if hi is not None else 0
        if size is None:
            return value
        return np.full(size, value, dtype=np.int64)

    def permutation(self, n):
        return np.arange(n)


# ----------------------------------------------------------- orthogonal_init


def test_orthogonal_full_factorial_one_gene():
    rng = np.random.default_rng(0)
    genomes = orthogonal_init(schema_cont(1), population=3, levels=3, rng=rng)
    values = sorted(float(g.continuous[0]) for g in genomes)
    assert values == pytest.approx([1 / 6, 3 / 6, 5 / 6])


def test_orthogonal_full_factorial_l4_corners():
    rng = np.random.default_rng(0)
    genomes = orthogonal_init(schema_cont(2), population=4, levels=2, rng=rng)
    corners = sorted(tuple(np.round(g.continuous, 6)) for g in genomes)
    assert corners == [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)]


def test_orthogonal_balanced_counts_when_not_factorial():
    rng = np.random.default_rng(7)
    genomes = orthogonal_init(schema_cont(40), population=60, levels=3, rng=rng)
    cont = np.array([g.continuous for g in genomes])
    for gene in range(40):
        _, counts = np.unique(np.round(cont[:, gene], 9), return_counts=True)
        assert counts.min() >= 19 and counts.max() <= 21


def test_orthogonal_respects_bounds_and_mixed_genes():
    schema = GenomeSchema(
        np.array([-5.0, 0.0]),
        np.array([5.0, 2.0]),
        np.array([0, 3]),
        np.array([4, 3]),
        permutation_size=4,
    )
    rng = np.random.default_rng(3)
    genomes = orthogonal_init(schema, population=10, levels=5, rng=rng)
    for g in genomes:
        schema.check(g)


def test_orthogonal_config_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ConfigError):
        orthogonal_init(schema_cont(2), population=3, levels=5, rng=rng)
    with pytest.raises(ConfigError):
        orthogonal_init(schema_cont(2), population=3, levels=1, rng=rng)


# -------------------------------------------------------------------- pmx


def test_pmx_hand_trace():
    a = np.array([1, 2, 3, 4, 5])
    b = np.array([3, 4, 5, 1, 2])
    assert pmx(a, b, 1, 3).tolist() == [5, 2, 3, 1, 4]


def test_pmx_identical_parents():
    a = np.array([2, 0, 1, 3])
    assert pmx(a, a, 1, 3).tolist() == a.tolist()


def test_pmx_full_cut_returns_parent_a():
    a = np.array([3, 1, 0, 2])
    b = np.array([0, 1, 2, 3])
    assert pmx(a, b, 0, 4).tolist() == a.tolist()


def test_pmx_empty_cut_returns_parent_b():
    a = np.array([3, 1, 0, 2])
    b = np.array([0, 1, 2, 3])
    assert pmx(a, b, 2, 2).tolist() == b.tolist()


def test_pmx_always_a_permutation_exhaustive_small():
    rng = np.random.default_rng(5)
    for m in range(2, 7):
        for _ in range(4):
            a = rng.permutation(m)
            b = rng.permutation(m)
            for cut1, cut2 in itertools.combinations_with_replacement(range(m + 1), 2):
                child = pmx(a, b, cut1, cut2)
                assert sorted(child.tolist()) == list(range(m))


def test_pmx_invalid_cuts():
    a = np.array([0, 1, 2])
    with pytest.raises(DomainError):
        pmx(a, a, 2, 1)
    with pytest.raises(DomainError):
        pmx(a, a, 0, 4)
    with pytest.raises(DomainError):
        pmx(a, np.array([0, 1]), 0, 1)


# ------------------------------------------------------- multi_gravity_update


def mixed_individual():
    genome = Genome(
        np.array([0.5, 0.5]), np.array([1, 2], dtype=np.int64), np.array([0, 1, 2])
    )
    return Individual(genome, objectives=(0.0, 0.0, 0.0), step=np.zeros(2))


def mixed_schema():
    return GenomeSchema(
        np.zeros(2), np.ones(2), np.zeros(2, dtype=np.int64), np.full(2, 5), 3
    )


def test_gravity_all_zero_weights_is_fixed_point():
    ind = mixed_individual()
    attr = GravityAttractors(ind.genome.copy(), ind.genome.copy(), ind.genome.copy())
    weights = GravityWeights(food=0.0, personal=0.0, random_elite=0.0, inertia=0.0)
    out = multi_gravity_update(ind, attr, weights, np.random.default_rng(0), mixed_schema())
    assert out.continuous.tolist() == [0.5, 0.5]
    assert out.integers.tolist() == [1, 2]
    assert out.permutation.tolist() == [0, 1, 2]


def test_gravity_unit_food_weight_jumps_to_attractor():
    ind = mixed_individual()
    target = Genome(np.array([0.9, 0.1]), np.array([4, 4], dtype=np.int64), np.array([2, 1, 0]))
    attr = GravityAttractors(target, ind.genome.copy(), ind.genome.copy())
    weights = GravityWeights(food=1.0, personal=0.0, random_elite=0.0, inertia=0.0)
    out = multi_gravity_update(ind, attr, weights, ForcedRng(uniform=1.0), mixed_schema())
    assert out.continuous == pytest.approx([0.9, 0.1])


def test_gravity_integer_adoption_probability():
    # food weight 1, total pull 1 -> adopt food gene iff u < 1/(1+1) = 0.5
    ind = mixed_individual()
    target = Genome(np.array([0.5, 0.5]), np.array([4, 4], dtype=np.int64), np.array([0, 1, 2]))
    attr = GravityAttractors(target, ind.genome.copy(), ind.genome.copy())
    weights = GravityWeights(food=1.0, personal=0.0, random_elite=0.0, inertia=0.0)
    low = multi_gravity_update(mixed_individual(), attr, weights, ForcedRng(uniform=0.4), mixed_schema())
    high = multi_gravity_update(mixed_individual(), attr, weights, ForcedRng(uniform=0.6), mixed_schema())
    assert low.integers.tolist() == [4, 4]
    assert high.integers.tolist() == [1, 2]


def test_gravity_clamps_outward_step_on_bound():
    ind = mixed_individual()
    ind.step = np.array([10.0, -10.0])
    attr = GravityAttractors(ind.genome.copy(), ind.genome.copy(), ind.genome.copy())
    weights = GravityWeights(food=0.0, personal=0.0, random_elite=0.0, inertia=1.0)
    out = multi_gravity_update(ind, attr, weights, np.random.default_rng(0), mixed_schema())
    assert out.continuous.tolist() == [1.0, 0.0]


def test_gravity_result_is_schema_valid():
    schema = mixed_schema()
    rng = np.random.default_rng(9)
    for _ in range(50):
        ind = Individual(schema.random_genome(rng), (0.0, 0.0, 0.0), np.zeros(2))
        attr = GravityAttractors(
            schema.random_genome(rng), schema.random_genome(rng), schema.random_genome(rng)
        )
        out = multi_gravity_update(ind, attr, GravityWeights(), rng, schema)
        schema.check(out)


# ------------------------------------------------------------- random_walk


def test_random_walk_extrema_hit_bounds_exactly():
    lower = np.array([-2.0, 10.0])
    upper = np.array([4.0, 11.0])
    path = random_walk(lower, upper, 64, np.random.default_rng(1))
    assert path.shape == (65, 2)
    assert path.min(axis=0) == pytest.approx(lower, abs=1e-12)
    assert path.max(axis=0) == pytest.approx(upper, abs=1e-12)


def test_random_walk_forced_plus_one_is_monotone():
    path = random_walk(np.zeros(1), np.ones(1), 10, ForcedRng(integer=1))
    assert np.all(np.diff(path[:, 0]) > 0)
    assert path[0, 0] == 0.0 and path[-1, 0] == 1.0


def test_random_walk_single_step_inside_bounds():
    path = random_walk(np.array([0.0]), np.array([5.0]), 1, np.random.default_rng(2))
    assert path.shape == (2, 1)
    assert np.all(path >= 0.0) and np.all(path <= 5.0)


def test_random_walk_zero_span_gene():
    path = random_walk(np.array([3.0, 0.0]), np.array([3.0, 1.0]), 8, np.random.default_rng(3))
    assert np.all(path[:, 0] == 3.0)


def test_random_walk_bad_inputs():
    with pytest.raises(ConfigError):
        random_walk(np.zeros(1), np.ones(1), 0, np.random.default_rng(0))
    with pytest.raises(ConfigError):
        random_walk(np.ones(1), np.zeros(1), 4, np.random.default_rng(0))


# --------------------------------------------------------- integer_mutation


def int_schema():
    return GenomeSchema(
        np.empty(0), np.empty(0), np.zeros(3, dtype=np.int64), np.full(3, 4), 0
    )


def test_integer_mutation_rate_zero_unchanged():
    g = Genome(np.empty(0), np.array([1, 2, 3], dtype=np.int64))
    out = integer_mutation(g, 0.0, np.random.default_rng(0), int_schema())
    assert out.integers.tolist() == [1, 2, 3]


def test_integer_mutation_rate_one_single_value_range():
    schema = GenomeSchema(
        np.empty(0), np.empty(0), np.full(2, 7, dtype=np.int64), np.full(2, 7), 0
    )
    g = Genome(np.empty(0), np.array([7, 7], dtype=np.int64))
    out = integer_mutation(g, 1.0, np.random.default_rng(0), schema)
    assert out.integers.tolist() == [7, 7]


def test_integer_mutation_marginal_uniform():
    schema = GenomeSchema(
        np.empty(0), np.empty(0), np.zeros(1, dtype=np.int64), np.array([4]), 0
    )
    rng = np.random.default_rng(77)
    g = Genome(np.empty(0), np.array([0], dtype=np.int64))
    draws = np.array(
        [integer_mutation(g, 1.0, rng, schema).integers[0] for _ in range(10_000)]
    )
    counts = np.bincount(draws, minlength=5)
    expected = 2000.0
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # chi-square with 4 dof: mean 4, sd sqrt(8); 3 sigma above the mean
    assert chi2 < 4.0 + 3.0 * np.sqrt(8.0)


def test_integer_mutation_rate_validation():
    g = Genome(np.empty(0), np.array([1], dtype=np.int64))
    with pytest.raises(ConfigError):
        integer_mutation(g, 1.5, np.random.default_rng(0), int_schema())


def test_integer_mutation_leaves_other_genes_untouched():
    schema = GenomeSchema(
        np.zeros(2), np.ones(2), np.zeros(2, dtype=np.int64), np.full(2, 9), 3
    )
    g = Genome(np.array([0.25, 0.75]), np.array([1, 2], dtype=np.int64), np.array([2, 0, 1]))
    out = integer_mutation(g, 1.0, np.random.default_rng(4), schema)
    assert out.continuous.tolist() == [0.25, 0.75]
    assert out.permutation.tolist() == [2, 0, 1]
