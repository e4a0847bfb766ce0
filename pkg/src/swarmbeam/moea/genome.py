"""Mixed genome representation: continuous, bounded-integer, and permutation genes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ConfigError, DomainError


@dataclass(frozen=True)
class GenomeSchema:
    """Bounds and layout of a mixed genome.

    Continuous genes live in [lower, upper] per gene, integer genes in the
    inclusive range [int_lower, int_upper], and an optional permutation gene
    holds an ordering of ``permutation_size`` items.
    """

    lower: np.ndarray
    upper: np.ndarray
    int_lower: np.ndarray
    int_upper: np.ndarray
    permutation_size: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lower", np.asarray(self.lower, dtype=float))
        object.__setattr__(self, "upper", np.asarray(self.upper, dtype=float))
        object.__setattr__(self, "int_lower", np.asarray(self.int_lower, dtype=np.int64))
        object.__setattr__(self, "int_upper", np.asarray(self.int_upper, dtype=np.int64))
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ConfigError("continuous bounds must be matching 1-d arrays")
        if np.any(self.lower > self.upper):
            raise ConfigError("continuous lower bounds exceed upper bounds")
        if self.int_lower.shape != self.int_upper.shape or self.int_lower.ndim != 1:
            raise ConfigError("integer bounds must be matching 1-d arrays")
        if np.any(self.int_lower > self.int_upper):
            raise ConfigError("integer lower bounds exceed upper bounds")
        if self.permutation_size < 0:
            raise ConfigError("permutation_size must be >= 0")

    @property
    def n_continuous(self) -> int:
        return self.lower.size

    @property
    def n_integers(self) -> int:
        return self.int_lower.size

    def clip(self, values: np.ndarray) -> np.ndarray:
        return np.clip(values, self.lower, self.upper)

    def random_genome(self, rng: np.random.Generator) -> "Genome":
        cont = rng.uniform(self.lower, self.upper) if self.n_continuous else np.empty(0)
        ints = (
            rng.integers(self.int_lower, self.int_upper + 1)
            if self.n_integers
            else np.empty(0, dtype=np.int64)
        )
        perm = rng.permutation(self.permutation_size) if self.permutation_size else None
        return Genome(np.atleast_1d(cont), np.atleast_1d(ints).astype(np.int64), perm)

    def check(self, genome: "Genome") -> None:
        """Raise DomainError when a genome does not fit this schema."""
        if genome.continuous.shape != (self.n_continuous,):
            raise DomainError(
                f"expected {self.n_continuous} continuous genes, got {genome.continuous.shape}"
            )
        if np.any(genome.continuous < self.lower - 1e-9) or np.any(
            genome.continuous > self.upper + 1e-9
        ):
            raise DomainError("continuous genes outside bounds")
        if genome.integers.shape != (self.n_integers,):
            raise DomainError(
                f"expected {self.n_integers} integer genes, got {genome.integers.shape}"
            )
        if np.any(genome.integers < self.int_lower) or np.any(
            genome.integers > self.int_upper
        ):
            raise DomainError("integer genes outside ranges")
        if self.permutation_size:
            if genome.permutation is None or sorted(genome.permutation.tolist()) != list(
                range(self.permutation_size)
            ):
                raise DomainError("permutation gene invalid")
        elif genome.permutation is not None:
            raise DomainError("unexpected permutation gene")


@dataclass
class Genome:
    """One candidate's genes. Treated as immutable; use copy() before editing."""

    continuous: np.ndarray
    integers: np.ndarray
    permutation: Optional[np.ndarray] = None

    def copy(self) -> "Genome":
        return Genome(
            self.continuous.copy(),
            self.integers.copy(),
            None if self.permutation is None else self.permutation.copy(),
        )

    def flat(self) -> tuple:
        """Hash/compare-friendly flat tuple of every gene."""
        perm = () if self.permutation is None else tuple(int(v) for v in self.permutation)
        return (
            tuple(float(v) for v in self.continuous),
            tuple(int(v) for v in self.integers),
            perm,
        )


@dataclass
class Individual:
    """A genome with its evaluation and search state."""

    genome: Genome
    objectives: Optional[tuple] = None
    step: Optional[np.ndarray] = None
    best_genome: Optional[Genome] = None
    best_objectives: Optional[tuple] = None
