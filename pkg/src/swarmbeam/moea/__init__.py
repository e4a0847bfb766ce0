"""Multi-objective metaheuristics over mixed genomes."""

from .baselines import mopso_run, random_search_run
from .common import (
    AntLionParams,
    DragonflyParams,
    MopsoParams,
    OptimizerConfig,
    ProgressRecord,
)
from .emoalo import emoalo_run
from .genome import Genome, GenomeSchema, Individual
from .imodaom import imodaom_run
from .operators import (
    GravityAttractors,
    GravityWeights,
    integer_mutation,
    multi_gravity_update,
    orthogonal_init,
    pmx,
    random_walk,
)
from .pareto import Archive, dominates, nondominated_filter, nondominated_indices
from .problems import RelayProblem, TwoWayProblem, make_problem

__all__ = [
    "AntLionParams",
    "Archive",
    "DragonflyParams",
    "Genome",
    "GenomeSchema",
    "GravityAttractors",
    "GravityWeights",
    "Individual",
    "MopsoParams",
    "OptimizerConfig",
    "ProgressRecord",
    "RelayProblem",
    "TwoWayProblem",
    "dominates",
    "emoalo_run",
    "imodaom_run",
    "integer_mutation",
    "make_problem",
    "mopso_run",
    "multi_gravity_update",
    "nondominated_filter",
    "nondominated_indices",
    "orthogonal_init",
    "pmx",
    "random_search_run",
    "random_walk",
]
