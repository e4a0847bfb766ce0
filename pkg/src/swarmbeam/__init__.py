"""Secure collaborative beamforming for UAV swarms.

Models virtual antenna arrays formed by UAV swarms, scores candidate
deployments on secrecy rate / sidelobe level / flight distance, and searches
the trade-off surface with archive-based multi-objective metaheuristics.
"""

__version__ = "0.1.0"

from .analysis import (
    FrontMetrics,
    PracticalityInputs,
    archive_hypervolume,
    front_metrics,
    hypervolume,
    pattern_grid,
    practicality_crossover_bytes,
    reference_point,
    spread,
)
from .config import (
    BASELINE_ALGORITHMS,
    OPTIMIZER_ALGORITHMS,
    RUN_PRESETS,
    SCENARIO_PRESETS,
    RunConfig,
    config_from_dict,
    config_hash,
    load_config,
    relay_default,
    resolve_config,
    scenario_from_dict,
    scenario_hash,
    scenario_to_dict,
    twoway_default,
)
from .emcore import (
    ArrayElement,
    ChannelParams,
    Direction,
    Vec3,
    VirtualArray,
    array_factor,
    generate_baseline_geometry,
    max_sidelobe_db,
    noise_power_w,
    pattern_db,
    received_power_w,
    shannon_rate_bps,
    snr_linear,
    steered_array,
    wavelength,
    wavenumber,
)
from .errors import (
    ConfigError,
    DegenerateArrayError,
    DomainError,
    SolutionValidationError,
    SwarmbeamError,
)
from .moea import (
    Archive,
    Genome,
    GenomeSchema,
    Individual,
    OptimizerConfig,
    ProgressRecord,
    RelayProblem,
    TwoWayProblem,
    dominates,
    emoalo_run,
    imodaom_run,
    make_problem,
    mopso_run,
    nondominated_filter,
    nondominated_indices,
    random_search_run,
)
from .runner import RunManifest, compare, comparison_csv, load_manifest, run
from .scenarios import (
    Box,
    Cluster,
    Eavesdropper,
    ElementConfig,
    RelayScenario,
    RelaySolution,
    Terminal,
    TwoWayScenario,
    TwoWaySolution,
    evaluate_relay,
    evaluate_twoway,
    flight_distance_m,
    mrc_combined_rate,
    secrecy_rate_relay,
    secrecy_rate_twoway,
    validate,
    worst_case_eve_rate,
)

__all__ = [
    "Archive",
    "ArrayElement",
    "BASELINE_ALGORITHMS",
    "Box",
    "ChannelParams",
    "Cluster",
    "ConfigError",
    "DegenerateArrayError",
    "Direction",
    "DomainError",
    "Eavesdropper",
    "ElementConfig",
    "FrontMetrics",
    "Genome",
    "GenomeSchema",
    "Individual",
    "OPTIMIZER_ALGORITHMS",
    "OptimizerConfig",
    "PracticalityInputs",
    "ProgressRecord",
    "RUN_PRESETS",
    "RelayProblem",
    "RelayScenario",
    "RelaySolution",
    "RunConfig",
    "RunManifest",
    "SCENARIO_PRESETS",
    "SolutionValidationError",
    "SwarmbeamError",
    "Terminal",
    "TwoWayProblem",
    "TwoWayScenario",
    "TwoWaySolution",
    "Vec3",
    "VirtualArray",
    "archive_hypervolume",
    "array_factor",
    "compare",
    "comparison_csv",
    "config_from_dict",
    "config_hash",
    "dominates",
    "emoalo_run",
    "evaluate_relay",
    "evaluate_twoway",
    "flight_distance_m",
    "front_metrics",
    "generate_baseline_geometry",
    "hypervolume",
    "imodaom_run",
    "load_config",
    "load_manifest",
    "make_problem",
    "max_sidelobe_db",
    "mopso_run",
    "mrc_combined_rate",
    "noise_power_w",
    "nondominated_filter",
    "nondominated_indices",
    "pattern_db",
    "pattern_grid",
    "practicality_crossover_bytes",
    "random_search_run",
    "received_power_w",
    "reference_point",
    "relay_default",
    "resolve_config",
    "run",
    "scenario_from_dict",
    "scenario_hash",
    "scenario_to_dict",
    "secrecy_rate_relay",
    "secrecy_rate_twoway",
    "shannon_rate_bps",
    "snr_linear",
    "spread",
    "steered_array",
    "twoway_default",
    "validate",
    "wavelength",
    "wavenumber",
    "worst_case_eve_rate",
]
