"""Run configuration: JSON schema, shipped default scenarios, validation.

A run config is a JSON object::

    {
      "scenario": "relay_default",        // preset name or inline scenario
      "algorithm": "imodaom",             // imodaom|emoalo|mopso|random|laa|raa
      "seed": 1,                          // required for the four optimizers
      "optimizer": {"population": 50, "iterations": 200,
                    "archive_capacity": 100, "crowding_segments": 10},
      "problem": {"position_grid": null, "weight_levels": null,
                  "fixed_weights": null},
      "baseline": {"spacing_m": 0.5},     // laa/raa element spacing
      "output": {"directory": "runs/demo", "pattern": false,
                 "pattern_grid_deg": 1.0}
    }

Every key except ``scenario`` and ``algorithm`` has a default. An inline
scenario is the object produced by :func:`scenario_to_dict`; positions are
``[x, y, z]`` metre triples and all angles are degrees.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any

from .emcore import ChannelParams, Vec3
from .errors import ConfigError
from .moea import OptimizerConfig
from .scenarios import (
    Box,
    Cluster,
    Eavesdropper,
    RelayScenario,
    Terminal,
    TwoWayScenario,
)

OPTIMIZER_ALGORITHMS = ("imodaom", "emoalo", "mopso", "random")
BASELINE_ALGORITHMS = ("laa", "raa")
ALGORITHMS = OPTIMIZER_ALGORITHMS + BASELINE_ALGORITHMS


@dataclass(frozen=True)
class RunConfig:
    """Fully validated description of one simulator run."""

    scenario: RelayScenario | TwoWayScenario
    scenario_label: str
    algorithm: str
    seed: int | None
    optimizer: OptimizerConfig | None
    output_dir: str
    position_grid: int | None
    weight_levels: tuple[float, ...] | None
    fixed_weights: float | None
    baseline_spacing_m: float
    write_pattern: bool
    pattern_grid_deg: float
    normalized: dict

    @property
    def scenario_kind(self) -> str:
        return "relay" if isinstance(self.scenario, RelayScenario) else "twoway"

    def problem_kwargs(self) -> dict:
        kw: dict[str, Any] = {"position_grid": self.position_grid}
        if self.scenario_kind == "relay":
            kw["weight_levels"] = (
                None if self.weight_levels is None else list(self.weight_levels)
            )
        else:
            kw["fixed_weights"] = self.fixed_weights
        return kw


# -------------------------------------------------------- default scenarios


def _ring(center_xy: tuple[float, float], radius: float, n: int, offset_deg: float):
    cx, cy = center_xy
    pts = []
    for k in range(n):
        a = math.radians(offset_deg + k * 360.0 / n)
        pts.append([cx + radius * math.cos(a), cy + radius * math.sin(a), 0.0])
    return pts


def _square_grid(center: tuple[float, float, float], side: int, spacing: float):
    cx, cy, cz = center
    half = (side - 1) / 2.0
    return [
        [cx + (i - half) * spacing, cy + (j - half) * spacing, cz]
        for i in range(side)
        for j in range(side)
    ]


def _polar(dist_m: float, azimuth_deg: float) -> tuple[float, float]:
    a = math.radians(azimuth_deg)
    return dist_m * math.cos(a), dist_m * math.sin(a)


def relay_default_dict() -> dict:
    """Shipped relay mission: 16 UAVs over a 100 m x 100 m field relay to
    four eight-terminal clusters 3.4-5.7 km out, against four known and four
    covert eavesdroppers."""
    clusters = []
    for az, dist in [(20.0, 3500.0), (110.0, 4200.0), (200.0, 5000.0), (290.0, 5600.0)]:
        clusters.append(_ring(_polar(dist, az), 120.0, 8, offset_deg=az))
    known = [
        {"position": [*_polar(2600.0, 65.0), 0.0], "known": True, "uncertainty_radius_m": 0.0},
        {"position": [*_polar(3000.0, 155.0), 0.0], "known": True, "uncertainty_radius_m": 40.0},
        {"position": [*_polar(3400.0, 245.0), 0.0], "known": True, "uncertainty_radius_m": 0.0},
        {"position": [*_polar(2800.0, 335.0), 0.0], "known": True, "uncertainty_radius_m": 25.0},
    ]
    unknown = [
        {"position": [*_polar(3000.0, az), 0.0], "known": False, "uncertainty_radius_m": 0.0}
        for az in (45.0, 135.0, 225.0, 315.0)
    ]
    return {
        "kind": "relay",
        "channel": {
            "carrier_hz": 900.0e6,
            "pathloss_exponent": 2.7,
            "noise_density_dbm_hz": -155.0,
            "bandwidth_hz": 20.0e6,
            "element_tx_power_w": 0.1,
        },
        "swarm_box": {"x": [-50.0, 50.0], "y": [-50.0, 50.0], "z": [100.0, 100.0]},
        "swarm_initial": _square_grid((0.0, 0.0, 100.0), 4, 20.0),
        "clusters": clusters,
        "eavesdroppers": known + unknown,
        "min_separation_m": 0.5,
        "sll_grid_deg": 5.0,
        "sll_exclusion_deg": 10.0,
        "eve_samples": 8,
    }


def twoway_default_dict() -> dict:
    """Shipped two-way mission: two 16-UAV swarms 1 km apart exchange data
    while four known and four covert eavesdroppers sit near the path."""
    known = [
        {"position": [250.0, 180.0, 0.0], "known": True, "uncertainty_radius_m": 0.0},
        {"position": [480.0, -160.0, 0.0], "known": True, "uncertainty_radius_m": 30.0},
        {"position": [620.0, 140.0, 0.0], "known": True, "uncertainty_radius_m": 0.0},
        {"position": [760.0, -90.0, 0.0], "known": True, "uncertainty_radius_m": 20.0},
    ]
    unknown = [
        {"position": [p, y, 0.0], "known": False, "uncertainty_radius_m": 0.0}
        for p, y in [(350.0, -220.0), (500.0, 240.0), (680.0, -180.0), (820.0, 130.0)]
    ]
    return {
        "kind": "twoway",
        "channel": {
            "carrier_hz": 2.4e9,
            "pathloss_exponent": 2.0,
            "noise_density_dbm_hz": -155.0,
            "bandwidth_hz": 20.0e6,
            "element_tx_power_w": 0.1,
        },
        "box_a": {"x": [-50.0, 50.0], "y": [-50.0, 50.0], "z": [100.0, 100.0]},
        "box_b": {"x": [950.0, 1050.0], "y": [-50.0, 50.0], "z": [100.0, 100.0]},
        "swarm_a_initial": _square_grid((0.0, 0.0, 100.0), 4, 20.0),
        "swarm_b_initial": _square_grid((1000.0, 0.0, 100.0), 4, 20.0),
        "eavesdroppers": known + unknown,
        "min_separation_m": 0.5,
        "sll_grid_deg": 5.0,
        "sll_exclusion_deg": 10.0,
        "eve_samples": 8,
    }


SCENARIO_PRESETS = {
    "relay_default": relay_default_dict,
    "twoway_default": twoway_default_dict,
}

RUN_PRESETS = {
    "relay_default": {"scenario": "relay_default", "algorithm": "imodaom", "seed": 1},
    "twoway_default": {"scenario": "twoway_default", "algorithm": "emoalo", "seed": 1},
}


def relay_default() -> RelayScenario:
    return scenario_from_dict(relay_default_dict())


def twoway_default() -> TwoWayScenario:
    return scenario_from_dict(twoway_default_dict())


# ----------------------------------------------------------- serialization


def _vec_to_list(p: Vec3) -> list[float]:
    return [p.x, p.y, p.z]


def _box_to_dict(b: Box) -> dict:
    return {"x": list(b.x), "y": list(b.y), "z": list(b.z)}


def scenario_to_dict(scn: RelayScenario | TwoWayScenario) -> dict:
    """Invert :func:`scenario_from_dict` (round-trips exactly)."""
    ch = scn.channel
    common = {
        "channel": {
            "carrier_hz": ch.carrier_hz,
            "pathloss_exponent": ch.pathloss_exponent,
            "noise_density_dbm_hz": ch.noise_density_dbm_hz,
            "bandwidth_hz": ch.bandwidth_hz,
            "element_tx_power_w": ch.element_tx_power_w,
        },
        "eavesdroppers": [
            {
                "position": _vec_to_list(e.position),
                "known": e.known,
                "uncertainty_radius_m": e.uncertainty_radius_m,
            }
            for e in scn.eavesdroppers
        ],
        "min_separation_m": scn.min_separation_m,
        "sll_grid_deg": scn.sll_grid_deg,
        "sll_exclusion_deg": scn.sll_exclusion_deg,
        "eve_samples": scn.eve_samples,
    }
    if isinstance(scn, RelayScenario):
        return {
            "kind": "relay",
            "swarm_box": _box_to_dict(scn.swarm_box),
            "swarm_initial": [_vec_to_list(p) for p in scn.swarm_initial],
            "clusters": [
                [_vec_to_list(t.position) for t in c.terminals] for c in scn.clusters
            ],
            **common,
        }
    if isinstance(scn, TwoWayScenario):
        return {
            "kind": "twoway",
            "box_a": _box_to_dict(scn.box_a),
            "box_b": _box_to_dict(scn.box_b),
            "swarm_a_initial": [_vec_to_list(p) for p in scn.swarm_a_initial],
            "swarm_b_initial": [_vec_to_list(p) for p in scn.swarm_b_initial],
            **common,
        }
    raise ConfigError(f"unknown scenario type {type(scn).__name__}")


# ------------------------------------------------------------- validation


class _Fields:
    """Collects "path: message" validation errors across one config walk."""

    def __init__(self):
        self.errors: list[str] = []

    def fail(self, path: str, message: str):
        self.errors.append(f"{path}: {message}")

    def raise_if_any(self):
        if self.errors:
            raise ConfigError("invalid config — " + "; ".join(self.errors))


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _get_num(d: dict, key: str, path: str, f: _Fields, default=None, positive=False):
    if key not in d:
        if default is not None:
            return default
        f.fail(f"{path}.{key}", "required number missing")
        return None
    v = d[key]
    if not _is_num(v):
        f.fail(f"{path}.{key}", f"expected a finite number, got {v!r}")
        return None
    if positive and not v > 0:
        f.fail(f"{path}.{key}", f"must be positive, got {v!r}")
        return None
    return float(v)


def _get_vec(v, path: str, f: _Fields) -> Vec3 | None:
    if not (isinstance(v, list) and len(v) == 3 and all(_is_num(c) for c in v)):
        f.fail(path, f"expected an [x, y, z] number triple, got {v!r}")
        return None
    return Vec3(float(v[0]), float(v[1]), float(v[2]))


def _get_range(v, path: str, f: _Fields) -> tuple[float, float] | None:
    if not (isinstance(v, list) and len(v) == 2 and all(_is_num(c) for c in v)):
        f.fail(path, f"expected a [lo, hi] number pair, got {v!r}")
        return None
    if not v[0] <= v[1]:
        f.fail(path, f"needs lo <= hi, got {v!r}")
        return None
    return float(v[0]), float(v[1])


def _get_box(d: dict, key: str, path: str, f: _Fields) -> Box | None:
    v = d.get(key)
    if not isinstance(v, dict):
        f.fail(f"{path}.{key}", "required box object ({x, y, z} ranges) missing")
        return None
    axes = [_get_range(v.get(ax), f"{path}.{key}.{ax}", f) for ax in ("x", "y", "z")]
    if any(a is None for a in axes):
        return None
    return Box(*axes)


def _get_points(d: dict, key: str, path: str, f: _Fields) -> list[Vec3] | None:
    v = d.get(key)
    if not (isinstance(v, list) and v):
        f.fail(f"{path}.{key}", "required non-empty position list missing")
        return None
    pts = [_get_vec(p, f"{path}.{key}[{i}]", f) for i, p in enumerate(v)]
    return None if any(p is None for p in pts) else pts


def _get_channel(d: dict, path: str, f: _Fields) -> ChannelParams | None:
    v = d.get("channel")
    if not isinstance(v, dict):
        f.fail(f"{path}.channel", "required channel object missing")
        return None
    carrier = _get_num(v, "carrier_hz", f"{path}.channel", f, positive=True)
    alpha = _get_num(v, "pathloss_exponent", f"{path}.channel", f, positive=True)
    noise = _get_num(v, "noise_density_dbm_hz", f"{path}.channel", f)
    bw = _get_num(v, "bandwidth_hz", f"{path}.channel", f, positive=True)
    power = _get_num(v, "element_tx_power_w", f"{path}.channel", f, positive=True)
    if None in (carrier, alpha, noise, bw, power):
        return None
    return ChannelParams(carrier, alpha, noise, bw, power)


def _get_eves(d: dict, path: str, f: _Fields) -> tuple[Eavesdropper, ...]:
    v = d.get("eavesdroppers", [])
    if not isinstance(v, list):
        f.fail(f"{path}.eavesdroppers", f"expected a list, got {type(v).__name__}")
        return ()
    out = []
    for i, e in enumerate(v):
        p = f"{path}.eavesdroppers[{i}]"
        if not isinstance(e, dict):
            f.fail(p, "expected an object with a position")
            continue
        pos = _get_vec(e.get("position"), f"{p}.position", f)
        known = e.get("known", True)
        if not isinstance(known, bool):
            f.fail(f"{p}.known", f"expected true/false, got {known!r}")
            continue
        radius = _get_num(e, "uncertainty_radius_m", p, f, default=0.0)
        if pos is None or radius is None or radius < 0:
            if radius is not None and radius < 0:
                f.fail(f"{p}.uncertainty_radius_m", "must be >= 0")
            continue
        out.append(Eavesdropper(i, pos, known, radius))
    return tuple(out)


def _scenario_tail(d: dict, path: str, f: _Fields) -> dict:
    grid = _get_num(d, "sll_grid_deg", path, f, default=1.0, positive=True)
    excl = _get_num(d, "sll_exclusion_deg", path, f, default=10.0, positive=True)
    sep = _get_num(d, "min_separation_m", path, f, default=0.5)
    samples = d.get("eve_samples", 8)
    if not (isinstance(samples, int) and not isinstance(samples, bool) and samples >= 1):
        f.fail(f"{path}.eve_samples", f"expected an integer >= 1, got {samples!r}")
        samples = 8
    return {
        "min_separation_m": sep if sep is not None else 0.5,
        "sll_grid_deg": grid if grid is not None else 1.0,
        "sll_exclusion_deg": excl if excl is not None else 10.0,
        "eve_samples": samples,
    }


_RELAY_KEYS = {
    "kind", "channel", "swarm_box", "swarm_initial", "clusters", "eavesdroppers",
    "min_separation_m", "sll_grid_deg", "sll_exclusion_deg", "eve_samples",
}
_TWOWAY_KEYS = {
    "kind", "channel", "box_a", "box_b", "swarm_a_initial", "swarm_b_initial",
    "eavesdroppers", "min_separation_m", "sll_grid_deg", "sll_exclusion_deg",
    "eve_samples",
}


def _check_keys(d: dict, allowed: set, path: str, f: _Fields):
    for k in d:
        if k not in allowed:
            f.fail(f"{path}.{k}", "unknown key")


def scenario_from_dict(data: dict, path: str = "scenario") -> RelayScenario | TwoWayScenario:
    """Build a scenario from its JSON object form, reporting every bad field."""
    f = _Fields()
    scn = _scenario_from_dict(data, path, f)
    f.raise_if_any()
    assert scn is not None
    return scn


def _scenario_from_dict(data, path: str, f: _Fields):
    if not isinstance(data, dict):
        f.fail(path, f"expected an object, got {type(data).__name__}")
        return None
    kind = data.get("kind")
    if kind == "relay":
        _check_keys(data, _RELAY_KEYS, path, f)
        channel = _get_channel(data, path, f)
        box = _get_box(data, "swarm_box", path, f)
        initial = _get_points(data, "swarm_initial", path, f)
        clusters = _get_clusters(data, path, f)
        eves = _get_eves(data, path, f)
        tail = _scenario_tail(data, path, f)
        if f.errors:
            return None
        try:
            return RelayScenario(
                channel, tuple(initial), box, clusters, eves, **tail
            )
        except ConfigError as exc:
            f.fail(path, str(exc))
            return None
    if kind == "twoway":
        _check_keys(data, _TWOWAY_KEYS, path, f)
        channel = _get_channel(data, path, f)
        box_a = _get_box(data, "box_a", path, f)
        box_b = _get_box(data, "box_b", path, f)
        initial_a = _get_points(data, "swarm_a_initial", path, f)
        initial_b = _get_points(data, "swarm_b_initial", path, f)
        eves = _get_eves(data, path, f)
        tail = _scenario_tail(data, path, f)
        if f.errors:
            return None
        try:
            return TwoWayScenario(
                channel, tuple(initial_a), tuple(initial_b), box_a, box_b, eves, **tail
            )
        except ConfigError as exc:
            f.fail(path, str(exc))
            return None
    f.fail(f"{path}.kind", f"expected 'relay' or 'twoway', got {kind!r}")
    return None


def _get_clusters(d: dict, path: str, f: _Fields) -> tuple[Cluster, ...]:
    v = d.get("clusters")
    if not (isinstance(v, list) and v):
        f.fail(f"{path}.clusters", "required non-empty cluster list missing")
        return ()
    out = []
    tid = 0
    for c, terms in enumerate(v):
        p = f"{path}.clusters[{c}]"
        if not (isinstance(terms, list) and terms):
            f.fail(p, "expected a non-empty list of terminal positions")
            continue
        built = []
        for t, pos in enumerate(terms):
            vec = _get_vec(pos, f"{p}[{t}]", f)
            if vec is not None:
                built.append(Terminal(tid, vec))
                tid += 1
        if len(built) == len(terms):
            out.append(Cluster(c, tuple(built)))
    return tuple(out)


# --------------------------------------------------------------- run config

_CONFIG_KEYS = {"scenario", "algorithm", "seed", "optimizer", "problem", "baseline", "output"}
_OPTIMIZER_KEYS = {"population", "iterations", "archive_capacity", "crowding_segments"}
_PROBLEM_KEYS = {"position_grid", "weight_levels", "fixed_weights"}
_OUTPUT_KEYS = {"directory", "pattern", "pattern_grid_deg"}


def _get_int(v, path: str, f: _Fields, minimum: int | None = None) -> int | None:
    if not (isinstance(v, int) and not isinstance(v, bool)):
        f.fail(path, f"expected an integer, got {v!r}")
        return None
    if minimum is not None and v < minimum:
        f.fail(path, f"must be >= {minimum}, got {v}")
        return None
    return v


def config_from_dict(data: dict, label: str = "custom") -> RunConfig:
    """Validate one parsed run-config object into a RunConfig."""
    f = _Fields()
    if not isinstance(data, dict):
        raise ConfigError(f"invalid config — top level: expected an object, got {type(data).__name__}")
    _check_keys(data, _CONFIG_KEYS, "config", f)

    raw_scn = data.get("scenario")
    scn = None
    scn_dict = None
    if isinstance(raw_scn, str):
        if raw_scn in SCENARIO_PRESETS:
            scn_dict = SCENARIO_PRESETS[raw_scn]()
            label = raw_scn
        else:
            names = ", ".join(sorted(SCENARIO_PRESETS))
            f.fail("scenario", f"unknown preset {raw_scn!r} (shipped: {names})")
    elif raw_scn is not None:
        scn_dict = raw_scn
    else:
        f.fail("scenario", "required (preset name or scenario object)")
    if scn_dict is not None:
        scn = _scenario_from_dict(scn_dict, "scenario", f)

    algorithm = data.get("algorithm")
    if algorithm not in ALGORITHMS:
        f.fail("algorithm", f"expected one of {', '.join(ALGORITHMS)}, got {algorithm!r}")
        algorithm = None

    seed = data.get("seed")
    if seed is not None:
        seed = _get_int(seed, "seed", f, minimum=0)
    elif algorithm in OPTIMIZER_ALGORITHMS:
        f.fail("seed", f"required for algorithm {algorithm!r}")

    opt_raw = data.get("optimizer", {})
    optimizer = None
    opt_fields = {}
    if not isinstance(opt_raw, dict):
        f.fail("optimizer", f"expected an object, got {type(opt_raw).__name__}")
    else:
        _check_keys(opt_raw, _OPTIMIZER_KEYS, "optimizer", f)
        for key in _OPTIMIZER_KEYS:
            if key in opt_raw:
                v = _get_int(opt_raw[key], f"optimizer.{key}", f, minimum=0)
                if v is not None:
                    opt_fields[key] = v
    if algorithm in OPTIMIZER_ALGORITHMS and seed is not None and not f.errors:
        try:
            optimizer = OptimizerConfig(seed=seed, **opt_fields)
        except ConfigError as exc:
            f.fail("optimizer", str(exc))

    prob_raw = data.get("problem", {})
    position_grid = None
    weight_levels = None
    fixed_weights = None
    if not isinstance(prob_raw, dict):
        f.fail("problem", f"expected an object, got {type(prob_raw).__name__}")
    else:
        _check_keys(prob_raw, _PROBLEM_KEYS, "problem", f)
        if prob_raw.get("position_grid") is not None:
            position_grid = _get_int(prob_raw["position_grid"], "problem.position_grid", f, minimum=2)
        if prob_raw.get("weight_levels") is not None:
            wl = prob_raw["weight_levels"]
            if not (isinstance(wl, list) and wl and all(_is_num(w) and 0.0 <= w <= 1.0 for w in wl)):
                f.fail("problem.weight_levels", "expected a non-empty list of numbers in [0, 1]")
            elif scn is not None and not isinstance(scn, RelayScenario):
                f.fail("problem.weight_levels", "only meaningful for relay scenarios")
            else:
                weight_levels = tuple(float(w) for w in wl)
        if prob_raw.get("fixed_weights") is not None:
            fw = prob_raw["fixed_weights"]
            if not (_is_num(fw) and 0.0 <= fw <= 1.0):
                f.fail("problem.fixed_weights", f"expected a number in [0, 1], got {fw!r}")
            elif scn is not None and not isinstance(scn, TwoWayScenario):
                f.fail("problem.fixed_weights", "only meaningful for twoway scenarios")
            else:
                fixed_weights = float(fw)

    base_raw = data.get("baseline", {})
    spacing = 0.5
    if not isinstance(base_raw, dict):
        f.fail("baseline", f"expected an object, got {type(base_raw).__name__}")
    else:
        _check_keys(base_raw, {"spacing_m"}, "baseline", f)
        got = _get_num(base_raw, "spacing_m", "baseline", f, default=0.5, positive=True)
        if got is not None:
            spacing = got

    out_raw = data.get("output", {})
    out_dir = None
    write_pattern = False
    pattern_grid_deg = 1.0
    if not isinstance(out_raw, dict):
        f.fail("output", f"expected an object, got {type(out_raw).__name__}")
    else:
        _check_keys(out_raw, _OUTPUT_KEYS, "output", f)
        if "directory" in out_raw:
            if isinstance(out_raw["directory"], str) and out_raw["directory"]:
                out_dir = out_raw["directory"]
            else:
                f.fail("output.directory", "expected a non-empty string")
        if "pattern" in out_raw:
            if isinstance(out_raw["pattern"], bool):
                write_pattern = out_raw["pattern"]
            else:
                f.fail("output.pattern", f"expected true/false, got {out_raw['pattern']!r}")
        got = _get_num(out_raw, "pattern_grid_deg", "output", f, default=1.0, positive=True)
        if got is not None:
            pattern_grid_deg = got

    f.raise_if_any()
    assert scn is not None and algorithm is not None
    if out_dir is None:
        tag = f"{label}-{algorithm}" + ("" if seed is None else f"-seed{seed}")
        out_dir = f"runs/{tag}"
    normalized = {
        "scenario": scenario_to_dict(scn),
        "algorithm": algorithm,
        "seed": seed,
        "optimizer": None
        if optimizer is None
        else {
            "population": optimizer.population,
            "iterations": optimizer.iterations,
            "archive_capacity": optimizer.archive_capacity,
            "crowding_segments": optimizer.crowding_segments,
        },
        "problem": {
            "position_grid": position_grid,
            "weight_levels": None if weight_levels is None else list(weight_levels),
            "fixed_weights": fixed_weights,
        },
        "baseline": {"spacing_m": spacing},
        "output": {"pattern": write_pattern, "pattern_grid_deg": pattern_grid_deg},
    }
    return RunConfig(
        scenario=scn,
        scenario_label=label,
        algorithm=algorithm,
        seed=seed,
        optimizer=optimizer,
        output_dir=out_dir,
        position_grid=position_grid,
        weight_levels=weight_levels,
        fixed_weights=fixed_weights,
        baseline_spacing_m=spacing,
        write_pattern=write_pattern,
        pattern_grid_deg=pattern_grid_deg,
        normalized=normalized,
    )


def load_config_data(path: str) -> tuple[dict, str]:
    """Parse a JSON config file into its raw object plus a display label."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"parse error in {path!r} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    import os.path

    return data, os.path.splitext(os.path.basename(path))[0]


def resolve_config_data(name_or_path: str) -> tuple[dict, str]:
    """A config file path, or the name of a shipped run preset."""
    import os.path

    if os.path.exists(name_or_path):
        return load_config_data(name_or_path)
    if name_or_path in RUN_PRESETS:
        return dict(RUN_PRESETS[name_or_path]), name_or_path
    names = ", ".join(sorted(RUN_PRESETS))
    raise ConfigError(
        f"{name_or_path!r} is neither a config file nor a shipped preset ({names})"
    )


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON run config from disk."""
    data, label = load_config_data(path)
    return config_from_dict(data, label=label)


def resolve_config(name_or_path: str) -> RunConfig:
    """CLI entry: a config file path, or a shipped run preset name."""
    data, label = resolve_config_data(name_or_path)
    return config_from_dict(data, label=label)


# ------------------------------------------------------------------ hashing


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def scenario_hash(scn: RelayScenario | TwoWayScenario) -> str:
    return hashlib.sha256(canonical_json(scenario_to_dict(scn)).encode()).hexdigest()


def config_hash(config: RunConfig) -> str:
    return hashlib.sha256(canonical_json(config.normalized).encode()).hexdigest()
