"""Mission scenarios and objective evaluation.

Two mission kinds are modelled:

* ``relay``: one swarm serves ground terminal clusters one after another,
  forming a fresh virtual array per cluster and steering at one selected
  terminal while known eavesdroppers listen independently (the strongest
  one bounds the secrecy rate).
* ``twoway``: two swarms exchange data; eavesdroppers collude by combining
  their received signals with maximum-ratio combining, so their SNRs add.

Objective vectors are minimized componentwise: f1 is the negated secrecy
sum (bit/s), f2 the worst sidelobe level (dB), f3 the total flight
distance (m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .emcore import (
    ChannelParams,
    Vec3,
    VirtualArray,
    max_sidelobe_db,
    received_power_profile,
    received_power_w,
    shannon_rate_bps,
    snr_linear,
    steered_array,
)
from .errors import ConfigError, DomainError, SolutionValidationError


class ObjectiveVector(NamedTuple):
    """One point in objective space (all three minimized)."""

    f1: float
    f2: float
    f3: float


@dataclass(frozen=True)
class Terminal:
    id: int
    position: Vec3


@dataclass(frozen=True)
class Cluster:
    """A group of candidate ground receivers served in a single hop."""

    id: int
    terminals: tuple[Terminal, ...]

    def __post_init__(self):
        if not self.terminals:
            raise ConfigError(f"cluster {self.id} has no terminals")


@dataclass(frozen=True)
class Eavesdropper:
    """A listener at ``position``; ``known`` ones enter the secrecy objective.

    ``uncertainty_radius_m`` > 0 means the true location is only known to lie
    in a horizontal disc of that radius around ``position``.
    """

    id: int
    position: Vec3
    known: bool = True
    uncertainty_radius_m: float = 0.0

    def __post_init__(self):
        if self.uncertainty_radius_m < 0:
            raise ConfigError(
                f"eavesdropper {self.id}: uncertainty radius must be >= 0"
            )


@dataclass(frozen=True)
class Box:
    """Axis-aligned flight volume; a zero-width z range pins the altitude."""

    x: tuple[float, float]
    y: tuple[float, float]
    z: tuple[float, float]

    def __post_init__(self):
        for name, (lo, hi) in (("x", self.x), ("y", self.y), ("z", self.z)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ConfigError(f"box {name} range must satisfy lo <= hi, got {lo}..{hi}")

    def contains(self, p: Vec3, tol: float = 1e-9) -> bool:
        return (
            self.x[0] - tol <= p.x <= self.x[1] + tol
            and self.y[0] - tol <= p.y <= self.y[1] + tol
            and self.z[0] - tol <= p.z <= self.z[1] + tol
        )

    def center(self) -> Vec3:
        return Vec3(
            (self.x[0] + self.x[1]) / 2.0,
            (self.y[0] + self.y[1]) / 2.0,
            (self.z[0] + self.z[1]) / 2.0,
        )


@dataclass(frozen=True)
class RelayScenario:
    """One swarm relaying to terminal clusters in a chosen visiting order."""

    channel: ChannelParams
    swarm_initial: tuple[Vec3, ...]
    swarm_box: Box
    clusters: tuple[Cluster, ...]
    eavesdroppers: tuple[Eavesdropper, ...] = ()
    min_separation_m: float = 0.5
    sll_grid_deg: float = 1.0
    sll_exclusion_deg: float = 10.0
    eve_samples: int = 8

    def __post_init__(self):
        _check_common(self)
        if len(self.swarm_initial) < 2:
            raise ConfigError("relay scenario needs at least two UAVs")
        for i, p in enumerate(self.swarm_initial):
            if not self.swarm_box.contains(p):
                raise ConfigError(f"initial UAV {i} position lies outside the flight box")
        if not self.clusters:
            raise ConfigError("relay scenario needs at least one cluster")
        ids = [c.id for c in self.clusters]
        if ids != list(range(len(ids))):
            raise ConfigError(f"cluster ids must be 0..{len(ids) - 1} in order, got {ids}")

    @property
    def n_uavs(self) -> int:
        return len(self.swarm_initial)

    def known_eavesdroppers(self) -> tuple[Eavesdropper, ...]:
        return tuple(e for e in self.eavesdroppers if e.known)


@dataclass(frozen=True)
class TwoWayScenario:
    """Two swarms exchanging data against colluding eavesdroppers."""

    channel: ChannelParams
    swarm_a_initial: tuple[Vec3, ...]
    swarm_b_initial: tuple[Vec3, ...]
    box_a: Box
    box_b: Box
    eavesdroppers: tuple[Eavesdropper, ...] = ()
    min_separation_m: float = 0.5
    sll_grid_deg: float = 1.0
    sll_exclusion_deg: float = 10.0
    eve_samples: int = 8

    def __post_init__(self):
        if not self.swarm_a_initial or not self.swarm_b_initial:
            raise ConfigError("both swarms need at least one UAV")
        if self.min_separation_m < 0:
            raise ConfigError("min_separation_m must be >= 0")
        if self.eve_samples < 1:
            raise ConfigError("eve_samples must be >= 1")
        if _boxes_overlap(self.box_a, self.box_b):
            raise ConfigError("the two flight boxes must be disjoint")
        for name, pts, box in (
            ("a", self.swarm_a_initial, self.box_a),
            ("b", self.swarm_b_initial, self.box_b),
        ):
            for i, p in enumerate(pts):
                if not box.contains(p):
                    raise ConfigError(
                        f"initial UAV {i} of swarm {name} lies outside its flight box"
                    )

    def known_eavesdroppers(self) -> tuple[Eavesdropper, ...]:
        return tuple(e for e in self.eavesdroppers if e.known)


def _check_common(scn) -> None:
    if not scn.swarm_initial:
        raise ConfigError("scenario needs at least one UAV")
    if scn.min_separation_m < 0:
        raise ConfigError("min_separation_m must be >= 0")
    if scn.eve_samples < 1:
        raise ConfigError("eve_samples must be >= 1")


def _boxes_overlap(a: Box, b: Box) -> bool:
    for ra, rb in ((a.x, b.x), (a.y, b.y), (a.z, b.z)):
        if ra[1] < rb[0] or rb[1] < ra[0]:
            return False
    return True


@dataclass(frozen=True)
class ElementConfig:
    """Positions and excitation weights of every UAV for one array formation."""

    positions: tuple[Vec3, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.weights):
            raise DomainError("positions and weights must have the same length")


@dataclass(frozen=True)
class RelaySolution:
    """Candidate relay plan: one formation per cluster plus a visiting order.

    ``legs[c]`` is the formation used while serving cluster ``c``;
    ``receiver_choice[c]`` selects the steered terminal of that cluster;
    ``route`` is the order in which clusters are visited.
    """

    legs: tuple[ElementConfig, ...]
    receiver_choice: tuple[int, ...]
    route: tuple[int, ...]


@dataclass(frozen=True)
class TwoWaySolution:
    """Candidate two-way plan: a formation per swarm plus receiver picks.

    ``receiver_a`` indexes the UAV of swarm B that receives the A->B
    transmission; ``receiver_b`` indexes the swarm-A receiver of B->A.
    """

    config_a: ElementConfig
    config_b: ElementConfig
    receiver_a: int
    receiver_b: int


# ------------------------------------------------------------------ sampling

_RING_FLOOR_M = 0.01
_RING_RATIO = math.sqrt(2.0)


def _ring_radii(radius_m: float) -> list[float]:
    """Radial sample lattice: fixed absolute rings floor*ratio^k up to the radius.

    Because the lattice is absolute, the rings used for a smaller radius are
    a strict subset of those for a larger one, which makes the sampled
    worst case monotone in the radius by construction.
    """
    if radius_m <= _RING_FLOOR_M:
        return [radius_m]
    top = int(math.floor(math.log(radius_m / _RING_FLOOR_M) / math.log(_RING_RATIO) + 1e-12))
    return [_RING_FLOOR_M * _RING_RATIO**k for k in range(top + 1)]


def _bit_reversed_angles(n: int) -> np.ndarray:
    """First n angles of the binary van der Corput circle sequence.

    Prefixes are nested, so a coarser angular sampling is always a subset of
    a finer one.
    """
    out = np.empty(n)
    for i in range(n):
        v, denom, x = i, 1.0, 0.0
        while v:
            denom *= 2.0
            x += (v & 1) / denom
            v >>= 1
        out[i] = 2.0 * math.pi * x
    return out


def eavesdropper_sample_points(eve: Eavesdropper, n_samples: int) -> np.ndarray:
    """Deterministic probe points covering the eavesdropper's uncertainty disc.

    Returns the disc center plus ``n_samples`` angular probes on each ring of
    an absolute radial lattice. Both the rings (in the radius) and the angles
    (in ``n_samples``) are nested, so enlarging either can only add points.
    """
    if n_samples < 1:
        raise ConfigError(f"n_samples must be >= 1, got {n_samples!r}")
    c = eve.position
    if eve.uncertainty_radius_m == 0.0:
        return np.array([[c.x, c.y, c.z]])
    radii = _ring_radii(eve.uncertainty_radius_m)
    angles = _bit_reversed_angles(n_samples)
    pts = [(c.x, c.y, c.z)]
    for r in radii:
        for a in angles:
            pts.append((c.x + r * math.cos(a), c.y + r * math.sin(a), c.z))
    return np.array(pts)


def worst_case_eve_snr(
    array: VirtualArray, eve: Eavesdropper, channel: ChannelParams, n_samples: int = 8
) -> float:
    """Largest linear SNR the eavesdropper can see anywhere in its disc."""
    pts = eavesdropper_sample_points(eve, n_samples)
    powers = received_power_profile(array, pts, channel)
    return snr_linear(float(powers.max()), channel)


def worst_case_eve_rate(
    array: VirtualArray, eve: Eavesdropper, channel: ChannelParams, n_samples: int = 8
) -> float:
    """Largest rate (bit/s) over the probe points of the uncertainty disc."""
    return shannon_rate_bps(
        worst_case_eve_snr(array, eve, channel, n_samples), channel.bandwidth_hz
    )


# ---------------------------------------------------------------- rate terms


def mrc_combined_rate(eve_snrs: Sequence[float], bandwidth_hz: float) -> float:
    """Rate of colluding eavesdroppers under maximum-ratio combining.

    MRC adds the per-eavesdropper SNRs before the rate is taken; with no
    eavesdroppers the combined rate is zero.
    """
    total = 0.0
    for s in eve_snrs:
        if s < 0:
            raise DomainError(f"snr must be >= 0, got {s!r}")
        total += s
    return shannon_rate_bps(total, bandwidth_hz)


def secrecy_rate_relay(
    array: VirtualArray,
    cluster: Cluster,
    receiver_idx: int,
    known_eves: Sequence[Eavesdropper],
    channel: ChannelParams,
    eve_samples: int = 8,
) -> float:
    """Secrecy rate of one relay hop: [rate(receiver) - max rate(eve)]^+.

    The array must already be steered at the selected terminal. Independent
    eavesdroppers do not combine, so only the strongest matters; an empty
    eavesdropper list leaves the receiver rate uncut.
    """
    if not (0 <= receiver_idx < len(cluster.terminals)):
        raise DomainError(
            f"receiver index {receiver_idx} out of range for cluster {cluster.id}"
        )
    target = cluster.terminals[receiver_idx].position
    r_rx = shannon_rate_bps(
        snr_linear(received_power_w(array, target, channel), channel),
        channel.bandwidth_hz,
    )
    worst = 0.0
    for eve in known_eves:
        worst = max(worst, worst_case_eve_snr(array, eve, channel, eve_samples))
    r_eve = shannon_rate_bps(worst, channel.bandwidth_hz)
    return max(0.0, r_rx - r_eve)


def secrecy_rate_twoway(
    array: VirtualArray,
    receiver: Vec3,
    known_eves: Sequence[Eavesdropper],
    channel: ChannelParams,
    eve_samples: int = 8,
) -> float:
    """Secrecy rate of one direction of the swarm-to-swarm exchange.

    Eavesdroppers collude via MRC: [rate(receiver) - rate(sum of eve SNRs)]^+.
    """
    r_rx = shannon_rate_bps(
        snr_linear(received_power_w(array, receiver, channel), channel),
        channel.bandwidth_hz,
    )
    snrs = [worst_case_eve_snr(array, e, channel, eve_samples) for e in known_eves]
    return max(0.0, r_rx - mrc_combined_rate(snrs, channel.bandwidth_hz))


# ------------------------------------------------------------ flight distance


def flight_distance_m(
    initial: Sequence[Vec3], legs: Sequence[Sequence[Vec3]]
) -> float:
    """Total distance flown by all UAVs through the ordered leg waypoints."""
    total = 0.0
    for u, start in enumerate(initial):
        prev = start
        for leg in legs:
            nxt = leg[u]
            total += prev.distance_to(nxt)
            prev = nxt
    return total


# ------------------------------------------------------------------ validate


def validate(scenario, solution) -> list[str]:
    """All constraint violations of a candidate solution (empty when valid)."""
    if isinstance(scenario, RelayScenario):
        return _validate_relay(scenario, solution)
    if isinstance(scenario, TwoWayScenario):
        return _validate_twoway(scenario, solution)
    raise ConfigError(f"unknown scenario type {type(scenario).__name__}")


def _formation_violations(
    label: str, cfg: ElementConfig, box: Box, n_uavs: int, d_min: float
) -> list[str]:
    out = []
    if len(cfg.positions) != n_uavs:
        out.append(f"{label}: expected {n_uavs} UAVs, got {len(cfg.positions)}")
        return out
    for u, p in enumerate(cfg.positions):
        if not box.contains(p):
            out.append(f"{label}: uav {u} at ({p.x:.3f}, {p.y:.3f}, {p.z:.3f}) outside box")
    for u, w in enumerate(cfg.weights):
        if not (0.0 <= w <= 1.0):
            out.append(f"{label}: uav {u} weight {w!r} outside [0, 1]")
    if d_min > 0:
        for i in range(n_uavs):
            for j in range(i + 1, n_uavs):
                d = cfg.positions[i].distance_to(cfg.positions[j])
                if d < d_min * (1.0 - 1e-9):
                    out.append(
                        f"{label}: uavs {i} and {j} separated by {d:.4f} m < {d_min} m"
                    )
    return out


def _validate_relay(scn: RelayScenario, sol: RelaySolution) -> list[str]:
    out = []
    n_clusters = len(scn.clusters)
    if len(sol.legs) != n_clusters:
        out.append(f"expected {n_clusters} legs, got {len(sol.legs)}")
        return out
    if len(sol.receiver_choice) != n_clusters:
        out.append(
            f"expected {n_clusters} receiver choices, got {len(sol.receiver_choice)}"
        )
        return out
    for c, cfg in enumerate(sol.legs):
        out.extend(
            _formation_violations(
                f"leg {c}", cfg, scn.swarm_box, scn.n_uavs, scn.min_separation_m
            )
        )
    for c, r in enumerate(sol.receiver_choice):
        n_t = len(scn.clusters[c].terminals)
        if not (0 <= r < n_t):
            out.append(f"cluster {c}: receiver index {r} outside 0..{n_t - 1}")
    if sorted(sol.route) != list(range(n_clusters)):
        out.append(f"route {list(sol.route)} is not a permutation of 0..{n_clusters - 1}")
    return out


def _validate_twoway(scn: TwoWayScenario, sol: TwoWaySolution) -> list[str]:
    out = []
    out.extend(
        _formation_violations(
            "swarm a", sol.config_a, scn.box_a, len(scn.swarm_a_initial), scn.min_separation_m
        )
    )
    out.extend(
        _formation_violations(
            "swarm b", sol.config_b, scn.box_b, len(scn.swarm_b_initial), scn.min_separation_m
        )
    )
    if not (0 <= sol.receiver_a < len(scn.swarm_b_initial)):
        out.append(f"receiver_a index {sol.receiver_a} outside swarm b")
    if not (0 <= sol.receiver_b < len(scn.swarm_a_initial)):
        out.append(f"receiver_b index {sol.receiver_b} outside swarm a")
    return out


# ------------------------------------------------------------------ evaluate


def evaluate_relay(scenario: RelayScenario, solution: RelaySolution) -> ObjectiveVector:
    """Objective vector of a relay plan.

    f1 negates the summed per-cluster secrecy rate, f2 is the worst sidelobe
    level over all legs, f3 the total flight distance through the route.
    Raises SolutionValidationError when the solution breaks constraints.
    """
    violations = validate(scenario, solution)
    if violations:
        raise SolutionValidationError(violations)
    ch = scenario.channel
    known = scenario.known_eavesdroppers()
    secrecy_sum = 0.0
    worst_sll = -math.inf
    for cluster in scenario.clusters:
        cfg = solution.legs[cluster.id]
        r_idx = solution.receiver_choice[cluster.id]
        target = cluster.terminals[r_idx].position
        arr = steered_array(cfg.positions, cfg.weights, target, ch.carrier_hz)
        secrecy_sum += secrecy_rate_relay(
            arr, cluster, r_idx, known, ch, scenario.eve_samples
        )
        worst_sll = max(
            worst_sll,
            max_sidelobe_db(
                arr, ch.carrier_hz, scenario.sll_grid_deg, scenario.sll_exclusion_deg
            ),
        )
    legs_ordered = [solution.legs[c].positions for c in solution.route]
    f3 = flight_distance_m(scenario.swarm_initial, legs_ordered)
    return ObjectiveVector(-secrecy_sum, worst_sll, f3)


def evaluate_twoway(scenario: TwoWayScenario, solution: TwoWaySolution) -> ObjectiveVector:
    """Objective vector of a two-way exchange plan.

    f1 negates the summed A->B and B->A secrecy rates against MRC collusion,
    f2 is the worse of the two swarms' sidelobe levels, f3 sums both swarms'
    single-move flight distances.
    """
    violations = validate(scenario, solution)
    if violations:
        raise SolutionValidationError(violations)
    ch = scenario.channel
    known = scenario.known_eavesdroppers()
    target_b = solution.config_b.positions[solution.receiver_a]
    target_a = solution.config_a.positions[solution.receiver_b]
    arr_a = steered_array(
        solution.config_a.positions, solution.config_a.weights, target_b, ch.carrier_hz
    )
    arr_b = steered_array(
        solution.config_b.positions, solution.config_b.weights, target_a, ch.carrier_hz
    )
    secrecy = secrecy_rate_twoway(
        arr_a, target_b, known, ch, scenario.eve_samples
    ) + secrecy_rate_twoway(arr_b, target_a, known, ch, scenario.eve_samples)
    sll = max(
        max_sidelobe_db(arr_a, ch.carrier_hz, scenario.sll_grid_deg, scenario.sll_exclusion_deg),
        max_sidelobe_db(arr_b, ch.carrier_hz, scenario.sll_grid_deg, scenario.sll_exclusion_deg),
    )
    f3 = flight_distance_m(
        scenario.swarm_a_initial, [solution.config_a.positions]
    ) + flight_distance_m(scenario.swarm_b_initial, [solution.config_b.positions])
    return ObjectiveVector(-secrecy, sll, f3)
