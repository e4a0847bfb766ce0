"""Virtual antenna array and link-budget primitives.

Positions are meters in a right-handed frame with z up. Far-field directions
use the polar angle ``theta`` measured from +z and the azimuth ``phi``
measured from +x in the x-y plane. All phases are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, DegenerateArrayError, DomainError

SPEED_OF_LIGHT = 299_792_458.0
"""Propagation speed used for all wavelength conversions, m/s."""

PATTERN_FLOOR_DB = -120.0
"""Lower clamp applied to normalized pattern values, dB."""

_SCAN_CHUNK = 1 << 17  # directions per block when scanning large grids


def wavelength(carrier_hz: float) -> float:
    """Carrier wavelength in meters (raises DomainError for f <= 0)."""
    if not carrier_hz > 0:
        raise DomainError(f"carrier frequency must be positive, got {carrier_hz!r}")
    return SPEED_OF_LIGHT / carrier_hz


def wavenumber(carrier_hz: float) -> float:
    """Free-space wavenumber 2*pi/lambda in rad/m."""
    return 2.0 * math.pi / wavelength(carrier_hz)


@dataclass(frozen=True)
class Vec3:
    """Cartesian position in meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise DomainError(f"position components must be finite, got {c!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def distance_to(self, other: "Vec3") -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class Direction:
    """Far-field direction: polar angle ``theta`` in [0, pi], azimuth ``phi`` in [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise DomainError(f"phi must lie in [0, 2*pi), got {self.phi!r}")

    def unit_vector(self) -> np.ndarray:
        """Unit propagation vector (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta))."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "Direction":
        """Direction of a (non-zero) cartesian vector."""
        v = np.asarray(v, dtype=float)
        r = float(np.linalg.norm(v))
        if r == 0.0:
            raise DomainError("cannot derive a direction from the zero vector")
        theta = math.acos(max(-1.0, min(1.0, v[2] / r)))
        phi = math.atan2(v[1], v[0]) % (2.0 * math.pi)
        # atan2 can return 2*pi after the modulo when y underflows negative
        if phi >= 2.0 * math.pi:
            phi = 0.0
        return cls(theta, phi)


@dataclass(frozen=True)
class ArrayElement:
    """One transmit element of a virtual array: position, excitation weight, phase."""

    position: Vec3
    weight: float
    phase: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.weight <= 1.0):
            raise DomainError(f"element weight must lie in [0, 1], got {self.weight!r}")
        if not math.isfinite(self.phase):
            raise DomainError(f"element phase must be finite, got {self.phase!r}")


class VirtualArray:
    """A steered set of array elements (treat as immutable after construction)."""

    def __init__(self, elements: Iterable[ArrayElement], steering: Direction):
        self.elements = tuple(elements)
        if not self.elements:
            raise DomainError("a virtual array needs at least one element")
        self.steering = steering
        self._positions = np.array(
            [[e.position.x, e.position.y, e.position.z] for e in self.elements]
        )
        self._weights = np.array([e.weight for e in self.elements])
        self._phases = np.array([e.phase for e in self.elements])

    def __len__(self) -> int:
        return len(self.elements)

    def positions_matrix(self) -> np.ndarray:
        """Element positions as an (N, 3) array (copy-free; do not mutate)."""
        return self._positions

    def weights_vector(self) -> np.ndarray:
        return self._weights

    def phases_vector(self) -> np.ndarray:
        return self._phases

    def centroid(self) -> np.ndarray:
        return self._positions.mean(axis=0)

    def min_separation(self) -> float:
        """Smallest pairwise element distance (inf for a single element)."""
        if len(self.elements) < 2:
            return math.inf
        diff = self._positions[:, None, :] - self._positions[None, :, :]
        d = np.sqrt((diff**2).sum(axis=2))
        iu = np.triu_indices(len(self.elements), k=1)
        return float(d[iu].min())


def _positions_matrix(positions: Sequence[Vec3] | np.ndarray) -> np.ndarray:
    if isinstance(positions, np.ndarray):
        return np.atleast_2d(np.asarray(positions, dtype=float))
    return np.array([[p.x, p.y, p.z] for p in positions], dtype=float)


def steering_phases(
    positions: Sequence[Vec3] | np.ndarray,
    steer: Direction,
    carrier_hz: float,
) -> np.ndarray:
    """Per-element phases that align the array response toward ``steer``.

    Phases are referenced to the array centroid, so a rigid translation of
    all elements leaves the phase set (and therefore the pattern) unchanged.
    With these phases the response at ``steer`` has magnitude sum(weights).
    """
    p = _positions_matrix(positions)
    k = wavenumber(carrier_hz)
    rel = p - p.mean(axis=0)
    return -k * (rel @ steer.unit_vector())


def _response(
    rel_positions: np.ndarray,
    weights: np.ndarray,
    phases: np.ndarray,
    units: np.ndarray,
    k: float,
) -> np.ndarray:
    """Complex array response at each of the (G, 3) unit direction vectors."""
    geom = k * (units @ rel_positions.T)  # (G, N)
    return np.exp(1j * (geom + phases)) @ weights


def array_factor(array: VirtualArray, direction: Direction, carrier_hz: float) -> complex:
    """Complex far-field array factor sum(w_n * exp(j(k p_n.u + phase_n))).

    Element positions enter relative to the array centroid; by the triangle
    inequality |AF| <= sum(weights) everywhere.
    """
    rel = array.positions_matrix() - array.centroid()
    out = _response(
        rel,
        array.weights_vector(),
        array.phases_vector(),
        direction.unit_vector()[None, :],
        wavenumber(carrier_hz),
    )
    return complex(out[0])


def steered_array(
    positions: Sequence[Vec3] | np.ndarray,
    weights: Sequence[float] | np.ndarray,
    target: Vec3,
    carrier_hz: float,
) -> VirtualArray:
    """Build a VirtualArray phased toward ``target`` (seen from the centroid)."""
    p = _positions_matrix(positions)
    w = np.asarray(weights, dtype=float)
    if w.shape[0] != p.shape[0]:
        raise DomainError("weights and positions must have matching length")
    aim = Direction.from_vector(target.as_array() - p.mean(axis=0))
    phases = steering_phases(p, aim, carrier_hz)
    elements = [
        ArrayElement(Vec3(*p[i]), float(w[i]), float(phases[i])) for i in range(p.shape[0])
    ]
    return VirtualArray(elements, aim)


def pattern_db(array: VirtualArray, direction: Direction, carrier_hz: float) -> float:
    """Mainlobe-normalized power pattern 20*log10(|AF(dir)| / |AF(steer)|), dB.

    Clamped below at PATTERN_FLOOR_DB; raises DegenerateArrayError when the
    steered response is zero (nothing to normalize against).
    """
    ref = abs(array_factor(array, array.steering, carrier_hz))
    if ref == 0.0:
        raise DegenerateArrayError("steered response is zero; pattern undefined")
    mag = abs(array_factor(array, direction, carrier_hz))
    if mag == 0.0:
        return PATTERN_FLOOR_DB
    return max(PATTERN_FLOOR_DB, 20.0 * math.log10(mag / ref))


@lru_cache(maxsize=8)
def _scan_units(grid_deg: float) -> np.ndarray:
    """Unit vectors of the (theta, phi) scan lattice, theta-major (cached)."""
    n_theta = int(math.floor(180.0 / grid_deg + 1e-9)) + 1
    n_phi = int(math.floor(360.0 / grid_deg - 1e-9)) + 1
    thetas = np.radians(np.arange(n_theta) * grid_deg)
    phis = np.radians(np.arange(n_phi) * grid_deg)
    st = np.sin(thetas)[:, None]
    units = np.empty((n_theta, n_phi, 3))
    units[:, :, 0] = st * np.cos(phis)[None, :]
    units[:, :, 1] = st * np.sin(phis)[None, :]
    units[:, :, 2] = np.cos(thetas)[:, None]
    return units.reshape(-1, 3)


def max_sidelobe_db(
    array: VirtualArray,
    carrier_hz: float,
    grid_deg: float = 1.0,
    exclusion_deg: float = 10.0,
) -> float:
    """Largest normalized pattern value outside the mainlobe cap, dB.

    Scans a full-sphere (theta, phi) lattice with ``grid_deg`` spacing and
    ignores every direction within ``exclusion_deg`` of the steering
    direction (a spherical cap). Raises ConfigError when the cap swallows
    the whole scan set.
    """
    if not grid_deg > 0:
        raise ConfigError(f"scan grid must be positive, got {grid_deg!r}")
    if exclusion_deg < 0:
        raise ConfigError(f"exclusion cap must be >= 0, got {exclusion_deg!r}")
    if exclusion_deg >= 180.0:
        raise ConfigError(
            f"exclusion cap of {exclusion_deg} deg covers the whole sphere"
        )
    units = _scan_units(float(grid_deg))
    keep = units @ array.steering.unit_vector() < math.cos(math.radians(exclusion_deg))
    if not keep.any():
        raise ConfigError(
            f"exclusion cap of {exclusion_deg} deg removes the entire {grid_deg} deg scan grid"
        )
    ref = abs(array_factor(array, array.steering, carrier_hz))
    if ref == 0.0:
        raise DegenerateArrayError("steered response is zero; sidelobe level undefined")

    rel = array.positions_matrix() - array.centroid()
    weights = array.weights_vector()
    phases = array.phases_vector()
    k = wavenumber(carrier_hz)
    kept = units[keep]
    best = 0.0
    for start in range(0, kept.shape[0], _SCAN_CHUNK):
        block = kept[start : start + _SCAN_CHUNK]
        mags = np.abs(_response(rel, weights, phases, block, k))
        best = max(best, float(mags.max()))
    if best == 0.0:
        return PATTERN_FLOOR_DB
    return max(PATTERN_FLOOR_DB, 20.0 * math.log10(best / ref))


@dataclass(frozen=True)
class ChannelParams:
    """Link-budget parameters shared by every transmission in a scenario.

    noise_density_dbm_hz is the total noise power spectral density;
    element_tx_power_w is the transmit power of a single array element.
    """

    carrier_hz: float
    pathloss_exponent: float
    noise_density_dbm_hz: float
    bandwidth_hz: float
    element_tx_power_w: float

    def __post_init__(self):
        if not self.carrier_hz > 0:
            raise DomainError(f"carrier_hz must be positive, got {self.carrier_hz!r}")
        if not self.pathloss_exponent > 0:
            raise DomainError(
                f"pathloss_exponent must be positive, got {self.pathloss_exponent!r}"
            )
        if not self.bandwidth_hz > 0:
            raise DomainError(f"bandwidth_hz must be positive, got {self.bandwidth_hz!r}")
        if not self.element_tx_power_w > 0:
            raise DomainError(
                f"element_tx_power_w must be positive, got {self.element_tx_power_w!r}"
            )
        if not math.isfinite(self.noise_density_dbm_hz):
            raise DomainError("noise_density_dbm_hz must be finite")


def path_loss_linear(distance_m: float, carrier_hz: float, pathloss_exponent: float) -> float:
    """Power path loss (4*pi/lambda)^2 * d^alpha with a 1 m reference distance.

    The model is only defined beyond the reference distance, so d < 1 m
    raises DomainError.
    """
    if distance_m < 1.0:
        raise DomainError(
            f"path loss model needs distance >= 1 m reference, got {distance_m!r}"
        )
    lam = wavelength(carrier_hz)
    return (4.0 * math.pi / lam) ** 2 * distance_m**pathloss_exponent


def noise_power_w(channel: ChannelParams) -> float:
    """Total noise power over the channel bandwidth, watts."""
    density_w_hz = 10.0 ** ((channel.noise_density_dbm_hz - 30.0) / 10.0)
    return density_w_hz * channel.bandwidth_hz


def received_power_w(array: VirtualArray, rx: Vec3, channel: ChannelParams) -> float:
    """Far-field received power P_tx * |AF(dir to rx)|^2 / L(centroid distance).

    The receiver is treated as far-field: per-element phase offsets come from
    the centroid-to-receiver direction while the amplitude uses the common
    centroid distance.
    """
    return float(received_power_profile(array, rx.as_array()[None, :], channel)[0])


def received_power_profile(
    array: VirtualArray, rx_points: np.ndarray, channel: ChannelParams
) -> np.ndarray:
    """Vectorized received_power_w over an (M, 3) array of receiver points."""
    pts = np.atleast_2d(np.asarray(rx_points, dtype=float))
    centroid = array.centroid()
    offsets = pts - centroid
    dists = np.linalg.norm(offsets, axis=1)
    if np.any(dists < 1.0):
        raise DomainError("far-field model needs receivers at least 1 m from the centroid")
    units = offsets / dists[:, None]
    rel = array.positions_matrix() - centroid
    af = _response(
        rel,
        array.weights_vector(),
        array.phases_vector(),
        units,
        wavenumber(channel.carrier_hz),
    )
    gain = np.abs(af) ** 2
    loss = (4.0 * math.pi / wavelength(channel.carrier_hz)) ** 2 * dists ** (
        channel.pathloss_exponent
    )
    return channel.element_tx_power_w * gain / loss


def snr_linear(received_w: float, channel: ChannelParams) -> float:
    """Linear signal-to-noise ratio of a received power against the noise floor."""
    if received_w < 0:
        raise DomainError(f"received power must be >= 0, got {received_w!r}")
    return received_w / noise_power_w(channel)


def shannon_rate_bps(snr: float, bandwidth_hz: float) -> float:
    """Achievable rate B * log2(1 + snr) in bit/s."""
    if snr < 0:
        raise DomainError(f"snr must be >= 0, got {snr!r}")
    if not bandwidth_hz > 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth_hz!r}")
    return bandwidth_hz * math.log2(1.0 + snr)


def generate_baseline_geometry(
    kind: str, n: int, spacing_m: float, center: Vec3
) -> list[Vec3]:
    """Reference element layouts used as non-optimized baselines.

    ``laa`` places n elements in a line along x; ``raa`` fills an r x c
    rectangle (rows along x, columns along y) with |r - c| minimal. Both are
    centered on ``center`` at its altitude.
    """
    if n < 1:
        raise DomainError(f"geometry needs at least one element, got n={n!r}")
    if not spacing_m > 0:
        raise DomainError(f"element spacing must be positive, got {spacing_m!r}")
    kind = kind.lower()
    if kind == "laa":
        xs = (np.arange(n) - (n - 1) / 2.0) * spacing_m
        return [Vec3(center.x + float(x), center.y, center.z) for x in xs]
    if kind == "raa":
        rows = 1
        for r in range(1, int(math.isqrt(n)) + 1):
            if n % r == 0:
                rows = r
        cols = n // rows
        xs = (np.arange(rows) - (rows - 1) / 2.0) * spacing_m
        ys = (np.arange(cols) - (cols - 1) / 2.0) * spacing_m
        return [
            Vec3(center.x + float(x), center.y + float(y), center.z)
            for x in xs
            for y in ys
        ]
    raise ConfigError(f"unknown baseline geometry {kind!r} (expected 'laa' or 'raa')")
