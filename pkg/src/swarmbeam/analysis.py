"""Front quality metrics and cost-model utilities."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .emcore import VirtualArray, array_factor, wavenumber, _response, _scan_units, PATTERN_FLOOR_DB
from .errors import ConfigError, DegenerateArrayError, DomainError
from .moea.pareto import nondominated_indices


def _hv2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact 2-d hypervolume of mutually checked points strictly inside ref."""
    if points.shape[0] == 0:
        return 0.0
    keep = nondominated_indices(points.tolist())
    pts = points[keep]
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    total = 0.0
    prev_f2 = ref[1]
    for x1, x2 in pts:
        total += (ref[0] - x1) * (prev_f2 - x2)
        prev_f2 = x2
    return total


def hypervolume(
    front: Sequence[Sequence[float]],
    reference: Sequence[float],
    normalize: bool = False,
) -> float:
    """Exact hypervolume of a front against a reference point (1 to 3 objectives).

    Computed by recursive slicing along the last objective. Points that do
    not strictly dominate the reference are excluded with a warning; with
    ``normalize`` the result is divided by the volume of the box spanned by
    the reference and the included points' ideal corner.
    """
    ref = np.asarray(reference, dtype=float)
    if ref.ndim != 1 or not (1 <= ref.size <= 3):
        raise ConfigError(f"reference must have 1 to 3 components, got shape {ref.shape}")
    pts = np.asarray(list(front), dtype=float)
    if pts.size == 0:
        return 0.0
    if pts.ndim != 2 or pts.shape[1] != ref.size:
        raise ConfigError("front points and reference dimensions differ")
    inside = np.all(pts < ref, axis=1)
    dropped = int((~inside).sum())
    if dropped:
        warnings.warn(
            f"hypervolume: excluded {dropped} point(s) that do not dominate the reference",
            stacklevel=2,
        )
    pts = pts[inside]
    if pts.shape[0] == 0:
        return 0.0

    d = ref.size
    if d == 1:
        hv = float(ref[0] - pts.min())
    elif d == 2:
        hv = _hv2d(pts, ref)
    else:
        keep = nondominated_indices(pts.tolist())
        nd = pts[keep]
        zs = np.unique(nd[:, 2])
        edges = np.append(zs, ref[2])
        hv = 0.0
        for k, z in enumerate(zs):
            active = nd[nd[:, 2] <= z][:, :2]
            hv += _hv2d(active, ref[:2]) * (edges[k + 1] - edges[k])

    if normalize:
        box = float(np.prod(ref - pts.min(axis=0)))
        hv = hv / box if box > 0 else 0.0
    return float(hv)


def spread(front: Sequence[Sequence[float]]) -> float:
    """Gap uniformity of a front: mean absolute deviation of nearest-neighbor
    distances over the front's normalized bounding box (lower is more even).

    Needs at least two points; a two-point front has no gap variation and
    scores 0 by convention.
    """
    pts = np.asarray(list(front), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ConfigError("spread needs a front of at least 2 objective vectors")
    if pts.shape[0] == 2:
        return 0.0
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    span[span == 0.0] = 1.0
    norm = (pts - lo) / span
    diff = norm[:, None, :] - norm[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    np.fill_diagonal(dist, np.inf)
    nn = dist.min(axis=1)
    return float(np.abs(nn - nn.mean()).mean())


def reference_point(objectives: np.ndarray, margin: float = 0.1) -> np.ndarray:
    """Reference dominated by every point: componentwise worst pushed out by
    ``margin`` of its magnitude (at least one unit), sign-aware."""
    objs = np.asarray(objectives, dtype=float)
    worst = objs.max(axis=0)
    return worst + margin * np.maximum(np.abs(worst), 1.0)


def archive_hypervolume(objectives: np.ndarray) -> float:
    """Normalized self-referenced hypervolume used for progress reporting."""
    objs = np.asarray(objectives, dtype=float)
    if objs.size == 0:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return hypervolume(objs, reference_point(objs), normalize=True)


@dataclass(frozen=True)
class FrontMetrics:
    hypervolume: float
    spread: float
    cardinality: int


def front_metrics(front: Sequence[Sequence[float]], reference: Sequence[float]) -> FrontMetrics:
    """Bundle of comparison metrics for one front against a shared reference.

    Single-point fronts (fixed-geometry baselines) get spread 0 rather than
    the error the bare spread op raises.
    """
    pts = list(front)
    gap = spread(pts) if len(pts) >= 2 else 0.0
    return FrontMetrics(hypervolume(pts, reference), spread=gap, cardinality=len(pts))


# -------------------------------------------------------------- practicality

DEFAULT_OPTIMIZATION_TIME_S = 40.0
"""Wall time of one full deployment optimization on desk hardware, seconds."""

DEFAULT_CIPHER_SECONDS_PER_200MB = {
    "DES": 12.07,
    "AES": 9.29,
    "RSA": 1567.59,
}
"""Measured encryption wall time per 200 MB payload, seconds."""

_CIPHER_REFERENCE_BYTES = 200e6


@dataclass(frozen=True)
class PracticalityInputs:
    """Cost model comparing one-off optimization against streaming encryption."""

    optimization_time_s: float = DEFAULT_OPTIMIZATION_TIME_S
    cipher_seconds_per_200mb: dict = field(
        default_factory=lambda: dict(DEFAULT_CIPHER_SECONDS_PER_200MB)
    )

    def __post_init__(self):
        if not self.optimization_time_s > 0:
            raise DomainError("optimization_time_s must be positive")
        for name, t in self.cipher_seconds_per_200mb.items():
            if not t > 0:
                raise DomainError(f"cipher time for {name!r} must be positive")


def practicality_crossover_bytes(inputs: PracticalityInputs, cipher: str) -> float:
    """Payload size at which one-off optimization and encryption cost the same.

    Below the crossover the cipher is cheaper; above it the physical-layer
    deployment wins because its cost does not grow with the payload.
    """
    key = cipher.upper()
    if key not in {k.upper() for k in inputs.cipher_seconds_per_200mb}:
        known = ", ".join(sorted(inputs.cipher_seconds_per_200mb))
        raise ConfigError(f"unknown cipher {cipher!r} (known: {known})")
    t_cipher = next(
        t for k, t in inputs.cipher_seconds_per_200mb.items() if k.upper() == key
    )
    return _CIPHER_REFERENCE_BYTES * inputs.optimization_time_s / t_cipher


# -------------------------------------------------------------- pattern grid


def pattern_grid(array: VirtualArray, carrier_hz: float, grid_deg: float = 1.0) -> np.ndarray:
    """Full-sphere normalized pattern as rows (theta_deg, phi_deg, value_db).

    Theta runs 0..180 inclusive and phi 0..360 exclusive at ``grid_deg``
    spacing, theta-major, giving (180/g + 1) * (360/g) rows on divisor grids.
    """
    if not grid_deg > 0:
        raise ConfigError(f"grid must be positive, got {grid_deg!r}")
    ref = abs(array_factor(array, array.steering, carrier_hz))
    if ref == 0.0:
        raise DegenerateArrayError("steered response is zero; pattern undefined")
    units = _scan_units(float(grid_deg))
    rel = array.positions_matrix() - array.centroid()
    mags = np.abs(
        _response(
            rel,
            array.weights_vector(),
            array.phases_vector(),
            units,
            wavenumber(carrier_hz),
        )
    )
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mags / ref)
    db = np.maximum(db, PATTERN_FLOOR_DB)
    n_theta = int(math.floor(180.0 / grid_deg + 1e-9)) + 1
    n_phi = int(math.floor(360.0 / grid_deg - 1e-9)) + 1
    thetas = np.repeat(np.arange(n_theta) * grid_deg, n_phi)
    phis = np.tile(np.arange(n_phi) * grid_deg, n_theta)
    return np.column_stack([thetas, phis, db])
