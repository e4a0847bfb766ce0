"""Run orchestration: execute one configured run, export CSVs, compare runs.

Output layout (all under the run's output directory):

* ``front.csv``    — archive objectives and genomes, one solution per row,
  sorted by (f1, f2, f3) so identical archives serialize identically.
* ``progress.csv`` — per-iteration archive statistics.
* ``paths.csv``    — per-UAV waypoints of every front solution.
* ``pattern.csv``  — optional full-sphere beam pattern of the best-f1 row.
* ``manifest.json``— hashes, seed, version, wall time, evaluation count,
  output list; written last, so its presence marks a complete run.

All files are written atomically (temp + rename), end with a newline, use
'.' decimals, and have a fixed column order; floats are serialized with
``repr`` so re-runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import front_metrics, pattern_grid, reference_point
from .config import RunConfig, config_hash, scenario_hash
from .emcore import steered_array
from .errors import ConfigError
from .moea import (
    Genome,
    emoalo_run,
    imodaom_run,
    make_problem,
    mopso_run,
    random_search_run,
)
from .scenarios import RelaySolution, TwoWaySolution

_OPTIMIZER_RUNNERS = {
    "imodaom": imodaom_run,
    "emoalo": emoalo_run,
    "mopso": mopso_run,
    "random": random_search_run,
}


@dataclass(frozen=True)
class RunManifest:
    """Provenance record of one completed run."""

    config_hash: str
    scenario_hash: str
    algorithm: str
    seed: int | None
    version: str
    wall_time_s: float
    evaluation_count: int
    outputs: tuple[str, ...]
    output_dir: str
    config: dict

    def to_dict(self) -> dict:
        return {
            "config_hash": self.config_hash,
            "scenario_hash": self.scenario_hash,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "version": self.version,
            "wall_time_s": self.wall_time_s,
            "evaluation_count": self.evaluation_count,
            "outputs": list(self.outputs),
            "config": self.config,
        }


class _CountingProblem:
    """Forwards to the real problem while counting objective evaluations."""

    def __init__(self, inner):
        self.inner = inner
        self.schema = inner.schema
        self.calls = 0

    def evaluate(self, genome):
        self.calls += 1
        return self.inner.evaluate(genome)

    def initial_genome(self):
        return self.inner.initial_genome()


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_atomic(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _genome_header(genome: Genome) -> list[str]:
    cols = [f"c{i}" for i in range(genome.continuous.size)]
    cols += [f"i{i}" for i in range(genome.integers.size)]
    if genome.permutation is not None:
        cols += [f"p{i}" for i in range(genome.permutation.size)]
    return cols


def _genome_row(genome: Genome) -> list:
    row = [float(v) for v in genome.continuous]
    row += [int(v) for v in genome.integers]
    if genome.permutation is not None:
        row += [int(v) for v in genome.permutation]
    return row


def genome_from_row(schema, values: list[float]) -> Genome:
    """Rebuild a genome from the numeric tail of a front.csv row."""
    n_c = schema.n_continuous
    n_i = schema.n_integers
    n_p = schema.permutation_size
    if len(values) != n_c + n_i + n_p:
        raise ConfigError(
            f"front row has {len(values)} genome values, expected {n_c + n_i + n_p}"
        )
    cont = np.array(values[:n_c], dtype=float)
    ints = np.array([int(round(v)) for v in values[n_c : n_c + n_i]], dtype=np.int64)
    perm = None
    if n_p:
        perm = np.array([int(round(v)) for v in values[n_c + n_i :]], dtype=np.int64)
    return Genome(cont, ints, perm)


def _sorted_front(archive):
    members = list(archive.members())
    members.sort(key=lambda m: (m.objectives, m.genome.flat()))
    return members


def _waypoint_rows(scenario, solution, solution_idx: int):
    """paths.csv rows: solution, swarm, uav, waypoint, x, y, z."""
    rows = []
    if isinstance(solution, RelaySolution):
        legs = [scenario.swarm_initial] + [
            solution.legs[c].positions for c in solution.route
        ]
        for u in range(len(scenario.swarm_initial)):
            for w, leg in enumerate(legs):
                p = leg[u]
                rows.append([solution_idx, "a", u, w, p.x, p.y, p.z])
    elif isinstance(solution, TwoWaySolution):
        for name, initial, cfg in (
            ("a", scenario.swarm_a_initial, solution.config_a),
            ("b", scenario.swarm_b_initial, solution.config_b),
        ):
            for u in range(len(initial)):
                for w, leg in enumerate((initial, cfg.positions)):
                    p = leg[u]
                    rows.append([solution_idx, name, u, w, p.x, p.y, p.z])
    else:  # pragma: no cover - guarded by config validation
        raise ConfigError(f"unknown solution type {type(solution).__name__}")
    return rows


def solution_array(scenario, solution):
    """The steered virtual array a front row describes (first hop / swarm A)."""
    ch = scenario.channel
    if isinstance(solution, RelaySolution):
        first = solution.route[0]
        cfg = solution.legs[first]
        cluster = scenario.clusters[first]
        target = cluster.terminals[solution.receiver_choice[first]].position
        return steered_array(cfg.positions, cfg.weights, target, ch.carrier_hz)
    target = solution.config_b.positions[solution.receiver_a]
    return steered_array(
        solution.config_a.positions, solution.config_a.weights, target, ch.carrier_hz
    )


def _pattern_text(scenario, solution, grid_deg: float) -> str:
    arr = solution_array(scenario, solution)
    rows = pattern_grid(arr, scenario.channel.carrier_hz, grid_deg)
    return _csv_text(["theta_deg", "phi_deg", "db"], rows.tolist())


def run(config: RunConfig) -> RunManifest:
    """Execute one run and write its outputs; the manifest lands last."""
    started = time.perf_counter()
    problem = _CountingProblem(make_problem(config.scenario, **config.problem_kwargs()))
    progress_rows = []

    if config.algorithm in _OPTIMIZER_RUNNERS:
        runner = _OPTIMIZER_RUNNERS[config.algorithm]
        archive = runner(problem, config.optimizer, progress=progress_rows.append)
        members = _sorted_front(archive)
        fronts = [(m.objectives, m.genome) for m in members]
    else:
        genome = problem.inner.baseline_genome(
            config.algorithm, config.baseline_spacing_m
        )
        objectives = tuple(problem.evaluate(genome))
        fronts = [(objectives, genome)]
        progress_rows.append(_baseline_progress(objectives))

    out_dir = config.output_dir
    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []
    try:
        front_header = ["f1", "f2", "f3"] + _genome_header(fronts[0][1])
        front_rows = [list(obj) + _genome_row(g) for obj, g in fronts]
        _write_file(out_dir, "front.csv", _csv_text(front_header, front_rows), written)

        prog_header = [
            "iteration", "archive_size", "best_f1", "best_f2", "best_f3", "hypervolume",
        ]
        prog_rows = [
            [r.iteration, r.archive_size, r.best_f1, r.best_f2, r.best_f3, r.hypervolume]
            for r in progress_rows
        ]
        _write_file(out_dir, "progress.csv", _csv_text(prog_header, prog_rows), written)

        path_rows = []
        for idx, (_, genome) in enumerate(fronts):
            solution = problem.inner.decode(genome)
            path_rows.extend(_waypoint_rows(config.scenario, solution, idx))
        _write_file(
            out_dir,
            "paths.csv",
            _csv_text(["solution", "swarm", "uav", "waypoint", "x", "y", "z"], path_rows),
            written,
        )

        if config.write_pattern:
            best = problem.inner.decode(fronts[0][1])
            _write_file(
                out_dir,
                "pattern.csv",
                _pattern_text(config.scenario, best, config.pattern_grid_deg),
                written,
            )

        manifest = RunManifest(
            config_hash=config_hash(config),
            scenario_hash=scenario_hash(config.scenario),
            algorithm=config.algorithm,
            seed=config.seed,
            version=__version__,
            wall_time_s=time.perf_counter() - started,
            evaluation_count=problem.calls,
            outputs=tuple(written),
            output_dir=out_dir,
            config=config.normalized,
        )
        _write_atomic(
            os.path.join(out_dir, "manifest.json"),
            json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n",
        )
        return manifest
    except BaseException:
        for name in written:
            try:
                os.remove(os.path.join(out_dir, name))
            except OSError:
                pass
        raise


def _baseline_progress(objectives):
    from .analysis import archive_hypervolume
    from .moea import ProgressRecord

    return ProgressRecord(
        iteration=0,
        archive_size=1,
        best_f1=objectives[0],
        best_f2=objectives[1],
        best_f3=objectives[2],
        hypervolume=archive_hypervolume(np.array([objectives])),
    )


def _write_file(out_dir: str, name: str, text: str, written: list[str]):
    _write_atomic(os.path.join(out_dir, name), text)
    written.append(name)


def write_pattern_for_row(
    config: RunConfig, row_index: int = 0, out_path: str | None = None
) -> str:
    """Export the beam pattern of one front.csv row of a completed run.

    Reads the run's front.csv, rebuilds the selected row's genome, decodes
    it, and writes the full-sphere pattern CSV; returns the written path.
    """
    front_path = os.path.join(config.output_dir, "front.csv")
    try:
        with open(front_path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = list(reader)
    except OSError as exc:
        raise ConfigError(
            f"cannot read {front_path!r} (run the config first): {exc}"
        ) from exc
    if header[:3] != ["f1", "f2", "f3"]:
        raise ConfigError(f"{front_path!r} does not start with f1,f2,f3 columns")
    if not (0 <= row_index < len(rows)):
        raise ConfigError(
            f"front row {row_index} out of range; {front_path!r} has {len(rows)} rows"
        )
    problem = make_problem(config.scenario, **config.problem_kwargs())
    values = [float(v) for v in rows[row_index][3:]]
    solution = problem.decode(genome_from_row(problem.schema, values))
    text = _pattern_text(config.scenario, solution, config.pattern_grid_deg)
    if out_path is None:
        out_path = os.path.join(config.output_dir, "pattern.csv")
    _write_atomic(out_path, text)
    return out_path


# ------------------------------------------------------------------ compare


def load_manifest(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path!r} is not valid JSON: {exc}") from exc


def _front_objectives(front_path: str) -> np.ndarray:
    with open(front_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:3] != ["f1", "f2", "f3"]:
            raise ConfigError(f"{front_path!r} does not start with f1,f2,f3 columns")
        rows = [[float(r[0]), float(r[1]), float(r[2])] for r in reader]
    if not rows:
        raise ConfigError(f"{front_path!r} holds no solutions")
    return np.array(rows)


def compare(manifest_paths: list[str]) -> list[dict]:
    """Front quality of several runs of one scenario on a shared reference.

    Returns one row per run with hypervolume (normalized), spread, and
    cardinality; the reference point is pushed out from the pooled worst.
    """
    if len(manifest_paths) < 2:
        raise ConfigError("compare needs at least two manifests")
    manifests = [load_manifest(p) for p in manifest_paths]
    hashes = {m.get("scenario_hash") for m in manifests}
    if len(hashes) != 1:
        raise ConfigError(
            "manifests describe different scenarios; comparison is undefined"
        )
    fronts = []
    for path, m in zip(manifest_paths, manifests):
        front_path = os.path.join(os.path.dirname(path), "front.csv")
        fronts.append(_front_objectives(front_path))
    pooled = np.vstack(fronts)
    reference = reference_point(pooled)
    box = float(np.prod(reference - pooled.min(axis=0)))
    rows = []
    for path, m, front in zip(manifest_paths, manifests, fronts):
        metrics = front_metrics(front, reference)
        rows.append(
            {
                "run": os.path.basename(os.path.dirname(path)) or path,
                "algorithm": m.get("algorithm", "?"),
                "seed": m.get("seed"),
                "hypervolume": metrics.hypervolume / box if box > 0 else 0.0,
                "spread": metrics.spread,
                "cardinality": metrics.cardinality,
            }
        )
    return rows


def comparison_csv(manifest_paths: list[str]) -> str:
    rows = compare(manifest_paths)
    header = ["run", "algorithm", "seed", "hypervolume", "spread", "cardinality"]
    return _csv_text(
        header,
        [
            [
                r["run"],
                r["algorithm"],
                "" if r["seed"] is None else r["seed"],
                r["hypervolume"],
                r["spread"],
                r["cardinality"],
            ]
            for r in rows
        ],
    )
