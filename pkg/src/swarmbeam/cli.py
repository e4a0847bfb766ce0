"""Command-line surface.

::

    swarmbeam run <config-or-preset> [--seed N] [--algorithm NAME] [--out DIR]
    swarmbeam compare <manifest.json> <manifest.json>... [--out FILE]
    swarmbeam pattern <config-or-preset> [--solution ROW] [--out FILE]
    swarmbeam practicality --cipher NAME [--opt-time SECONDS]

``run`` accepts a JSON config path or a shipped preset name (relay_default,
twoway_default). Relative output directories resolve under $SWARMBEAM_OUT
when that variable is set. Exit codes: 0 success, 2 configuration error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import __version__
from .analysis import PracticalityInputs, practicality_crossover_bytes
from .config import RunConfig, config_from_dict, resolve_config_data
from .errors import ConfigError, SwarmbeamError
from .runner import comparison_csv, run, write_pattern_for_row

OUTPUT_ROOT_ENV = "SWARMBEAM_OUT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmbeam",
        description="UAV-swarm collaborative beamforming security simulator",
    )
    parser.add_argument("--version", action="version", version=f"swarmbeam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one optimization or baseline run")
    p_run.add_argument("config", help="JSON config path or shipped preset name")
    p_run.add_argument("--seed", type=int, help="override the config's seed")
    p_run.add_argument("--algorithm", help="override the config's algorithm")
    p_run.add_argument("--out", help="override the output directory")

    p_cmp = sub.add_parser("compare", help="score several runs of one scenario")
    p_cmp.add_argument("manifests", nargs="+", help="manifest.json paths (>= 2)")
    p_cmp.add_argument("--out", help="write the CSV here instead of stdout")

    p_pat = sub.add_parser("pattern", help="export a front solution's beam pattern")
    p_pat.add_argument("config", help="JSON config path or shipped preset name")
    p_pat.add_argument("--solution", type=int, default=0, help="front.csv row (default 0)")
    p_pat.add_argument("--seed", type=int, help="override the config's seed")
    p_pat.add_argument("--out", help="output CSV path (default <run dir>/pattern.csv)")

    p_pra = sub.add_parser(
        "practicality", help="payload size where optimizing beats encrypting"
    )
    p_pra.add_argument("--cipher", required=True, help="DES, AES, or RSA")
    p_pra.add_argument(
        "--opt-time", type=float, default=None, help="optimization wall time, seconds"
    )
    return parser


def _resolved_config(args) -> RunConfig:
    data, label = resolve_config_data(args.config)
    if getattr(args, "seed", None) is not None:
        data["seed"] = args.seed
    if getattr(args, "algorithm", None):
        data["algorithm"] = args.algorithm
    if getattr(args, "out", None) and args.command == "run":
        data.setdefault("output", {})["directory"] = args.out
    config = config_from_dict(data, label=label)
    root = os.environ.get(OUTPUT_ROOT_ENV)
    if root and not os.path.isabs(config.output_dir):
        config = dataclasses.replace(
            config, output_dir=os.path.join(root, config.output_dir)
        )
    return config


def _cmd_run(args) -> int:
    config = _resolved_config(args)
    manifest = run(config)
    print(f"run complete: {manifest.output_dir}")
    print(
        f"  algorithm={manifest.algorithm} seed={manifest.seed} "
        f"evaluations={manifest.evaluation_count} wall={manifest.wall_time_s:.1f}s"
    )
    for name in manifest.outputs:
        print(f"  {os.path.join(manifest.output_dir, name)}")
    return 0


def _cmd_compare(args) -> int:
    text = comparison_csv(args.manifests)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_pattern(args) -> int:
    config = _resolved_config(args)
    path = write_pattern_for_row(config, args.solution, args.out)
    print(f"wrote {path}")
    return 0


def _cmd_practicality(args) -> int:
    inputs = (
        PracticalityInputs()
        if args.opt_time is None
        else PracticalityInputs(optimization_time_s=args.opt_time)
    )
    crossover = practicality_crossover_bytes(inputs, args.cipher)
    print(
        f"{args.cipher.upper()} crossover: {crossover!r} bytes "
        f"({crossover / 1e6:.2f} MB) at {inputs.optimization_time_s} s optimization"
    )
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "compare": _cmd_compare,
    "pattern": _cmd_pattern,
    "practicality": _cmd_practicality,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SwarmbeamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
