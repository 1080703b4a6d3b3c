"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 input/output error,
3 computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .centrality import INDICATORS
from .config import DatasetEntry, ExperimentConfig, load_config
from .errors import ConfigError, EmptyGraphError, ParseError
from .experiments import (
    StageError,
    Study,
    cmd_centrality,
    cmd_evaluate,
    cmd_reproduce,
    cmd_spread,
    cmd_stats,
)

EXIT_CONFIG, EXIT_IO, EXIT_COMPUTE = 1, 2, 3

COMMANDS = {
    "stats": (cmd_stats, "network summary statistics table"),
    "centrality": (cmd_centrality, "per-network indicator scores and ranks"),
    "evaluate": (cmd_evaluate, "correlation, overlap, individuation, dispersion, similarity, cost"),
    "spread": (cmd_spread, "weighted SIR spreading sweeps"),
    "reproduce": (cmd_reproduce, "run every stage and write a manifest"),
}


def _common() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON or YAML experiment file")
    p.add_argument("--out-dir", default=S, help="output directory")
    p.add_argument("--seed", type=int, default=S, help="master RNG seed")
    p.add_argument("--threads", type=int, default=S, help="worker threads for spreading runs")
    p.add_argument("--runs", type=int, default=S, help="repetitions per spreading cell")
    p.add_argument("--tau-variant", choices=["paper", "tie-corrected"], default=S)
    p.add_argument("--cost-binning", choices=["sqrt-n", "exact"], default=S)
    p.add_argument("--sir-variant", choices=["linear-clamped", "complement"], default=S)
    p.add_argument("--indicators", default=S, help="comma-separated indicator subset")
    p.add_argument("--dataset", action="append", default=S, metavar="NAME=PATH",
                   help="add a dataset (repeatable)")
    p.add_argument("--dump-runs", action="store_true", default=S,
                   help="also write per-run outbreak sizes")
    p.add_argument("-v", "--verbose", action="store_true", default=S)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="wcycle", parents=[common],
                                     description="Weighted-network influence analysis")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else ExperimentConfig()
    extra = []
    for spec in getattr(args, "dataset", None) or []:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise ConfigError(f"--dataset expects NAME=PATH, got {spec!r}")
        extra.append(DatasetEntry(name, path))
    indicators = getattr(args, "indicators", None)
    return cfg.with_overrides(
        datasets=cfg.datasets + tuple(extra) if extra else None,
        out_dir=getattr(args, "out_dir", None),
        seed=getattr(args, "seed", None),
        threads=getattr(args, "threads", None),
        runs=getattr(args, "runs", None),
        tau_variant=getattr(args, "tau_variant", None),
        cost_binning=getattr(args, "cost_binning", None),
        sir_variant=getattr(args, "sir_variant", None),
        indicators=tuple(x.strip() for x in indicators.split(",") if x.strip()) if indicators else None,
        dump_runs=getattr(args, "dump_runs", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config_from_args(args)
        unknown = [k for k in config.indicators if k not in INDICATORS]
        if unknown:
            raise ConfigError(f"unknown indicator(s): {', '.join(unknown)}")
    except (ConfigError, ValueError) as exc:
        print(f"wcycle: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"wcycle: {exc}", file=sys.stderr)
        return EXIT_IO
    fn, _ = COMMANDS[args.command]
    study = Study(config)
    try:
        fn(study)
    except StageError as exc:
        print(f"wcycle: {exc}", file=sys.stderr)
        if isinstance(exc.cause, (OSError, ParseError, EmptyGraphError)):
            return EXIT_IO
        return EXIT_COMPUTE
    except (OSError, ParseError, EmptyGraphError) as exc:
        print(f"wcycle: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"wcycle: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return 0


if __name__ == "__main__":
    sys.exit(main())
