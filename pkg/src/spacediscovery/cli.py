"""Command-line entry point: ``python -m spacediscovery <command> ...``."""
import argparse
import json
import logging
import sys
from pathlib import Path

from .config import ExperimentConfig, merge
from .errors import ConfigError, CorruptArtifact, MissingArtifact, MissingStage
from .pipeline import STAGES, load_config, run_pipeline
from .plots import PLOTS, emit_plots

EXIT_OK, EXIT_CONFIG, EXIT_MISSING = 0, 2, 3


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", type=Path, default=Path("run"), help="run directory")
    common.add_argument("--grid-n", type=int, help="grid positions per side")
    common.add_argument("--dim", type=int, choices=(2, 3), help="restrict embeddings to one dimension")
    common.add_argument("--workers", type=int, default=1, help="worker processes (0 = all cores)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="spacediscovery", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in STAGES:
        sub.add_parser(name, parents=[common], help=f"run the {name} stage")
    run = sub.add_parser("run", parents=[common], help="run several stages (all by default)")
    run.add_argument("--stages", default=",".join(STAGES), help="comma-separated stage list")
    plot = sub.add_parser("plot", parents=[common], help="write SVG figures for a run")
    plot.add_argument("--which", default=",".join(PLOTS), help="comma-separated plot list")
    return p


def effective_config(args):
    """Defaults < run snapshot < config file < command-line flags."""
    snapshot = Path(args.out) / "config.json"
    cfg = load_config(args.out) if snapshot.exists() else ExperimentConfig()
    if args.config is not None:
        try:
            cfg = ExperimentConfig.from_json(Path(args.config).read_text())
        except OSError as e:
            raise ConfigError(f"cannot read config file: {e}") from e
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.grid_n is not None:
        overrides["grid.n"] = args.grid_n
    if args.dim is not None:
        overrides["dims"] = [args.dim]
    return merge(cfg, overrides).validate()


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    workers = None if args.workers == 0 else args.workers
    try:
        if args.command == "plot":
            files = emit_plots(args.out, [w for w in args.which.split(",") if w])
            for f in files:
                print(f)
            return EXIT_OK
        cfg = effective_config(args)
        stages = [s for s in args.stages.split(",") if s] if args.command == "run" else [args.command]
        summary = run_pipeline(cfg, args.out, stages, workers)
        print(json.dumps(summary, indent=1, sort_keys=True))
        return EXIT_OK
    except (ConfigError, ValueError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissingStage, MissingArtifact, CorruptArtifact) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_MISSING


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
