"""Command line entry point: ``podsurge <subcommand> --config <path> [--out <dir>] [--seed <n>]``."""

import argparse
import sys

from ..errors import ArtifactError, ConfigError, PodsurgeError, TrainingError
from .config import load_config
from .experiments import NETWORKS_BY_KIND, Run

SUBCOMMANDS = {
    "generate": "synthesize snapshot CSVs",
    "plan": "write the Taguchi case-plan CSV",
    "pod": "compute and write the POD basis",
    "train": "train the experiment's networks (model JSON + loss CSV)",
    "predict": "write forecast / prediction CSVs",
    "evaluate": "write the evaluation report JSON",
    "report": "write plot-ready CSVs under plots/",
}

EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_ARTIFACT = 4
EXIT_IO = 5
EXIT_NUMERIC = 6


def build_parser():
    parser = argparse.ArgumentParser(prog="podsurge", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    for name, help_text in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="experiment JSON config")
        p.add_argument("--out", default=None, help="run directory (defaults to the config's output_dir)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
    return parser


def _fail(prefix, message, code):
    print(f"podsurge: {prefix}: {message}", file=sys.stderr)
    return code


def _execute(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        if args.seed < 0 or args.seed >= 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        cfg = cfg.with_overrides(seed=args.seed)
    out = args.out or cfg.output_dir
    run = Run(cfg, out_dir=out, strict=True)
    kind = cfg.kind
    nets = NETWORKS_BY_KIND[kind]
    cmd = args.command
    if cmd == "plan":
        run.produce("plan")
        return [run.path("plan.csv")]
    if cmd == "generate":
        if kind == "fft-mlp":
            run.produce("plan")
            run.produce("cycles")
            return [run.path("plan.csv"), run.path("cycles")]
        run.produce("snapshots")
        return [run.path("snapshots.csv")]
    if cmd == "pod":
        if kind == "fft-mlp":
            raise ConfigError("pod needs a random-multi experiment (avg-forecast or pod-lstm)")
        run.produce("basis")
        return [run.path("pod_basis.json")]
    if cmd == "train":
        for net in nets:
            run.produce(f"train:{net}")
        return [run.path(f"{net}_model.json") for net in nets]
    if cmd == "predict":
        for net in nets:
            run.produce(f"forecast:{net}")
        return [run.path(f"forecast_{net}.csv") for net in nets]
    if cmd == "evaluate":
        for net in nets:
            run.get(f"train:{net}")
            run.get(f"forecast:{net}")
        run.produce("report")
        return [run.path("report.json")]
    if cmd == "report":
        return run.write_plot_tables()
    raise AssertionError(cmd)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else EXIT_USAGE
    if argv[0] not in SUBCOMMANDS:
        return _fail("unknown subcommand", f"{argv[0]!r} (expected one of {', '.join(SUBCOMMANDS)})", EXIT_USAGE)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        written = _execute(args)
    except ConfigError as exc:
        return _fail("invalid config", str(exc), EXIT_CONFIG)
    except ArtifactError as exc:
        msg = str(exc)
        if msg.startswith("missing artifact: "):
            msg = msg[len("missing artifact: "):]
        return _fail("missing artifact", msg, EXIT_ARTIFACT)
    except TrainingError as exc:
        return _fail("training failed", str(exc), EXIT_NUMERIC)
    except PodsurgeError as exc:
        return _fail("numerical error", str(exc), EXIT_NUMERIC)
    except OSError as exc:
        return _fail("io error", str(exc), EXIT_IO)
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
