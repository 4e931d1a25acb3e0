"""Command-line entry point: bpskit {sample, estimate, diagnose, transform-check}.

Reports go to stdout as JSON; logs and human-readable tables go to stderr.
Exit codes: 0 success, 2 invalid configuration, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from concurrent.futures.process import BrokenProcessPool
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError
from rich.console import Console
from rich.table import Table

from bpskit.exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    NumericalError,
    TrajectoryError,
    UnsupportedCapabilityError,
)
from bpskit.logging import JsonLoggingService, LoggingService

from .commands import cmd_diagnose, cmd_estimate, cmd_sample, cmd_transform_check
from .run_models import (
    DiagnoseConfig,
    DiagnoseResult,
    EstimateRunReport,
    RunConfig,
    TransformCheckConfig,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

ModelT = TypeVar("ModelT", bound=BaseModel)
_RAW_CONFIG = TypeAdapter(dict[str, Any])


def load_config(path: Path, model: type[ModelT], overrides: dict[str, Any] | None = None) -> ModelT:
    """Read a JSON config file and validate it once, with command-line overrides applied."""
    text = path.read_text(encoding="utf-8")
    updates = {k: v for k, v in (overrides or {}).items() if v is not None}
    if not updates:
        return model.model_validate_json(text)
    return model.model_validate({**_RAW_CONFIG.validate_json(text), **updates})


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpskit", description="Bouncy Particle Sampler toolkit")
    parser.add_argument("--log-level", help="Override $BPSKIT_LOG")
    parser.add_argument("--json-logs", action="store_true", help="Emit logs as JSON records")
    sub = parser.add_subparsers(dest="command", required=True)

    sample = sub.add_parser("sample", help="Simulate chains and write trajectories")
    sample.add_argument("--config", type=Path, required=True, help="RunConfig JSON file")
    sample.add_argument("--seed", type=int, help="Override the master seed")
    sample.add_argument("--threads", type=int, help="Override the worker count")
    sample.add_argument("--out", type=Path, help="Override the output directory")
    sample.add_argument(
        "--force",
        action="store_true",
        help="Allow a transform on a target that is not thick-tailed",
    )

    estimate = sub.add_parser("estimate", help="Estimate expectations from trajectory files")
    estimate.add_argument("paths", type=Path, nargs="+", help="Trajectory files or run dirs")
    estimate.add_argument(
        "--functions",
        default="1",
        help="Comma-separated test functions, e.g. 'x1,x1^2,x1*x2,r2'",
    )
    estimate.add_argument("--out", type=Path, help="Also write the report to this file")

    diagnose = sub.add_parser("diagnose", help="Verify drift and classify the tail regime")
    diagnose.add_argument("--config", type=Path, required=True, help="DiagnoseConfig JSON file")
    diagnose.add_argument("--threads", type=int, help="Override grid.threads")

    check = sub.add_parser("transform-check", help="Self-check a transform on a target")
    check.add_argument("--config", type=Path, required=True, help="TransformCheckConfig JSON")
    check.add_argument("--seed", type=int, help="Override the check seed")
    return parser


def _drift_table(result: DiagnoseResult) -> Table:
    drift = result.drift
    table = Table(title=f"Drift on {drift.family} (d={drift.dimension}): {drift.verdict}")
    table.add_column("radius", justify="right")
    table.add_column("sup ratio (shell)", justify="right")
    table.add_column("sup ratio (>= radius)", justify="right")
    for shell, candidate in zip(drift.shells, drift.candidates, strict=True):
        table.add_row(f"{shell.radius:g}", f"{shell.sup_ratio:.4g}", f"{candidate.sup_ratio:.4g}")
    table.caption = f"regime: {result.regime.regime}, K = {drift.radius_k}"
    return table


def _estimate_table(report: EstimateRunReport) -> Table:
    table = Table(title=f"Estimates over {report.chains} chain(s), T = {report.duration:g}")
    for column in ("function", "path", "std err", "ESS", "jump chain"):
        table.add_column(column, justify="right")
    for item in report.estimates:
        table.add_row(
            item.function,
            f"{item.path.estimate:.6g}",
            f"{item.path.standard_error:.3g}",
            f"{item.path.ess:.0f}",
            f"{item.jump_chain:.6g}",
        )
    return table


def _run(args: argparse.Namespace, logger: LoggingService, console: Console) -> BaseModel:
    if args.command == "sample":
        overrides = {
            "seed": args.seed,
            "threads": args.threads,
            "output_dir": args.out,
            "force": args.force or None,
        }
        return cmd_sample(load_config(args.config, RunConfig, overrides), logger)

    if args.command == "estimate":
        functions = [f.strip() for f in args.functions.split(",") if f.strip()]
        report = cmd_estimate(args.paths, functions, logger)
        console.print(_estimate_table(report))
        if args.out is not None:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return report

    if args.command == "diagnose":
        config = load_config(args.config, DiagnoseConfig)
        if args.threads is not None:
            grid = {**config.grid.model_dump(), "threads": args.threads}
            config = DiagnoseConfig.model_validate({**config.model_dump(), "grid": grid})
        result = cmd_diagnose(config, logger)
        console.print(_drift_table(result))
        return result

    config = load_config(args.config, TransformCheckConfig, {"seed": args.seed})
    return cmd_transform_check(config, logger)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    args = _build_parser().parse_args(argv)
    console = Console(stderr=True)
    logger: LoggingService = (
        JsonLoggingService(console, level=args.log_level)
        if args.json_logs
        else LoggingService(level=args.log_level)
    )

    try:
        result = _run(args, logger, console)
    except (ValidationError, ConfigurationError, DimensionMismatchError) as e:
        logger.error("Invalid configuration", command=args.command, error=str(e))
        return EXIT_CONFIG
    except UnsupportedCapabilityError as e:
        logger.error("Unsupported capability", command=args.command, error=str(e))
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(
            "Numerical failure", command=args.command, operation=e.operation, **e.context
        )
        return EXIT_NUMERICAL
    except (OSError, TrajectoryError) as e:
        logger.error("I/O failure", command=args.command, error=str(e))
        return EXIT_IO
    except BrokenProcessPool as e:
        logger.error("Worker process died", command=args.command, error=str(e))
        return EXIT_IO

    print(result.model_dump_json(indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
