"""Command-line front end.

Subcommands:

    fracthermistor solve run.cfg --out results/
    fracthermistor convergence run.cfg --axis time --values 0.125 0.0625 0.03125 --out study/
    fracthermistor check --all

Exit codes: 0 success, 1 failed check or internal error, 2 configuration
error, 3 hypothesis failure, 4 solver failure, 5 failed study point.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from fracthermistor import __version__
from fracthermistor.artifacts import (
    SOLUTION_COLUMNS,
    STUDY_COLUMNS,
    TRAJECTORY_COLUMNS,
    solution_rows,
    study_rows,
    trajectory_rows,
    utc_now,
    write_csv,
    write_manifest,
)
from fracthermistor.exceptions import ConfigurationError, HypothesisError, ThermistorError
from fracthermistor.models.config import ProblemConfig
from fracthermistor.models.records import CheckResult, RunManifest
from fracthermistor.nonlocal_source import conductivity_ids, get_conductivity, hypothesis_check
from fracthermistor.settings import dump_settings, load_config
from fracthermistor.stepper import run
from fracthermistor.verify import (
    check_caputo,
    check_hypotheses,
    check_matrices,
    spatial_study,
    temporal_order_study,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser of the ``fracthermistor`` command."""
    parser = argparse.ArgumentParser(
        prog="fracthermistor",
        description="L1 / Legendre-Galerkin solver for the time-fractional nonlocal thermistor problem",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="run one configuration")
    solve.add_argument("config", type=Path, help="key = value configuration file")
    solve.add_argument("--out", type=Path, default=Path("."), help="output directory")

    convergence = commands.add_parser("convergence", help="run a convergence study")
    convergence.add_argument("config", type=Path, help="configuration with a manufactured source")
    convergence.add_argument("--axis", choices=["time", "space"], required=True)
    convergence.add_argument(
        "--values", type=float, nargs="+", required=True, help="step lengths or degrees"
    )
    convergence.add_argument("--out", type=Path, default=Path("."), help="output directory")
    convergence.add_argument("--jobs", type=int, default=1, help="worker processes")

    check = commands.add_parser("check", help="run the oracle and identity suites")
    check.add_argument("--caputo", action="store_true", help="L1 truncation checks")
    check.add_argument("--hypotheses", action="store_true", help="conductivity hypothesis sampling")
    check.add_argument("--matrices", action="store_true", help="closed-form assembly")
    check.add_argument("--all", action="store_true", help="every suite")
    check.add_argument("--alpha", type=float, default=0.5, help="order for --caputo")
    check.add_argument("-N", type=int, default=8, help="degree for --matrices")
    check.add_argument(
        "--conductivity",
        nargs="+",
        default=None,
        help="conductivities for --hypotheses (default: all registered)",
    )
    return parser


def configure_logging(verbosity: int) -> None:
    """Configure the root logger from the ``-v`` count."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _require_hypotheses(config: ProblemConfig) -> None:
    report = hypothesis_check(get_conductivity(config.conductivity))
    if not report.passed:
        raise HypothesisError(f"conductivity {config.conductivity!r} fails its hypotheses", report)


def cmd_solve(config_path: Path, out_dir: Path) -> int:
    """Run a configuration and write trajectory, final solution and manifest.

    Args:
        config_path: Configuration file.
        out_dir: Output directory, created if missing.

    Returns:
        Exit code 0.

    Raises:
        ConfigurationError: If the configuration is invalid.
        HypothesisError: If the conductivity or u0 fails its hypotheses.
        SolverError: If a step cannot be computed.
    """
    started = utc_now()
    config = load_config(config_path)
    _require_hypotheses(config)
    record = run(config)

    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = [
        write_csv(out_dir / "trajectory.csv", TRAJECTORY_COLUMNS, trajectory_rows(record)),
        write_csv(out_dir / "solution_final.csv", SOLUTION_COLUMNS, solution_rows(record)),
    ]
    manifest = RunManifest(
        command="solve",
        config=dump_settings(config),
        tool_version=__version__,
        started_at=started,
        finished_at=utc_now(),
    )
    write_manifest(out_dir, manifest, outputs)
    print(f"solved K={config.K} N={config.N}: ||u(T)||_0 = {record.l2_norms[-1]:.17g}")
    return 0


def cmd_convergence(
    config_path: Path,
    axis: str,
    values: Sequence[float],
    out_dir: Path,
    jobs: int = 1,
) -> int:
    """Run a temporal or spatial study and write ``study.csv`` and the manifest.

    Args:
        config_path: Configuration naming a manufactured ``source``.
        axis: ``time`` (values are step lengths) or ``space`` (degrees).
        values: Axis values.
        out_dir: Output directory, created if missing.
        jobs: Worker processes.

    Returns:
        Exit code 0.

    Raises:
        ConfigurationError: If the configuration has no manufactured source.
        HypothesisError: If the conductivity fails its hypotheses.
        StudyError: If a study point fails.
    """
    started = utc_now()
    config = load_config(config_path)
    if config.source is None:
        raise ConfigurationError(
            message="convergence studies need a manufactured source", key="source"
        )
    _require_hypotheses(config)
    solution = config.source.name
    if axis == "time":
        study = temporal_order_study(config, solution, values, jobs=jobs)
    else:
        study = spatial_study(config, solution, [int(v) for v in values], jobs=jobs)

    out_dir.mkdir(parents=True, exist_ok=True)
    output = write_csv(out_dir / "study.csv", STUDY_COLUMNS, study_rows(study))
    manifest = RunManifest(
        command="convergence",
        config=dump_settings(config),
        tool_version=__version__,
        started_at=started,
        finished_at=utc_now(),
        extra={
            "axis": axis,
            "values": list(values),
            "jobs": jobs,
            "temporal_floor": study.temporal_floor,
            "norm_weight": study.norm_weight,
        },
    )
    write_manifest(out_dir, manifest, [output])
    print(f"fitted order ({study.mode}): {study.fitted_order:.6f}")
    return 0


def cmd_check(
    caputo: bool = False,
    hypotheses: bool = False,
    matrices: bool = False,
    alpha: float = 0.5,
    N: int = 8,  # noqa: N803
    conductivities: Optional[Sequence[str]] = None,
) -> int:
    """Run the selected suites and print a pass/fail table.

    Returns:
        0 if every check passed, 1 otherwise.
    """
    results: List[CheckResult] = []
    if caputo:
        results.extend(check_caputo(alpha))
    if hypotheses:
        results.extend(check_hypotheses(conductivities or conductivity_ids()))
    if matrices:
        results.extend(check_matrices(N))
    if not results:
        raise ConfigurationError(message="select at least one of --caputo, --hypotheses, --matrices, --all")
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}  {result.name}: {result.value:.6g} (expected {result.expected})")
    return 0 if all(result.passed for result in results) else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``fracthermistor`` command.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv``.

    Returns:
        The process exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "solve":
            return cmd_solve(args.config, args.out)
        if args.command == "convergence":
            return cmd_convergence(args.config, args.axis, args.values, args.out, args.jobs)
        return cmd_check(
            caputo=args.caputo or args.all,
            hypotheses=args.hypotheses or args.all,
            matrices=args.matrices or args.all,
            alpha=args.alpha,
            N=args.N,
            conductivities=args.conductivity,
        )
    except ThermistorError as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid parameter: {e}", file=sys.stderr)
        return ConfigurationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
