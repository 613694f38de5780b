#!/usr/bin/env python
"""Argument parsing and exit-code mapping for the twistor-kepler command line."""

import argparse
from typing import Dict, Optional, Sequence

from pydantic import ValidationError

from app.cli.commands import cmd_classify, cmd_simulate, cmd_verify
from app.config import RunConfig
from app.exceptions import ConfigError, ExpressionError, TwistorError
from app.logger import logger, set_print_level
from app.schema import FORMAT_VALUES, SCENARIO_VALUES, ExitCode


def parse_tolerance(text: str) -> Dict[str, float]:
    """KEY=VAL with a float value; keys and signs are checked by RunConfig."""
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL, got '{text}'")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance '{value}' is not a number") from None
    return {key.strip(): tol}


def _common_parser() -> argparse.ArgumentParser:
    # Defaults stay None so that only flags given on the command line override --config.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config; flags override its values")
    common.add_argument("--n", type=int, help="Half-dimension n")
    common.add_argument("--seed", type=int, help="Seed of every random draw")
    common.add_argument(
        "--tol",
        type=parse_tolerance,
        action="append",
        metavar="KEY=VAL",
        help="Tolerance override, repeatable; KEY 'all' sets every tolerance",
    )
    common.add_argument("--scenario", choices=SCENARIO_VALUES, help="simulate scenario")
    common.add_argument("--out", help="Output path")
    common.add_argument("--format", choices=FORMAT_VALUES, help="Trajectory file format")
    common.add_argument("--t-end", dest="t_end", type=float, help="Fictitious-time horizon")
    common.add_argument("--dt", type=float, help="Integration step")
    common.add_argument("--samples", type=int, help="Random samples per verification suite")
    common.add_argument("--log-level", dest="log_level", help="stderr log level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="twistor-kepler",
        description="Regularized Kepler dynamics on twistor space: checks, trajectories, orbit labels",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("verify", parents=[common], help="Run every verification suite")
    commands.add_parser("simulate", parents=[common], help="Integrate a scenario and write its trajectory")
    classify = commands.add_parser(
        "classify", parents=[common], help="Orbit label of J0(E, rho) for a matrix rho"
    )
    classify.add_argument("--input", help="JSON file with the rows of rho")
    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Config file values, then command-line flags on top."""
    base = RunConfig.from_json_file(args.config) if args.config else RunConfig()
    values = base.model_dump()
    for key in ("n", "seed", "scenario", "out", "format", "t_end", "dt", "samples"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if args.tol:
        tolerances = dict(values["tolerances"])
        for item in args.tol:
            tolerances.update(item)
        values["tolerances"] = tolerances
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration: {e}") from e


class CommandRunner:
    """Runs one parsed command and maps its outcome to an exit code."""

    def __init__(self, args: argparse.Namespace):
        self.args = args

    def run(self) -> ExitCode:
        run = build_run_config(self.args)
        if self.args.command == "verify":
            return cmd_verify(run)
        if self.args.command == "simulate":
            return cmd_simulate(run)
        return cmd_classify(run, self.args.input)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the console script; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return int(e.code) if e.code is not None else int(ExitCode.OK)

    if args.log_level:
        try:
            logger.level(args.log_level.upper())
        except ValueError as e:
            logger.error(f"Unknown log level: {e}")
            return int(ExitCode.USAGE)
        set_print_level(args.log_level.upper())

    try:
        return int(CommandRunner(args).run())
    except (ConfigError, ExpressionError) as e:
        logger.error(e.message)
        return int(ExitCode.USAGE)
    except TwistorError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return int(ExitCode.FAILURE)
