"""
SEVRP-T Command Line
====================

Entry point of the solver toolkit.

Usage:
    python run_solver.py solve --instance tc0c10s2cf1.xml --scenarios 20
    python run_solver.py scenarios generate --instance tc0c10s2cf1.xml --scenarios 200
    python run_solver.py scenarios reduce --scenario-file sc.json --reduce-to 20
    python run_solver.py measures --instance tc0c10s2ct1.xml --scenarios 20
    python run_solver.py sweep --instance instances/ --axis q_threshold --values 0.1 0.2 0.3
    python run_solver.py evaluate-route --instance tc0c10s2cf1.xml --route 3,1,4
"""

import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

from dotenv import load_dotenv

from ..exceptions import SevrpError
from .commands import (
    SCENARIO_ACTIONS,
    SWEEP_AXES,
    cmd_evaluate_route,
    cmd_measures,
    cmd_scenarios,
    cmd_solve,
    cmd_sweep,
)
from .config import load_run_config
from .logs import setup_logging

logger = logging.getLogger(__name__)


def _common_arguments():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", dest="config_file", help="KEY=value configuration file")

    group = common.add_argument_group("instance")
    group.add_argument("--instance", help="instance file (or directory for sweep)")
    group.add_argument("--format", dest="instance_format", choices=["canonical", "benchmark-import"])
    group.add_argument("--instance-dir", help="directory searched for relative instance names")

    group = common.add_argument_group("scenarios")
    group.add_argument("--distribution", help="uniform, truncated-normal or truncated-exponential (U/N/E)")
    group.add_argument("--scenarios", dest="scenario_count", type=int, help="number of scenarios to sample")
    group.add_argument("--reduce-to", type=int, help="reduce the scenario set to this size (FFS)")
    group.add_argument("--scenario-file", help="read (or write) scenarios from this JSON file")
    group.add_argument("--symmetric", action="store_const", const=True, default=None,
                       help="sample e_ij = e_ji")
    group.add_argument("--seed", type=int)

    group = common.add_argument_group("policy")
    group.add_argument("--q-max", type=float, help="battery capacity in kWh")
    group.add_argument("--threshold-fraction", type=float, help="Q^T as a fraction of Q^max")
    group.add_argument("--goal-fraction", type=float, help="Q^G as a fraction of Q^max")
    group.add_argument("--service-time", dest="include_service_time", action="store_const",
                       const=True, default=None, help="add customer service times to durations")

    group = common.add_argument_group("search")
    group.add_argument("--i-max", type=int, help="ILS iterations")
    group.add_argument("--gamma", type=float, help="stage-1 filter factor (>= 1)")
    group.add_argument("--time-limit", type=float, help="ILS wall-clock limit in seconds")
    group.add_argument("--sp-time-limit", type=float, help="set partitioning limit in seconds")
    group.add_argument("--no-ndcs", dest="use_ndcs", action="store_const", const=False, default=None)
    group.add_argument("--no-bounds", dest="use_bounds", action="store_const", const=False, default=None)
    group.add_argument("--no-filters", action="store_true", help="evaluate every move exactly")
    group.add_argument("--first-improvement", action="store_const", const=True, default=None)
    group.add_argument("--neighborhoods", help="comma-separated neighborhood order")
    group.add_argument("--log-every", type=int, help="ILS progress interval in iterations")

    group = common.add_argument_group("output")
    group.add_argument("--output-dir")
    group.add_argument("--log-file")
    group.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    group.add_argument("--quiet", action="store_const", const=True, default=None,
                       help="no progress bars")
    return common


def build_parser():
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        prog="sevrp",
        description="Electric vehicle routing with stochastic energy and a threshold recharging policy",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("solve", parents=[common], help="solve one instance with ILS-SP")

    scenarios = commands.add_parser("scenarios", parents=[common], help="generate, reduce or inspect scenarios")
    scenarios.add_argument("action", choices=SCENARIO_ACTIONS)

    commands.add_parser("measures", parents=[common], help="RP, WS, EVPI, EVP, EEV and VSS")

    sweep = commands.add_parser("sweep", parents=[common], help="solve over a range of parameter values")
    sweep.add_argument("--axis", required=True, choices=sorted(SWEEP_AXES))
    sweep.add_argument("--values", required=True, nargs="+", type=float)

    route = commands.add_parser("evaluate-route", parents=[common], help="evaluate a fixed customer sequence")
    route.add_argument("--route", required=True, help="comma-separated customer ids, depot excluded")
    return parser


# Parser destinations that are not RunConfig fields
_NOT_CONFIG = {"command", "config_file", "action", "axis", "values", "route", "no_filters"}


def config_from_args(args):
    """RunConfig from parsed arguments layered over environment and file."""
    overrides = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    if args.no_filters:
        overrides.update(gamma=math.inf, use_bounds=False)
    config = load_run_config(args.config_file, overrides)
    if config.log_file is None:
        config = replace(config, log_file=str(Path(config.output_dir) / f"{args.command}.log"))
    return config


def parse_route(text):
    try:
        return [int(c) for c in text.replace(" ", "").split(",") if c]
    except ValueError as e:
        raise SevrpError(f"bad route {text!r}: expected comma-separated customer ids") from e


def dispatch(args, config):
    if args.command == "solve":
        return cmd_solve(config)
    if args.command == "scenarios":
        return cmd_scenarios(config, args.action)
    if args.command == "measures":
        return cmd_measures(config)
    if args.command == "sweep":
        return cmd_sweep(config, args.axis, args.values)
    if args.command == "evaluate-route":
        return cmd_evaluate_route(config, parse_route(args.route))
    raise SevrpError(f"unknown command {args.command!r}")


def main(argv=None):
    """
    Run one subcommand.

    This function:
    1. Loads a .env file into the environment
    2. Merges environment, configuration file and flags into a RunConfig
    3. Sets up console and file logging
    4. Dispatches to the subcommand

    Returns:
        int: exit status (0 success, 1 failure, 130 interrupted)
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    status = 1
    try:
        config = config_from_args(args)
        setup_logging(config.log_level, config.log_file)
        logger.info("🚀 %s started", args.command)
        logger.debug("configuration: %s", config)
        status = dispatch(args, config)
    except KeyboardInterrupt:
        print("\n👋 Stopped by user")
        status = 130
    except SevrpError as e:
        print(f"❌ Error: {e}")
    except OSError as e:
        print(f"❌ File error: {e}")
    finally:
        logger.info("%s finished with status %d", args.command, status)
    return status


if __name__ == "__main__":
    sys.exit(main())
