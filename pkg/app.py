"""
Main application logic for the thermal correlations CLI.
Handles argument parsing, logging setup and verb dispatch.
"""

import argparse
import logging

from rich.console import Console
from rich.logging import RichHandler

from app_info import APP_NAME, APP_VERSION, PROG

# Initialize Rich console
console = Console()


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="Path to a config.ini (default: next to the program)")
    common.add_argument("--verbose", action="store_true", help="Debug logging")
    return common


def _grid_parser():
    """Grid flags; every default is None so config.ini values survive unset flags"""
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--j-min", dest="j_min", type=float, help="Smallest coupling J")
    grid.add_argument("--j-max", dest="j_max", type=float, help="Largest coupling J")
    grid.add_argument("--j-steps", dest="j_steps", type=int, help="Number of J values")
    grid.add_argument("--t-min", dest="t_min", type=float, help="Lowest temperature (> 0)")
    grid.add_argument("--t-max", dest="t_max", type=float, help="Highest temperature")
    grid.add_argument("--t-steps", dest="t_steps", type=int, help="Number of T values")
    grid.add_argument("--measures", type=str, help="Comma list from qd, gqd1, conc")
    grid.add_argument("--workers", type=int, help="Worker processes for the grid")
    return grid


def _channel_parser():
    channel = argparse.ArgumentParser(add_help=False)
    channel.add_argument("--channel", type=str, choices=["none", "bf", "gad"], help="Noise on both qubits")
    channel.add_argument("--p", type=float, help="BF flip probability, or GAD mixing (1/2 for sweeps)")
    channel.add_argument("--gamma", type=float, help="GAD damping strength")
    return channel


def _seed_parser():
    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=int, help="Seed for the optimiser restarts")
    return seed


def parse_arguments(argv=None):
    """Parse command line arguments"""
    common, grid, channel, seed = _common_parser(), _grid_parser(), _channel_parser(), _seed_parser()

    parser = argparse.ArgumentParser(
        prog=PROG,
        description=f"{APP_NAME} - discord, geometric discord and concurrence of thermal XXX states",
    )
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", metavar="VERB", required=True)

    sweep = sub.add_parser("sweep", parents=[common, grid, channel, seed], help="Evaluate a (J, T) grid")
    sweep.add_argument("--oracle", action="store_true", help="Add numerically optimised discord columns")
    sweep.add_argument("--out", type=str, help="CSV output path")

    figure = sub.add_parser("figure", parents=[common], help="Write the datasets of one figure")
    figure.add_argument("fig_id", type=int, help="Figure number, 1-8")
    figure.add_argument("--out", type=str, help="Output directory (default: figures)")
    figure.add_argument("--workers", type=int, help="Worker processes for the grid")

    tc = sub.add_parser("tc", parents=[common, channel], help="Sudden-death temperature")
    tc.add_argument("--j", type=float, nargs="+", help="Couplings J > 0 (default: 0.5 1 2 4)")

    ordering = sub.add_parser("ordering", parents=[common, grid, channel, seed], help="Sign map of gqd1 - qd")
    ordering.add_argument("--out", type=str, help="CSV path for the crossing loci")

    verify = sub.add_parser("verify", parents=[common, seed], help="Run the acceptance checks")
    verify.add_argument("--quick", action="store_true", help="Smaller samples for a smoke run")

    config = sub.add_parser("config", parents=[common, grid, channel, seed], help="Show effective settings")
    config.add_argument("--write", action="store_true", help="Save the effective settings")

    sub.add_parser("about", parents=[common], help="What this tool computes")

    return parser.parse_args(argv)


def setup_logging(verbose=False):
    """Route library logging through rich on stderr"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)],
        force=True,
    )


def run(argv=None):
    """Parse, set up logging and dispatch to the verb handler; returns the exit code"""
    from commands import COMMANDS

    args = parse_arguments(argv)
    setup_logging(args.verbose)
    logging.getLogger(__name__).debug("arguments: %s", vars(args))
    return COMMANDS[args.command](args)
