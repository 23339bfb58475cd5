"""
Verb handlers for the command line.
Each handler takes the parsed arguments and returns a process exit code.
"""

import math
import time
from pathlib import Path

from rich.console import Console

from app_info import show_about
from config import apply_overrides, build_sweep_config, load_config, save_config
from errors import NoEntanglementAnywhere
from figures import figure_dataset, figure_panels
from sweep import ordering_report, run_sweep, sudden_death_temperature, write_crossings_csv
from ui import (
    grid_progress, show_banner, show_check_results, show_critical_temperatures, show_ordering_report,
    show_records, show_settings, show_sweep_summary,
)
from utils import format_time_delta
from verify import all_gating_passed, run_checks

# Initialize Rich console
console = Console()

DEFAULT_TC_COUPLINGS = (0.5, 1.0, 2.0, 4.0)
DEFAULT_FIGURE_DIR = "figures"


def _settings(args):
    return apply_overrides(load_config(getattr(args, "config", None)), args)


def _grid_size(cfg):
    return cfg.j_axis.steps * cfg.t_axis.steps


def handle_sweep_command(args):
    """Handle the sweep verb"""
    cfg = build_sweep_config(_settings(args), oracle=args.oracle, output_path=args.out)
    show_banner()

    start = time.time()
    with grid_progress(_grid_size(cfg)) as progress:
        records = run_sweep(cfg, progress)
    show_sweep_summary(cfg, records, time.time() - start)

    if cfg.output_path is None:
        show_records(records, cfg.columns())
    return 0


def handle_figure_command(args):
    """Handle the figure verb: one CSV per panel of the requested figure"""
    settings = _settings(args)
    panels = figure_panels(args.fig_id)
    out_dir = Path(args.out or DEFAULT_FIGURE_DIR)

    start = time.time()
    with grid_progress(sum(p.rows for p in panels), f"Figure {args.fig_id}") as progress:
        paths = figure_dataset(args.fig_id, out_dir, workers=int(settings['workers']), progress=progress)

    for path in paths:
        console.print(f"[green]Wrote {path}[/green]")
    console.print(f"[dim]Elapsed: {format_time_delta(time.time() - start)}[/dim]")
    return 0


def handle_tc_command(args):
    """Handle the tc verb; couplings without entanglement are listed, not fatal, but set exit 2"""
    # Validating as a sweep applies the GAD p = 1/2 default and rejects any other p
    channel = build_sweep_config(_settings(args)).channel_spec()
    label = channel.label if channel else "none"

    rows = []
    failed = False
    for J in args.j or DEFAULT_TC_COUPLINGS:
        reference = J / math.log(3) if channel is None and J > 0 else None
        try:
            tc = sudden_death_temperature(J, channel)
        except NoEntanglementAnywhere as e:
            console.print(f"[yellow]{e}[/yellow]")
            tc, failed = None, True
        rows.append((J, label, tc, reference))

    show_critical_temperatures(rows)
    return 2 if failed else 0


def handle_ordering_command(args):
    """Handle the ordering verb"""
    cfg = build_sweep_config(_settings(args))
    with grid_progress(_grid_size(cfg), "Ordering") as progress:
        report = ordering_report(cfg, progress)
    show_ordering_report(report)

    if args.out:
        path = write_crossings_csv(args.out, report)
        console.print(f"[green]Crossings written to {path}[/green]")
    return 0


def handle_verify_command(args):
    """Handle the verify verb; exit 0 only when every gating check passes"""
    settings = _settings(args)
    show_banner()

    start = time.time()
    with console.status("[bold green]Running verification checks..."):
        results = run_checks(quick=args.quick, seed=int(settings['seed']))
    show_check_results(results)
    console.print(f"[dim]Elapsed: {format_time_delta(time.time() - start)}[/dim]")

    if all_gating_passed(results):
        console.print("[bold green]All gating checks passed[/bold green]")
        return 0
    console.print("[bold red]Some gating checks failed[/bold red]")
    return 1


def handle_config_command(args):
    """Handle the config verb: show effective settings, optionally save them"""
    settings = _settings(args)
    build_sweep_config(settings)
    show_settings(settings, args.config or "defaults + config.ini + flags")
    if args.write:
        save_config(settings, args.config)
    return 0


def handle_about_command(args):
    show_about()
    return 0


COMMANDS = {
    "sweep": handle_sweep_command,
    "figure": handle_figure_command,
    "tc": handle_tc_command,
    "ordering": handle_ordering_command,
    "verify": handle_verify_command,
    "config": handle_config_command,
    "about": handle_about_command,
}
