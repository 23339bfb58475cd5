from contextlib import contextmanager

from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn
from rich.table import Table

# Initialize Rich console
console = Console()
progress_console = Console(stderr=True)


def show_banner():
    """Header panel printed before long-running verbs"""
    from app_info import APP_NAME, APP_VERSION

    console.print(Panel(
        f"[bold cyan]{APP_NAME}[/bold cyan] [dim]v{APP_VERSION}[/dim]\n\n"
        "Discord • 1-norm geometric discord • Concurrence\n"
        "Two-qubit XXX Gibbs states under bit-flip and generalized amplitude damping",
        title="Thermal correlations",
        border_style="green",
        padding=(1, 2)
    ))


@contextmanager
def grid_progress(total, description="Evaluating grid", enabled=True):
    """Yield a callback advancing a progress bar by finished points.

    The bar goes to stderr so piping stdout never mixes with it.
    """
    if not enabled:
        yield None
        return

    columns = (
        TextColumn("[bold blue]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
    )
    with Progress(*columns, console=progress_console, transient=True) as progress:
        task = progress.add_task(description, total=total)
        yield lambda count: progress.advance(task, count)


def show_sweep_summary(cfg, records, elapsed):
    from utils import format_file_size, format_time_delta

    table = Table(title="Sweep", show_header=False, box=None)
    table.add_column("key", style="cyan")
    table.add_column("value")
    table.add_row("Grid", f"{cfg.j_axis.steps} J × {cfg.t_axis.steps} T = {len(records)} points")
    channel = cfg.channel_spec()
    table.add_row("Channel", channel.label if channel else "none")
    table.add_row("Measures", ", ".join(cfg.measures) + (" (+ numeric oracle)" if cfg.oracle else ""))
    if cfg.output_path:
        table.add_row("Output", f"{cfg.output_path} ({format_file_size(cfg.output_path.stat().st_size)})")
    else:
        table.add_row("Output", "[dim]not written[/dim]")
    table.add_row("Elapsed", format_time_delta(elapsed))
    console.print(table)


def show_records(records, columns, limit=20):
    """Print the first rows of a dataset when no output file was asked for"""
    from utils import format_float

    table = Table(title=f"First {min(limit, len(records))} of {len(records)} rows")
    for name in columns:
        table.add_column(name, justify="right")
    for record in records[:limit]:
        table.add_row(*(format_float(v) if isinstance(v, float) else str(v) for v in record.row(columns)))
    console.print(table)


def show_critical_temperatures(rows):
    table = Table(title="Sudden-death temperature")
    table.add_column("J", justify="right")
    table.add_column("Channel")
    table.add_column("T_c", justify="right", style="green")
    table.add_column("J / ln 3", justify="right", style="dim")
    for J, label, tc, reference in rows:
        shown = f"{tc:.10f}" if tc is not None else "[yellow]no entanglement[/yellow]"
        table.add_row(f"{J:g}", label, shown, f"{reference:.10f}" if reference is not None else "-")
    console.print(table)


def show_ordering_report(report):
    colour = "yellow" if report.violated else "green"
    table = Table(title=f"Ordering of gqd1 vs qd ({report.channel}, {report.points} points)")
    table.add_column("sign(gqd1 - qd)")
    table.add_column("fraction", justify="right")
    for key, label in (("+", "gqd1 > qd"), ("0", "equal"), ("-", "qd > gqd1")):
        table.add_row(f"{key}  {label}", f"{report.fractions[key]:.4f}")
    console.print(table)

    if report.crossings:
        loci = Table(title=f"{len(report.crossings)} crossing(s)")
        for name in ("axis", "fixed", "location", "bracket"):
            loci.add_column(name, justify="right")
        for c in report.crossings[:20]:
            loci.add_row(c.axis, f"{c.fixed:g}", f"{c.location:.6g}", f"[{c.lower:g}, {c.upper:g}]")
        console.print(loci)

    console.print(f"[bold {colour}]{report.verdict}[/bold {colour}]: {report.describe()}")


def show_check_results(results):
    table = Table(title="Verification")
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Detail")
    for result in results:
        if not result.gating:
            status = "[blue]FINDING[/blue]"
        elif result.passed:
            status = "[green]PASS[/green]"
        else:
            status = "[red]FAIL[/red]"
        table.add_row(result.name, status, result.detail)
    console.print(table)


def show_settings(settings, source):
    table = Table(title=f"Effective settings ({source})")
    table.add_column("Setting", style="cyan")
    table.add_column("Value")
    for key, value in settings.items():
        table.add_row(key, "[dim]channel default[/dim]" if value is None else str(value))
    console.print(table)
