"""
Application information and constants for the thermal correlations CLI.
"""

from rich.console import Console
from rich.panel import Panel

# Initialize Rich console
console = Console()

# Constants for the application
APP_NAME = "Thermal Correlations"
APP_VERSION = "0.1.0"
PROG = "thermal-correlations"


def show_about():
    """Display what the tool computes and how results are checked"""
    console.print(Panel.fit(
        f"[bold cyan]{APP_NAME}[/bold cyan] [dim]v{APP_VERSION}[/dim]\n\n"
        "Quantum discord, 1-norm geometric quantum discord and Wootters concurrence\n"
        "for the two-qubit Heisenberg XXX chain in thermal equilibrium, noiseless or\n"
        "after bit-flip (BF) or generalized amplitude damping (GAD) on both qubits.\n\n"
        "[bold]Verbs[/bold]\n"
        "sweep     grid over J and T, CSV output\n"
        "figure    datasets for figures 1-8\n"
        "tc        temperature where the concurrence dies\n"
        "ordering  where gqd1 and qd swap order\n"
        "verify    closed forms against brute-force oracles\n"
        "config    show or save the effective settings\n\n"
        "Units: k = ħ = 1, α = J / 4T.\n"
        "Licensed under MIT License",
        title=f"About {APP_NAME}",
        border_style="blue"
    ))
