"""
Exception hierarchy and CLI-side error reporting.
Library modules raise these; only the command layer catches and prints them.
"""

from rich.console import Console

# Initialize Rich console
console = Console(stderr=True)


class CorrelationError(Exception):
    """Base class for every failure raised by this package"""


class BadDimension(CorrelationError, ValueError):
    """Matrix has the wrong shape for the requested operation"""


class NotHermitian(CorrelationError, ValueError):
    """Matrix deviates from its adjoint beyond tolerance"""


class NotDensityMatrix(CorrelationError, ValueError):
    """Matrix is not a unit-trace positive semidefinite Hermitian operator"""


class InvalidTemperature(CorrelationError, ValueError):
    """Temperature is non-positive, NaN or infinite (or the coupling is not finite)"""


class UnphysicalCoefficients(CorrelationError, ValueError):
    """Bell-diagonal coefficients give a negative Bell-basis weight"""


class OutOfRange(CorrelationError, ValueError):
    """Channel parameter outside [0, 1]"""


class UnsupportedParameters(CorrelationError, ValueError):
    """Coefficient map requested for parameters that break Bell-diagonality"""


class NoEntanglementAnywhere(CorrelationError):
    """Concurrence already vanishes at the cold end of the temperature bracket"""


class ConsistencyError(CorrelationError):
    """Numerical result violates an internal bound by more than roundoff"""


class ConfigError(CorrelationError, ValueError):
    """Sweep or optimizer settings rejected before any computation"""


def handle_error(error):
    """Print a library or I/O error the way the CLI reports failures"""
    if isinstance(error, OSError) and error.filename:
        console.print(f"[red]I/O error on {error.filename}: {error.strerror}[/red]")
    elif isinstance(error, CorrelationError):
        console.print(f"[red]{type(error).__name__}: {error}[/red]")
    else:
        console.print(f"[red]Error: {str(error)}[/red]")


def handle_critical_error(error):
    """Handle errors that abort the application"""
    console.print(f"[red]Critical error: {str(error)}[/red]")
