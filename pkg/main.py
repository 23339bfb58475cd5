"""
Thermal Correlations CLI
Main entry point for the application.
"""

import sys

from app import run
from errors import CorrelationError, handle_critical_error, handle_error


def main(argv=None):
    """Main application entry point; library errors exit 2, anything else 1"""
    try:
        return run(argv)
    except CorrelationError as e:
        handle_error(e)
        return 2
    except OSError as e:
        handle_error(e)
        return 1


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nExiting application...")
        sys.exit(130)
    except Exception as e:
        handle_critical_error(e)
        sys.exit(1)
