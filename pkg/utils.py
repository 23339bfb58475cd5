import math

SIGNIFICANT_DIGITS = 12

MEASURE_ALIASES = {
    "qd": "qd",
    "gqd1": "gqd1",
    "gqd": "gqd1",
    "conc": "concurrence",
    "concurrence": "concurrence",
}
MEASURE_ORDER = ("qd", "gqd1", "concurrence")


def format_time_delta(delta_seconds):
    """Format time delta in a human-readable format."""
    if delta_seconds < 60:
        return f"{delta_seconds:.1f}s"
    elif delta_seconds < 3600:
        minutes = delta_seconds / 60
        return f"{minutes:.1f}m"
    else:
        hours = delta_seconds / 3600
        return f"{hours:.1f}h"


def format_file_size(size_bytes):
    """Format file size in a human-readable format."""
    if size_bytes == 0:
        return "0B"
    size_names = ["B", "KB", "MB", "GB", "TB"]
    i = 0
    while size_bytes >= 1024 and i < len(size_names) - 1:
        size_bytes /= 1024.0
        i += 1
    return f"{size_bytes:.1f}{size_names[i]}"


def format_float(value):
    """CSV cell text: 12 significant digits, never '-0'"""
    if not math.isfinite(value):
        raise ValueError(f"refusing to write non-finite value {value}")
    return f"{value + 0.0:.{SIGNIFICANT_DIGITS}g}"


def parse_measures(text):
    """'qd,gqd1,conc' -> ('qd', 'gqd1', 'concurrence') in canonical order"""
    if isinstance(text, str):
        items = [item.strip().lower() for item in text.split(",") if item.strip()]
    else:
        items = [str(item).strip().lower() for item in text]
    unknown = [item for item in items if item not in MEASURE_ALIASES]
    if unknown:
        raise ValueError(f"unknown measure(s): {', '.join(unknown)} (use qd, gqd1, conc)")
    chosen = {MEASURE_ALIASES[item] for item in items}
    return tuple(name for name in MEASURE_ORDER if name in chosen)
