import os
import csv
import tempfile
from pathlib import Path

from utils import format_float


def write_rows_csv(path, header, rows):
    """Write a header plus rows atomically: temp file in the same directory, then rename"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding="utf-8", newline='') as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_float(cell) if isinstance(cell, float) else cell for cell in row])
        os.replace(temp_name, path)
    except BaseException:
        # Never leave a half-written temp file next to the target
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise

    return path


def write_records_csv(path, records, columns):
    """Save sweep records with the given column order"""
    return write_rows_csv(path, columns, (record.row(columns) for record in records))


def read_csv_rows(path):
    """Load a CSV written by write_rows_csv as a list of dicts (strings)"""
    with open(path, 'r', encoding="utf-8", newline='') as f:
        return list(csv.DictReader(f))
