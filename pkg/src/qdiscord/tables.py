"""CSV and run-metadata output shared by the scan and figure pipelines.

Files are written with LF newlines and floats at 12 significant digits so
that a repeated run with the same configuration is byte-identical.
"""

import json

SIGNIFICANT_DIGITS = 12


def format_number(value) -> str:
    """Render a cell: integers verbatim, floats at 12 significant digits."""
    if isinstance(value, bool):
        raise TypeError("booleans are not table cells")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, f".{SIGNIFICANT_DIGITS}g")
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write a header line plus one comma-joined line per row."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_number(cell) for cell in row) + "\n")


def write_sidecar(csv_path, payload: dict) -> str:
    """Write run metadata next to a CSV as ``<csv_path>.json``.

    Keys are sorted so the sidecar is as reproducible as the table itself.
    Returns the sidecar path.
    """
    sidecar = f"{csv_path}.json"
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar
