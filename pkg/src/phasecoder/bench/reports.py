"""CSV/JSON emission for benchmark runs.

Every file starts with a schema stamp so downstream readers can refuse
formats they do not understand: CSV files carry it as a leading comment
line, JSON files as a top-level "schema" key.  Floats are written with
repr-level precision, so identical runs produce byte-identical files.
"""

import csv
import json
from pathlib import Path

SCHEMA_VERSION = 1


def schema_tag(name):
    return f"phasecoder/{name} v{SCHEMA_VERSION}"


def write_csv(path, name, fieldnames, rows):
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# schema: {schema_tag(name)}\n")
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return path


def read_csv(path):
    """Read back a schema-stamped CSV; returns (schema_line, list[dict])."""
    with Path(path).open() as fh:
        first = fh.readline().strip()
        if not first.startswith("# schema:"):
            raise ValueError(f"{path} is missing the schema header row")
        return first.removeprefix("# schema:").strip(), list(csv.DictReader(fh))


def write_json(path, name, payload):
    path = Path(path)
    doc = {"schema": schema_tag(name)}
    doc.update(payload)
    with path.open("w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
