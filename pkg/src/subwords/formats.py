"""Census export and import: CSV, OEIS b-file style, JSON."""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict

from .generation import Census
from .words import BinaryWord


def census_to_csv(census: Census) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "count"])
    for k, v in sorted(census.table.items()):
        writer.writerow([k, v])
    return buf.getvalue()


def read_census_csv(text: str) -> Dict[int, int]:
    rows = csv.DictReader(io.StringIO(text))
    return {int(row["k"]): int(row["count"]) for row in rows}


def census_to_bfile(census: Census) -> str:
    lines = [f"# B_(n,p)(k) for p={census.pattern.bits} n={census.n}"]
    lines += [f"{k} {v}" for k, v in sorted(census.table.items())]
    return "\n".join(lines) + "\n"


def read_census_bfile(text: str) -> Dict[int, int]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k, v = line.split()
        out[int(k)] = int(v)
    return out


def census_to_dict(census: Census, method: str = "primitive") -> Dict[str, Any]:
    return {
        "pattern": census.pattern.bits,
        "n": census.n,
        "method": method,
        "table": [[k, v] for k, v in sorted(census.table.items())],
        "total": census.total,
    }


def census_to_json(census: Census, method: str = "primitive") -> str:
    return json.dumps(census_to_dict(census, method), sort_keys=True) + "\n"


def census_from_json(text: str) -> Census:
    data = json.loads(text)
    return Census(BinaryWord(data["pattern"]), data["n"], {int(k): int(v) for k, v in data["table"]})
