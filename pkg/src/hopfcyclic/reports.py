"""Report documents: versioned JSON, CSV dimension tables, plain text."""
from __future__ import annotations

import csv
import io
import json

SCHEMA = 1


def report(command: str, config: dict, results: dict, passed: bool, provenance=(), certificates=()) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "passed": bool(passed),
        "results": results,
        "provenance": sorted(set(provenance)),
        "certificates": list(certificates),
    }


def _plain(x):
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def to_json(doc: dict) -> str:
    return json.dumps(_plain(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def grid_rows(grid: dict) -> list:
    """(i, j, dim) rows from a grid keyed by (i, j) tuples or "i,j" strings."""
    rows = []
    for k, v in grid.items():
        i, j = k if isinstance(k, tuple) else map(int, str(k).split(","))
        rows.append((i, j, v))
    return sorted(rows)


def to_csv(doc: dict) -> str:
    """One row per dimension entry of every ``grid`` / ``dims`` block in ``results``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["block", "i", "j", "degree", "dim"])

    def walk(name, block):
        if not isinstance(block, dict):
            return
        if isinstance(block.get("grid"), dict):
            for i, j, d in grid_rows(block["grid"]):
                w.writerow([name, i, j, i + j, d])
        if isinstance(block.get("dims"), dict):
            for n, d in sorted(block["dims"].items(), key=lambda kv: int(kv[0])):
                w.writerow([name, "", "", n, d])
        for k, v in sorted(block.items(), key=lambda kv: str(kv[0])):
            if k not in ("grid", "dims"):
                walk(f"{name}/{k}", v)

    for name, block in sorted(doc["results"].items()):
        walk(name, block)
    return buf.getvalue()


def to_text(doc: dict) -> str:
    lines = [f"{doc['command']}: {'PASS' if doc['passed'] else 'FAIL'}"]
    for k, v in sorted(doc["config"].items()):
        lines.append(f"  {k} = {v}")

    def walk(prefix, x):
        if isinstance(x, dict):
            for k, v in sorted(x.items(), key=lambda kv: str(kv[0])):
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(x, list) and x and all(isinstance(e, str) for e in x):
            for e in x:
                lines.append(f"  {prefix}: {e}")
        else:
            lines.append(f"  {prefix}: {x}")

    walk("", _plain(doc["results"]))
    if doc["provenance"]:
        lines.append("  provenance: " + ", ".join(doc["provenance"]))
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](doc)
