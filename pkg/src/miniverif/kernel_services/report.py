"""Rendering of the consolidated property report (text or JSON)."""

from __future__ import annotations

import json
from typing import Any, Dict

from .properties import PropertyDB

KIND_LABELS = {"assertion": "assert", "precondition": "requires", "postcondition": "ensures"}


def build_report(db: PropertyDB) -> Dict[str, Any]:
    statuses = db.consolidate()
    properties = []
    for prop in db:
        properties.append({
            "id": prop.id,
            "file": prop.location.file,
            "line": prop.location.line,
            "kind": KIND_LABELS[prop.kind],
            "predicate": prop.predicate,
            "origin": prop.origin,
            "emitted": [
                {"emitter": e.emitter, "status": e.local.value,
                 "hypotheses": sorted(e.hypotheses)}
                for e in db.emissions(prop.id)
            ],
            "consolidated": statuses[prop.id].value,
        })
    return {"properties": properties, "summary": dict(db.summary())}


def render_json(db: PropertyDB) -> str:
    return json.dumps(build_report(db), indent=2, sort_keys=True) + "\n"


def render_text(db: PropertyDB) -> str:
    report = build_report(db)
    lines = []
    for p in report["properties"]:
        emitters = ", ".join(e["emitter"] for e in p["emitted"]) or "none"
        lines.append(f"{p['file']}:{p['line']} [{p['kind']}] {p['predicate']} : "
                     f"{p['consolidated']} (by {emitters})")
    s = report["summary"]
    lines.append(f"summary: total={s['total']} valid={s['valid']} invalid={s['invalid']} "
                 f"unknown={s['unknown']} inconsistent={s['inconsistent']}")
    return "\n".join(lines) + "\n"


def render(db: PropertyDB, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(db)
    return render_text(db)
