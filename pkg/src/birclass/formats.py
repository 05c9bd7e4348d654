"""Report documents and their JSON, CSV and markdown encodings.

A document is ``{"schema", "metadata", "sections"}`` where every section is a
list of flat records. All three encodings parse back to an equal document.
"""
from __future__ import annotations

import csv
import io
import json
import os
import re
from datetime import datetime, timezone
from typing import Any, Iterable

from . import __version__
from .candidates import CandidateSet, PreliminaryRow
from .classify import (
    Check,
    ClassificationResult,
    ClassificationRow,
    Rejection,
    StageRecord,
    ValidationReport,
)
from .fourfolds import FourfoldRecord
from .invariants import DimensionPair, Profile

SCHEMA = "birclass-report/1"
FORMATS = ("json", "csv", "md")

Document = dict[str, Any]


class FormatError(ValueError):
    pass


def timestamp() -> str | None:
    """ISO time from ``SOURCE_DATE_EPOCH``; None otherwise, keeping output reproducible."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if not epoch:
        return None
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def new_document(command: str, provenance: Iterable[str] = ()) -> Document:
    return {
        "schema": SCHEMA,
        "metadata": {
            "tool": "birclass",
            "version": __version__,
            "command": command,
            "provenance": sorted(set(provenance)),
            "timestamp": timestamp(),
        },
        "sections": {},
    }


def add_section(doc: Document, name: str, records: Iterable[dict[str, Any]]) -> None:
    doc["sections"].setdefault(name, []).extend(records)


# -- record conversions ----------------------------------------------------


def md_text(md: Iterable[int] | None) -> str | None:
    return None if md is None else "(" + ",".join(str(x) for x in md) + ")"


def md_parse(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    return tuple(int(x) for x in text.strip("()").split(","))


def row_to_dict(row: ClassificationRow) -> dict[str, Any]:
    p = row.profile
    # column order follows the reference tables
    return {
        "table_id": row.table_id,
        "r": row.r,
        "n": p.n,
        "a": p.a,
        "lambda": p.lam,
        "g": p.g,
        "structure": row.structure,
        "d1": p.d1,
        "d": p.d,
        "Delta": p.Delta,
        "nu": p.nu,
        "r_prime": row.dims.r_prime,
        "c": row.dims.c,
        "provenance": row.provenance,
        "stage": row.stage,
        "delta": row.delta,
        "multidegree": md_text(row.multidegree),
        "extras": dict(sorted(row.extras.items())),
    }


def row_from_dict(d: dict[str, Any]) -> ClassificationRow:
    p = Profile(d["lambda"], d["g"], d["Delta"], d["d"], d["a"], nu=d["nu"], n=d["n"], d1=d["d1"])
    return ClassificationRow(
        table_id=d["table_id"], profile=p, r=d["r"], dims=DimensionPair(d["r"], d["r_prime"], d["c"]),
        structure=d["structure"], provenance=d["provenance"], stage=d["stage"], delta=d["delta"],
        multidegree=md_parse(d["multidegree"]), extras=dict(d["extras"]),
    )


def rejection_to_dict(rj: Rejection) -> dict[str, Any]:
    return {"stage": rj.stage, "candidate": rj.candidate, "reason": rj.reason}


def rejection_from_dict(d: dict[str, Any]) -> Rejection:
    return Rejection(d["stage"], dict(d["candidate"]), d["reason"])


def stage_to_dict(s: StageRecord, family: str) -> dict[str, Any]:
    return {"family": family, "stage": s.stage, "input_size": s.input_size,
            "solutions": len(s.solutions), "tuples": s.solutions}


def result_sections(doc: Document, res: ClassificationResult) -> None:
    add_section(doc, "rows", (row_to_dict(r) for r in res.rows))
    add_section(doc, "stages", (stage_to_dict(s, res.family) for s in res.stages))
    add_section(doc, "rejections", ({"family": res.family, **rejection_to_dict(r)} for r in res.rejections))
    add_section(doc, "notes", ({"family": res.family, "key": k, "value": v} for k, v in sorted(res.notes.items())))


def report_to_dict(rep: ValidationReport) -> dict[str, Any]:
    return {"table_id": rep.table_id, "ok": rep.ok,
            "checks": [{"id": c.id, "passed": c.passed, "value": c.value} for c in rep.checks]}


def report_from_dict(d: dict[str, Any]) -> ValidationReport:
    return ValidationReport(d["table_id"], [Check(c["id"], c["passed"], c["value"]) for c in d["checks"]])


def fourfold_to_dict(f: FourfoldRecord) -> dict[str, Any]:
    return {"source": f.source, "delta": f.delta, "stored_delta": f.stored_delta,
            "admissible": f.admissible,
            "cohomology": list(f.reference_cohomology) if f.reference_cohomology else None}


def fourfold_from_dict(d: dict[str, Any]) -> FourfoldRecord:
    coh = tuple(d["cohomology"]) if d["cohomology"] is not None else None
    return FourfoldRecord(d["source"], d["delta"], d["admissible"], d["stored_delta"], coh)  # type: ignore[arg-type]


def candidate_summary(cs: CandidateSet) -> dict[str, Any]:
    rec: dict[str, Any] = {"name": cs.name, "size": len(cs), "fields": ",".join(cs.fields),
                           "provenance": ",".join(cs.provenance)}
    if len(cs):
        for attr, label in (("lam", "lambda"), ("g", "g"), ("nu", "nu")):
            if label in cs.fields:
                lo, hi = cs.field_range(attr)
                rec[f"{label}_range"] = f"{lo}..{hi}"
    return rec


def preliminary_to_dict(row: PreliminaryRow) -> dict[str, Any]:
    return row._asdict()


# -- encodings -------------------------------------------------------------


def to_json(doc: Document) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def from_json(text: str) -> Document:
    doc = json.loads(text)
    _check_schema(doc)
    return doc


def _check_schema(doc: Any) -> None:
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise FormatError(f"not a {SCHEMA} document")


def _cell(v: Any) -> str:
    return json.dumps(v, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def to_csv(doc: Document) -> str:
    """One line per field: ``section,index,key,value`` with JSON-encoded values."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "index", "key", "value"])
    w.writerow(["#schema", 0, "", _cell(doc["schema"])])
    for k, v in doc["metadata"].items():
        w.writerow(["#metadata", 0, k, _cell(v)])
    for name, records in doc["sections"].items():
        if not records:
            w.writerow([name, -1, "", ""])
        for i, rec in enumerate(records):
            if not rec:
                w.writerow([name, i, "", ""])
            for k, v in rec.items():
                w.writerow([name, i, k, _cell(v)])
    return buf.getvalue()


def from_csv(text: str) -> Document:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["section", "index", "key", "value"]:
        raise FormatError("missing CSV header")
    doc: Document = {"schema": None, "metadata": {}, "sections": {}}
    for section, index, key, value in rows[1:]:
        if section == "#schema":
            doc["schema"] = json.loads(value)
        elif section == "#metadata":
            doc["metadata"][key] = json.loads(value)
        else:
            recs = doc["sections"].setdefault(section, [])
            i = int(index)
            if i < 0:
                continue
            while len(recs) <= i:
                recs.append({})
            if key:
                recs[i][key] = json.loads(value)
    _check_schema(doc)
    return doc


_PIPE = re.compile(r"(?<!\\)\|")


def _md_cell(v: Any) -> str:
    return _cell(v).replace("|", "\\|")


def _md_uncell(s: str) -> Any:
    s = s.strip()
    if s == "":
        return _ABSENT
    return json.loads(s.replace("\\|", "|"))


_ABSENT = object()


def _md_table(records: list[dict[str, Any]]) -> list[str]:
    cols: list[str] = []
    for rec in records:
        cols.extend(k for k in rec if k not in cols)
    if not cols:
        return ["| |", "|---|"] + ["| |" for _ in records]
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for rec in records:
        lines.append("| " + " | ".join(_md_cell(rec[c]) if c in rec else "" for c in cols) + " |")
    return lines


def to_markdown(doc: Document) -> str:
    """Markdown tables, one per section; cells hold JSON literals."""
    out = [f"# {doc['schema']}", ""]
    out.append("## #metadata")
    out.append("")
    out.extend(_md_table([doc["metadata"]]))
    for name, records in doc["sections"].items():
        out.extend(["", f"## {name}", ""])
        out.extend(_md_table(records))
    return "\n".join(out) + "\n"


def _split(line: str) -> list[str]:
    parts = _PIPE.split(line.strip())
    return [p.strip() for p in parts[1:-1]]


def from_markdown(text: str) -> Document:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise FormatError("missing markdown title")
    doc: Document = {"schema": lines[0][2:].strip(), "metadata": {}, "sections": {}}
    i = 1
    while i < len(lines):
        line = lines[i]
        if line.startswith("## "):
            name = line[3:].strip()
            j = i + 1
            while j < len(lines) and not lines[j].startswith("|"):
                j += 1
            header = _split(lines[j]) if j < len(lines) else []
            j += 2  # header and rule
            records = []
            while j < len(lines) and lines[j].startswith("|"):
                cells = _split(lines[j])
                rec = {}
                for col, cell in zip(header, cells):
                    if not col:
                        continue
                    v = _md_uncell(cell)
                    if v is not _ABSENT:
                        rec[col] = v
                records.append(rec)
                j += 1
            if name == "#metadata":
                doc["metadata"] = records[0] if records else {}
            else:
                doc["sections"][name] = records
            i = j
        else:
            i += 1
    _check_schema(doc)
    return doc


ENCODERS = {"json": to_json, "csv": to_csv, "md": to_markdown}
DECODERS = {"json": from_json, "csv": from_csv, "md": from_markdown}


def dumps(doc: Document, fmt: str) -> str:
    return ENCODERS[fmt](doc)


def loads(text: str, fmt: str) -> Document:
    return DECODERS[fmt](text)
