"""Candidate-set files and the on-disk cache.

A candidate file is plain text::

    # birclass-candidates/1 name=Gamma6_4237 constraints=castelnuovo,hodge,... fields=lambda,g,nu,Delta,d,a
    11 7 0 8 2 3
    ...

one space-separated integer record per line, in canonical order.
"""
from __future__ import annotations

import hashlib
import os
from pathlib import Path
from typing import Callable, Iterable

from .candidates import CandidateSet, profile_from_record

SCHEMA = "birclass-candidates/1"
CACHE_ENV = "BIRCLASS_CACHE_DIR"


class CandidateFileError(ValueError):
    pass


def format_records(name: str, constraints: Iterable[str], fields: Iterable[str],
                   records: Iterable[Iterable[int]]) -> str:
    header = f"# {SCHEMA} name={name} constraints={','.join(constraints)} fields={','.join(fields)}"
    lines = [header] + [" ".join(str(v) for v in rec) for rec in records]
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> tuple[dict[str, str], list[tuple[int, ...]]]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {SCHEMA} "):
        raise CandidateFileError(f"missing '{SCHEMA}' header")
    meta = dict(tok.split("=", 1) for tok in lines[0][2 + len(SCHEMA):].split())
    width = len(meta.get("fields", "").split(","))
    recs = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = tuple(int(x) for x in line.split())
        except ValueError as exc:
            raise CandidateFileError(f"line {i}: {exc}") from None
        if len(rec) != width:
            raise CandidateFileError(f"line {i}: expected {width} fields, got {len(rec)}")
        recs.append(rec)
    return meta, recs


def dumps(cs: CandidateSet) -> str:
    return format_records(cs.name, cs.provenance, cs.fields, cs.records())


def loads(text: str) -> CandidateSet:
    meta, recs = parse_records(text)
    fields = tuple(meta["fields"].split(","))
    constraints = tuple(c for c in meta.get("constraints", "").split(",") if c)
    return CandidateSet(meta["name"], tuple(profile_from_record(r, fields) for r in recs),
                        constraints, fields)


def write(cs: CandidateSet, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(cs), encoding="utf-8")


def read(path: str | os.PathLike) -> CandidateSet:
    return loads(Path(path).read_text(encoding="utf-8"))


def cache_key(name: str, constraints: Iterable[str]) -> str:
    h = hashlib.sha256(f"{SCHEMA}|{name}|{','.join(constraints)}".encode()).hexdigest()
    return h[:16]


def cached(name: str, constraints: Iterable[str], build: Callable[[], CandidateSet]) -> CandidateSet:
    """Return ``build()``, going through ``$BIRCLASS_CACHE_DIR`` when it is set.

    A cache file that fails to parse is rebuilt rather than trusted.
    """
    root = os.environ.get(CACHE_ENV)
    if not root:
        return build()
    constraints = tuple(constraints)
    path = Path(root) / f"{name}-{cache_key(name, constraints)}.txt"
    if path.exists():
        try:
            return read(path)
        except (CandidateFileError, KeyError):
            pass
    cs = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    write(cs, tmp)
    tmp.replace(path)
    return cs
