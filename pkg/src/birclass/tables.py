"""Embedded reference tables (package data under ``data/``)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

TABLE_IDS = ("1", "2", "3", "4", "5", "preliminary")


@dataclass(frozen=True)
class TableRow:
    """One line of a classification table, normalised to a common shape."""

    table: str
    line: str
    r: int
    n: int
    d1: int
    d2: int
    a: int
    Delta: int
    lam: int
    g: int
    structure: str

    @property
    def table_id(self) -> str:
        return f"{self.table}:{self.line}"

    def numeric(self) -> tuple[int, ...]:
        return (self.r, self.n, self.d1, self.d2, self.a, self.Delta, self.lam, self.g)


@dataclass(frozen=True)
class Table2Row:
    id: str
    source: str
    kind: str
    delta: int
    cohomology: tuple[int, int, int]
    profile: tuple[int, int, int, int, int]  # (lambda, g, Delta, d, a)


@lru_cache(maxsize=None)
def _load(name: str) -> list[dict[str, Any]]:
    text = resources.files("birclass").joinpath(f"data/{name}.json").read_text(encoding="utf-8")
    return json.loads(text)["rows"]


@lru_cache(maxsize=None)
def classification_table(table: str) -> tuple[TableRow, ...]:
    if table not in ("1", "3", "4", "5"):
        raise KeyError(f"no classification table {table!r}")
    out = []
    for row in _load(f"table{table}"):
        out.append(TableRow(
            table=table, line=row["line"], r=row["r"], n=row["n"], d1=row["d1"], d2=row["d"],
            a=row["a"], Delta=row["Delta"], lam=row["lambda"], g=row["g"],
            structure=row["structure"],
        ))
    return tuple(out)


def table_row(table: str, line: str) -> TableRow:
    for row in classification_table(table):
        if row.line == line:
            return row
    raise KeyError(f"{table}:{line}")


@lru_cache(maxsize=None)
def table2() -> tuple[Table2Row, ...]:
    return tuple(
        Table2Row(
            id=row["id"], source=row["source"], kind=row["kind"], delta=row["delta"],
            cohomology=(row["h0_I3"], row["h0_N_P5"], row["h0_N_X"]),
            profile=(row["lambda"], row["g"], row["Delta"], row["d"], row["a"]),
        )
        for row in _load("table2")
    )


@lru_cache(maxsize=None)
def preliminary_table() -> tuple[tuple[str, int, int, int, int, int, int], ...]:
    return tuple(
        (row["case"], row["n"], row["r"], row["r_prime"], row["d1"], row["d2"], row["c"])
        for row in _load("preliminary")
    )
