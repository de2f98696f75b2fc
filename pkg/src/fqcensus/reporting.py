"""Report records and their JSON-lines / CSV serializations.

Counts are always written as decimal strings and rationals as "a/b", so
no consumer ever round-trips them through a float.
"""

from __future__ import annotations

import csv
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Any, Iterator

from .gf_core import FieldCtx

CSV_COLUMNS = (
    "command", "p", "e", "modulus", "n", "k", "l", "m",
    "oracle_count", "formula_value", "predicted", "observed", "match",
    "elapsed_ms", "shards",
    # extension columns, empty unless the command fills them
    "total", "count_completable", "count_pencil", "count_reachable", "count_simple", "note",
)

FIXED_TIMING_ENV = "FQCENSUS_FIXED_TIMING"


def fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fmt_value(x: int | Fraction | None) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return fmt_rational(x)
    return str(x)


@dataclass
class CensusReport:
    command: str
    params: dict[str, Any]
    oracle_count: str | None = None
    formula_value: str | None = None
    predicted: str | None = None
    observed: str | None = None
    match: bool | None = None
    elapsed_ms: int = 0
    shards: int = 1
    total: str | None = None
    counts: dict[str, str] | None = None
    counterexample: list | None = None
    note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"command": self.command, "params": self.params}
        for key in ("oracle_count", "formula_value", "predicted", "observed", "match"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["elapsed_ms"] = self.elapsed_ms
        out["shards"] = self.shards
        for key in ("total", "counts", "counterexample", "note"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_csv_row(self) -> list[str]:
        p = self.params
        counts = self.counts or {}

        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [
            self.command,
            cell(p.get("p")),
            cell(p.get("e")),
            " ".join(str(c) for c in p["modulus"]) if "modulus" in p else "",
            cell(p.get("n")),
            cell(p.get("k")),
            cell(p.get("l")),
            cell(p.get("m")),
            cell(self.oracle_count),
            cell(self.formula_value),
            cell(self.predicted),
            cell(self.observed),
            cell(self.match),
            cell(self.elapsed_ms),
            cell(self.shards),
            cell(self.total),
            cell(counts.get("completable")),
            cell(counts.get("pencil")),
            cell(counts.get("reachable")),
            cell(counts.get("simple")),
            cell(self.note),
        ]


def field_params(ctx: FieldCtx, **dims: int | None) -> dict[str, Any]:
    params: dict[str, Any] = ctx.describe()
    params.update({key: value for key, value in dims.items() if value is not None})
    return params


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def ms(self) -> int:
        if os.environ.get(FIXED_TIMING_ENV):
            return 0
        return int(round((time.perf_counter() - self.start) * 1000))


class ReportWriter:
    """Streams reports as JSON lines or CSV (header first)."""

    def __init__(self, stream: IO[str], fmt: str = "json"):
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(CSV_COLUMNS)

    def write(self, report: CensusReport) -> None:
        if self._csv is not None:
            self._csv.writerow(report.to_csv_row())
        else:
            self.stream.write(report.to_json() + "\n")
        self.stream.flush()


@contextmanager
def open_writer(out: str | None, fmt: str, stdout: IO[str]) -> Iterator[ReportWriter]:
    if out is None:
        yield ReportWriter(stdout, fmt)
        return
    with open(out, "w", newline="") as fh:
        yield ReportWriter(fh, fmt)
