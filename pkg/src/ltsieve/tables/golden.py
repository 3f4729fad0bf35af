"""Golden table rows: loading, errata, and per-row validation."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from ..itypes import strict_violations, tmax
from ..model import (CASE_FIELDS, IntersectionType, ParameterSet, TypeStringError,
                     parameter_violations)

HEADER = ["table", "line", "case", "d", "c", "x", "y", "gamma", "delta",
          "kv", "kr", "bv", "br", "itype", "tmax", "reference"]
INT_COLUMNS = ["table", "line", "case"] + list(CASE_FIELDS) + ["tmax"]
EMBEDDED = {"table1": "table1.csv", "table2": "table2.csv"}
TABLE_KR = {1: 10, 2: 9}


class GoldenFormatError(ValueError):
    def __init__(self, source: str, row: int, column: str, message: str):
        super().__init__(f"{source}: row {row}, column {column!r}: {message}")
        self.source = source
        self.row = row
        self.column = column


@dataclass(frozen=True)
class GoldenRow:
    table: int
    line: int
    case_id: int
    d: int
    c: int
    x: int
    y: int
    gamma: int
    delta: int
    kv: int
    kr: int
    bv: int
    br: int
    itype: str
    tmax: int
    reference: str = ""
    errata: tuple[str, ...] = ()
    reconstructed: bool = False

    def key(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in CASE_FIELDS)

    def fields14(self) -> dict[str, int]:
        out = {name: getattr(self, name) for name in CASE_FIELDS}
        out.update(k=self.kv * self.kr, v=self.bv * self.kv,
                   r=self.kr * self.br, b=self.bv * self.br)
        return out

    def parameter_set(self) -> ParameterSet:
        return ParameterSet.from_table(*self.key())

    def intersection_type(self) -> IntersectionType:
        return IntersectionType.parse(self.itype)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("ltsieve.tables") / "data" / name))


def _read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != HEADER:
            raise GoldenFormatError(str(path), 1, "<header>",
                                    f"expected {','.join(HEADER)}, got {reader.fieldnames}")
        return list(reader)


def _parse_rows(raw: Sequence[dict[str, str]], source: str) -> list[GoldenRow]:
    rows: list[GoldenRow] = []
    last_case: dict[int, int] = {}
    seen: set[tuple[int, int]] = set()
    for n, rec in enumerate(raw, start=2):
        vals: dict[str, int] = {}
        for col in INT_COLUMNS:
            text = (rec.get(col) or "").strip()
            if col == "case" and not text:
                table = vals["table"]
                if table not in last_case:
                    raise GoldenFormatError(source, n, col, "blank case on the first row")
                vals[col] = last_case[table]
                continue
            try:
                vals[col] = int(text)
            except ValueError:
                raise GoldenFormatError(source, n, col, f"not an integer: {text!r}") from None
        itype = (rec.get("itype") or "").strip()
        try:
            IntersectionType.parse(itype)
        except (TypeStringError, ValueError) as exc:
            raise GoldenFormatError(source, n, "itype", str(exc)) from None
        ident = (vals["table"], vals["line"])
        if ident in seen:
            raise GoldenFormatError(source, n, "line", f"duplicate (table, line) {ident}")
        seen.add(ident)
        last_case[vals["table"]] = vals["case"]
        rows.append(GoldenRow(vals["table"], vals["line"], vals["case"],
                              *(vals[f] for f in CASE_FIELDS),
                              itype=itype, tmax=vals["tmax"],
                              reference=(rec.get("reference") or "").strip()))
    return rows


@dataclass(frozen=True)
class Erratum:
    table: int
    line: int
    action: str
    field: str
    printed: str
    corrected: str
    note: str


def load_errata(path: str | Path | None = None) -> list[Erratum]:
    path = Path(path) if path else _data_path("errata.csv")
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for n, rec in enumerate(csv.DictReader(fh), start=2):
            if rec["action"] not in ("replace", "insert"):
                raise GoldenFormatError(str(path), n, "action", f"unknown action {rec['action']!r}")
            out.append(Erratum(int(rec["table"]), int(rec["line"]), rec["action"], rec["field"],
                               rec["printed"], rec["corrected"], rec["note"]))
    return out


def apply_errata(rows: Iterable[GoldenRow], errata: Iterable[Erratum]) -> list[GoldenRow]:
    by_id = {(r.table, r.line): r for r in rows}
    for e in errata:
        ident = (e.table, e.line)
        if e.action == "insert":
            if ident in by_id:
                raise ValueError(f"erratum inserts existing row {ident}")
            kv = dict(part.split("=", 1) for part in e.corrected.split(";"))
            ints = {k: int(v) for k, v in kv.items() if k != "itype"}
            by_id[ident] = GoldenRow(e.table, e.line, ints["case"],
                                     *(ints[f] for f in CASE_FIELDS),
                                     itype=kv["itype"], tmax=ints["tmax"],
                                     errata=(e.note,), reconstructed=True)
            continue
        if ident not in by_id:
            # the table being loaded does not contain this line
            continue
        row = by_id[ident]
        current = getattr(row, e.field)
        if str(current) != e.printed:
            raise ValueError(f"erratum for {ident} expects {e.field}={e.printed!r}, found {current!r}")
        new = type(current)(e.corrected) if not isinstance(current, str) else e.corrected
        by_id[ident] = replace(row, **{e.field: new}, errata=row.errata + (e.note,))
    return sorted(by_id.values(), key=lambda r: (r.table, r.line))


def load_golden(source: str | Path = "all", errata: bool | str | Path = True) -> list[GoldenRow]:
    """Load golden rows from an embedded table id ('table1', 'table2', 'all') or a CSV path.

    Errata are applied by default; pass ``errata=False`` for the rows as printed.
    """
    if str(source) == "all":
        raw = _read_csv(_data_path("table1.csv")) + _read_csv(_data_path("table2.csv"))
        name = "embedded tables"
    elif str(source) in EMBEDDED:
        raw = _read_csv(_data_path(EMBEDDED[str(source)]))
        name = str(source)
    else:
        raw = _read_csv(Path(source))
        name = str(source)
    rows = _parse_rows(raw, name)
    if errata is False:
        return rows
    tables = {r.table for r in rows}
    fixes = [e for e in load_errata(None if errata is True else errata) if e.table in tables]
    return apply_errata(rows, fixes)


def group_cases(rows: Iterable[GoldenRow]) -> dict[tuple[int, int], list[GoldenRow]]:
    out: dict[tuple[int, int], list[GoldenRow]] = {}
    for r in rows:
        out.setdefault((r.table, r.case_id), []).append(r)
    return out


@dataclass
class RowValidation:
    row: GoldenRow
    identity_violations: list[str] = field(default_factory=list)
    type_violations: list[str] = field(default_factory=list)
    strict_failures: list[str] = field(default_factory=list)
    budget_ok: bool = True
    tmax_recomputed: int | None = None

    @property
    def tmax_ok(self) -> bool:
        return self.tmax_recomputed == self.row.tmax

    @property
    def arithmetic_ok(self) -> bool:
        """Identities, both sum equations and the size bound (class budget excluded)."""
        return not self.identity_violations and not self.type_violations


def validate_golden(rows: Iterable[GoldenRow]) -> list[RowValidation]:
    out = []
    for row in rows:
        rec = RowValidation(row)
        f = row.fields14()
        rec.identity_violations = parameter_violations(f)
        t = row.intersection_type()
        if t.line_size != f["k"]:
            rec.type_violations.append(f"sum i*d_i = {t.line_size} != k = {f['k']}")
        if t.inner_pairs != row.x:
            rec.type_violations.append(f"sum C(i,2)*d_i = {t.inner_pairs} != x = {row.x}")
        bound = min(f["k"], row.c)
        if any(i > bound for i in t.spectrum):
            rec.type_violations.append(f"intersection size above min(k,c) = {bound}")
        if not rec.identity_violations:
            rec.strict_failures = strict_violations(row.parameter_set(), t)
        rec.budget_ok = t.classes_met <= row.d
        if f["d"] >= 2 and f["b"] >= 1:
            rec.tmax_recomputed = tmax(row.d, f["b"], t)
        out.append(rec)
    return out
