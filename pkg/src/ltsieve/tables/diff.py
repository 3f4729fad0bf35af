"""Set-diff generated cases and types against golden rows."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..enumerator import enumerate_cases
from ..itypes import STRICT, TypeProfile, TypeSearchLimit, enumerate_types
from ..model import CASE_FIELDS, CaseRecord, LineRecord, ParameterSet
from .golden import GoldenRow, group_cases, validate_golden

SCHEMA_VERSION = 1


def generate_cases(kr: int, profile: TypeProfile = STRICT,
                   require_types: bool = True) -> list[CaseRecord]:
    """Enumerate cases for ``kr`` and attach their generated types."""
    out = []
    for p in enumerate_cases(kr, require_types, profile).cases:
        try:
            lines = tuple(enumerate_types(p, profile))
            complete = True
        except TypeSearchLimit:
            lines, complete = (), False
        out.append(CaseRecord(p, lines, types_complete=complete))
    return out


@dataclass
class RowIssue:
    line: int
    itype: str
    reasons: list[str]

    def as_json(self) -> dict:
        return {"line": self.line, "itype": self.itype, "reasons": self.reasons}


@dataclass
class CaseDiff:
    key: tuple[int, ...]
    table: int
    case_id: int
    validation_only: bool = False
    missing_rows: list[str] = field(default_factory=list)
    extra_rows: list[tuple[str, int]] = field(default_factory=list)
    rows_failing_strict: list[RowIssue] = field(default_factory=list)
    tmax_mismatches: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.missing_rows or self.extra_rows or self.tmax_mismatches)

    def as_json(self) -> dict:
        return {
            "case": dict(zip(CASE_FIELDS, self.key)),
            "table": self.table,
            "case_id": self.case_id,
            "validation_only": self.validation_only,
            "missing_rows": self.missing_rows,
            "extra_rows": [{"itype": s, "tmax": t} for s, t in self.extra_rows],
            "rows_failing_strict": [r.as_json() for r in self.rows_failing_strict],
            "tmax_mismatches": [{"itype": s, "golden": g, "generated": n}
                                for s, g, n in self.tmax_mismatches],
        }


@dataclass
class DiffReport:
    kr: int
    profile: str
    missing_cases: list[tuple[int, ...]] = field(default_factory=list)
    extra_cases: list[tuple[int, ...]] = field(default_factory=list)
    case_diffs: list[CaseDiff] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.missing_cases or self.extra_cases) and all(c.empty for c in self.case_diffs)

    def as_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kr": self.kr,
            "profile": self.profile,
            "missing_cases": [dict(zip(CASE_FIELDS, k)) for k in self.missing_cases],
            "extra_cases": [dict(zip(CASE_FIELDS, k)) for k in self.extra_cases],
            "case_diffs": [c.as_json() for c in self.case_diffs
                           if not c.empty or c.rows_failing_strict],
        }

    def as_text(self) -> str:
        out = [f"diff kr={self.kr} profile={self.profile}",
               f"missing cases: {len(self.missing_cases)}"]
        out += [f"  missing {k}" for k in self.missing_cases]
        out.append(f"extra cases: {len(self.extra_cases)}")
        out += [f"  extra {k}" for k in self.extra_cases]
        for c in self.case_diffs:
            tag = f"table {c.table} case {c.case_id}"
            if c.validation_only:
                out.append(f"{tag}: types not generated (resource guard); validation only")
            for s in c.missing_rows:
                out.append(f"{tag}: golden row {s} not generated")
            for s, t in c.extra_rows:
                out.append(f"{tag}: generated {s} (t_max {t}) not in golden")
            for issue in c.rows_failing_strict:
                out.append(f"{tag}: line {issue.line} {issue.itype} fails strict: "
                           + "; ".join(issue.reasons))
            for s, g, n in c.tmax_mismatches:
                out.append(f"{tag}: {s} t_max golden {g} vs generated {n}")
        return "\n".join(out) + "\n"


def diff_cases(generated: Sequence[CaseRecord], golden: Iterable[GoldenRow],
               profile: TypeProfile = STRICT, kr: int | None = None) -> DiffReport:
    golden = list(golden)
    krs = {r.kr for r in golden} | {c.params.kr for c in generated}
    if kr is not None:
        krs.add(kr)
    if len(krs) > 1:
        raise ValueError(f"kr mismatch between inputs: {sorted(krs)}")
    report = DiffReport(krs.pop() if krs else (kr or 0), profile.mode)
    checks = {(v.row.table, v.row.line): v for v in validate_golden(golden)}
    gen_by_key = {c.params.key(): c for c in generated}
    gold_cases = group_cases(golden)
    gold_keys = {rows[0].key() for rows in gold_cases.values()}
    report.missing_cases = sorted(gold_keys - gen_by_key.keys())
    report.extra_cases = sorted(gen_by_key.keys() - gold_keys)
    for (table, case_id), rows in sorted(gold_cases.items()):
        key = rows[0].key()
        cd = CaseDiff(key, table, case_id)
        for r in rows:
            reasons = checks[(r.table, r.line)].strict_failures
            if reasons:
                cd.rows_failing_strict.append(RowIssue(r.line, r.itype, list(reasons)))
        rec = gen_by_key.get(key)
        if rec is None:
            report.case_diffs.append(cd)
            continue
        if not rec.types_complete:
            cd.validation_only = True
            report.case_diffs.append(cd)
            continue
        gen = {str(line.itype): line.tmax for line in rec.lines}
        compared = [r for r in rows
                    if profile.mode == "paper" or not checks[(r.table, r.line)].strict_failures]
        gold = {str(r.intersection_type()): r.tmax for r in compared}
        cd.missing_rows = sorted(set(gold) - set(gen))
        cd.extra_rows = sorted((s, gen[s]) for s in set(gen) - set(gold))
        cd.tmax_mismatches = sorted((s, gold[s], gen[s]) for s in set(gold) & set(gen)
                                    if gold[s] != gen[s])
        report.case_diffs.append(cd)
    return report


def golden_as_generated(golden: Iterable[GoldenRow]) -> list[CaseRecord]:
    """Treat golden rows as a generated case set (used for self-diff checks)."""
    out = []
    for rows in group_cases(golden).values():
        p = ParameterSet.from_table(*rows[0].key())
        lines = tuple(LineRecord(p, r.intersection_type(), r.tmax) for r in rows)
        out.append(CaseRecord(p, lines))
    return out
