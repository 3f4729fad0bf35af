"""Re-check each case's recorded elimination reason against the filters."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .. import filters
from ..model import FilterVerdict, IntersectionType, Leg, Outcome, ParameterSet
from .facts import FactsEntry, FactsError
from .golden import GoldenRow, group_cases

SCHEMA_VERSION = 1

VERIFIED = "Verified"
EXTERNAL = "External"
MISMATCH = "Mismatch"
SURVIVES = "Survives"
UNREVIEWED = "Unreviewed"
# precedence when several entries describe one case
_RANK = {MISMATCH: 0, VERIFIED: 1, EXTERNAL: 2, SURVIVES: 3}


@dataclass
class EntryResult:
    entry: FactsEntry
    verdict: str
    checks: list[FilterVerdict] = field(default_factory=list)
    message: str = ""

    def as_json(self) -> dict:
        return {"rule": self.entry.rule, "params": dict(self.entry.params),
                "note": self.entry.note, "verdict": self.verdict, "message": self.message,
                "checks": [c.as_json() for c in self.checks]}


@dataclass
class CaseVerdict:
    table: int
    case_id: int
    key: tuple[int, ...]
    verdict: str
    entries: list[EntryResult] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"table": self.table, "case_id": self.case_id, "key": list(self.key),
                "verdict": self.verdict, "entries": [e.as_json() for e in self.entries]}


@dataclass
class ReviewReport:
    cases: list[CaseVerdict]

    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(c.verdict for c in self.cases).items()))

    def surviving(self, table: int | None = None) -> list[int]:
        return [c.case_id for c in self.cases
                if c.verdict == SURVIVES and (table is None or c.table == table)]

    def mismatches(self) -> list[CaseVerdict]:
        return [c for c in self.cases if c.verdict == MISMATCH]

    def as_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "counts": self.counts(),
                "surviving": [[c.table, c.case_id] for c in self.cases if c.verdict == SURVIVES],
                "cases": [c.as_json() for c in self.cases]}

    def as_text(self) -> str:
        out = []
        for c in self.cases:
            rules = ", ".join(e.entry.rule for e in c.entries) or "-"
            out.append(f"table {c.table} case {c.case_id:>3}: {c.verdict:<10} [{rules}]")
            for e in c.entries:
                if e.verdict == MISMATCH:
                    out.append(f"    mismatch: {e.message}")
        counts = ", ".join(f"{k}={v}" for k, v in self.counts().items())
        out.append(f"summary: {counts}")
        return "\n".join(out) + "\n"


def _single(name: str, legs: list[Leg], ok: bool, inputs: dict) -> FilterVerdict:
    outcome = Outcome.CONTRADICTION if ok else Outcome.CONSISTENT
    reason = "" if ok else "fails: " + ", ".join(leg.label for leg in legs if not leg.holds)
    return FilterVerdict(name, inputs, outcome, tuple(legs), reason=reason)


def _prime_order(e: FactsEntry, ps: ParameterSet) -> EntryResult:
    p = e.int_param("p")
    try:
        w = filters.PrimeWitness(p, e.params["source"])
    except ValueError as exc:
        return EntryResult(e, MISMATCH, message=str(exc))
    checks = [filters.prime_order_filter(ps, w)]
    degree = {"Top": ps.d, "Bottom": ps.c}.get(w.source)
    if degree is not None:
        leg = Leg.check(f"p <= degree of the {w.source.lower()} group", p, "<=", degree)
        checks.append(_single("witness_degree", [leg], leg.holds, {"p": p, "degree": degree}))
    bad = [c for c in checks if c.outcome != Outcome.CONTRADICTION]
    if bad:
        return EntryResult(e, MISMATCH, checks,
                           f"p = {p}: " + "; ".join(c.reason or c.rule_name for c in bad))
    return EntryResult(e, VERIFIED, checks)


def _sylow(e: FactsEntry, ps: ParameterSet, verdict_on_success: str) -> EntryResult:
    p = e.int_param("p")
    try:
        v = filters.sylow_fixline_filter(ps, p)
    except ValueError as exc:
        return EntryResult(e, MISMATCH, message=str(exc))
    if v.outcome != Outcome.CONTRADICTION:
        return EntryResult(e, MISMATCH, [v], f"p = {p}: {v.reason}")
    return EntryResult(e, verdict_on_success, [v])


def _tmax_rule(e: FactsEntry, ps: ParameterSet, rows: list[GoldenRow],
               pre: FilterVerdict | None = None) -> EntryResult:
    t = e.int_param("t", ps.d)
    v = filters.tmax_vs_transitivity(ps, [r.tmax for r in rows], t)
    checks = ([pre] if pre else []) + [v]
    if v.outcome != Outcome.CONTRADICTION:
        return EntryResult(e, MISMATCH, checks, f"some type has t_max >= {t}")
    return EntryResult(e, VERIFIED, checks)


def _rows_for(e: FactsEntry, rows: list[GoldenRow]) -> list[IntersectionType]:
    types = [r.intersection_type() for r in rows]
    if "itype" in e.params:
        want = IntersectionType.parse(e.params["itype"])
        if want not in types:
            raise FactsError(f"line {e.lineno}: type {e.params['itype']} is not a row of this case")
        return [want]
    return types


def _external(e: FactsEntry, ps: ParameterSet, rows: list[GoldenRow]) -> EntryResult:
    check = e.params.get("check")
    if check is None:
        # informational: the threshold is attached but not required to hold
        return EntryResult(e, EXTERNAL, [filters.semiregular_threshold(ps)],
                           "no arithmetic leg recorded")
    if check in ("semiregular", "x8"):
        v = filters.semiregular_threshold(ps)
        flag = "semiregular_forced" if check == "semiregular" else "x_le_8"
        if not v.flags[flag]:
            return EntryResult(e, MISMATCH, [v], f"{flag} is false")
        return EntryResult(e, EXTERNAL, [v])
    if check == "rank":
        return EntryResult(e, EXTERNAL, [filters.rank_flags(ps)])
    if check == "sylow":
        return _sylow(e, ps, EXTERNAL)
    types = _rows_for(e, rows)
    if check == "fixbound":
        relevant = [t for t in types if t.count(1) >= 2]
        vs = [filters.fix_bound_filter(ps, t) for t in relevant]
        if not vs or any(v.outcome != Outcome.CONTRADICTION for v in vs):
            return EntryResult(e, MISMATCH, vs, "fixed-point bound does not exclude d1 >= 2")
        return EntryResult(e, EXTERNAL, vs)
    # d1bound: the bound must cut down the list of types
    vs = [filters.d1_bound_filter(ps, t) for t in types]
    if not any(v.outcome == Outcome.CONTRADICTION for v in vs):
        return EntryResult(e, MISMATCH, vs, "d1 bound excludes no type")
    return EntryResult(e, EXTERNAL, vs)


def evaluate_entry(e: FactsEntry, rows: list[GoldenRow]) -> EntryResult:
    ps = rows[0].parameter_set()
    if e.rule == "Survives":
        return EntryResult(e, SURVIVES)
    if e.rule == "PrimeOrder":
        return _prime_order(e, ps)
    if e.rule == "SylowFixLine":
        return _sylow(e, ps, VERIFIED)
    if e.rule == "TmaxVsTransitivity":
        return _tmax_rule(e, ps, rows)
    if e.rule == "RankForced2Transitive":
        if e.params["side"] != "top":
            raise FactsError(f"line {e.lineno}: only side=top is supported")
        flags = filters.rank_flags(ps)
        if not flags.flags["top_2transitive_forced"]:
            return EntryResult(e, MISMATCH, [flags], "delta != 1, top group not forced 2-transitive")
        return _tmax_rule(e, ps, rows, flags)
    if e.rule == "FixedClassCongruence":
        p, cap = e.int_param("p"), e.int_param("f")
        vs = [filters.fixed_class_filter(t, p, cap) for t in _rows_for(e, rows)]
        if any(v.outcome != Outcome.CONTRADICTION for v in vs):
            return EntryResult(e, MISMATCH, vs, f"fixed classes mod {p} do not exceed {cap}")
        return EntryResult(e, EXTERNAL, vs)
    if e.rule == "SmallLineSize":
        leg = Leg.check("k <= 12", ps.k, "<=", 12)
        v = _single("small_line_size", [leg], leg.holds, {"k": ps.k})
        return EntryResult(e, EXTERNAL if leg.holds else MISMATCH, [v],
                           "" if leg.holds else f"k = {ps.k} is not small")
    return _external(e, ps, rows)


def review(golden: Iterable[GoldenRow], facts: Iterable[FactsEntry]) -> ReviewReport:
    cases = group_cases(golden)
    per_case: dict[tuple[int, int], list[FactsEntry]] = {}
    for e in facts:
        if (e.table, e.case_id) not in cases:
            raise FactsError(f"line {e.lineno}: unknown case table={e.table} case={e.case_id}")
        per_case.setdefault((e.table, e.case_id), []).append(e)
    out = []
    for ident, rows in sorted(cases.items()):
        results = [evaluate_entry(e, rows) for e in per_case.get(ident, [])]
        if not results:
            verdict = UNREVIEWED
        else:
            verdict = min((r.verdict for r in results), key=_RANK.__getitem__)
        out.append(CaseVerdict(ident[0], ident[1], rows[0].key(), verdict, results))
    return ReviewReport(out)
