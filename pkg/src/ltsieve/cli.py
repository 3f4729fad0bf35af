"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .enumerator import enumerate_cases
from .itypes import TypeProfile, TypeSearchLimit, enumerate_types, tmax
from .model import CASE_FIELDS, CaseRecord, IntersectionType, ParameterSet, TypeStringError
from .oracle import (SUPPORTED_Q, CyclicPartition, OracleError, build_plane, dump_plane,
                     verify_identities)
from .tables.diff import SCHEMA_VERSION, diff_cases
from .tables.facts import FactsError, load_facts
from .tables.golden import GoldenFormatError, group_cases, load_golden, validate_golden
from .tables.review import SURVIVES, UNREVIEWED, review

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
OUTPUT_DIR_ENV = "LTSIEVE_OUTPUT_DIR"
# table id shipped for each kr, and the cases expected to survive review
EMBEDDED_FOR_KR = {10: "table1", 9: "table2"}
EXPECTED_SURVIVORS = {10: [1, 4], 9: []}
# type sets are compared exactly up to this line size
SMALL_K = 60


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    kr: int | None = None
    profile: str = "strict"
    max_solutions: int = 100_000
    fmt: str = "text"
    golden: str | None = None
    facts: str | None = None
    output: str | None = None
    jobs: int = 1


def _types_for(args: tuple[ParameterSet, TypeProfile]) -> CaseRecord:
    p, profile = args
    try:
        return CaseRecord(p, tuple(enumerate_types(p, profile)))
    except TypeSearchLimit:
        return CaseRecord(p, (), types_complete=False)


def generate(cfg: RunConfig, require_types: bool = True) -> tuple[list[CaseRecord], list[ParameterSet]]:
    """Cases with their types, plus the cases whose existence check hit the guard."""
    profile = TypeProfile(cfg.profile, max_solutions=cfg.max_solutions)
    res = enumerate_cases(cfg.kr, require_types, profile)
    work = [(p, profile) for p in res.cases]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_types_for, work))  # map preserves input order
    else:
        records = [_types_for(w) for w in work]
    return records, res.unresolved


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        path = Path(cfg.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _markdown(records: Sequence[CaseRecord], with_types: bool) -> str:
    head = ["Case", "d*c", "(x, y)", "(gamma, delta)", "kv*kr", "bv*br"]
    if with_types:
        head = ["Line"] + head + ["intersection type", "t_max"]
    out = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    line_no = 0
    for n, rec in enumerate(records, start=1):
        p = rec.params
        cells = [str(n), f"{p.d}*{p.c}", f"({p.x}, {p.y})", f"({p.gamma}, {p.delta})",
                 f"{p.kv}*{p.kr}", f"{p.bv}*{p.br}"]
        if not with_types:
            out.append("| " + " | ".join(cells) + " |")
            continue
        for line in rec.lines or (None,):
            line_no += 1
            tail = [f"({line.itype})", str(line.tmax)] if line else ["(not generated)", "-"]
            out.append("| " + " | ".join([str(line_no)] + cells + tail) + " |")
    return "\n".join(out) + "\n"


def _case_dict(p: ParameterSet) -> dict:
    return {name: getattr(p, name) for name in CASE_FIELDS}


def cmd_enumerate(cfg: RunConfig, with_types: bool, raw: bool) -> int:
    records, unresolved = generate(cfg, require_types=not raw)
    guarded = [r.params for r in records if not r.types_complete] + list(unresolved)
    if cfg.fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "kr": cfg.kr, "profile": cfg.profile,
               "cases": [], "resource_guard": [_case_dict(p) for p in guarded]}
        for r in records:
            item = _case_dict(r.params)
            if with_types:
                item["types"] = [{"itype": str(line.itype), "tmax": line.tmax} for line in r.lines]
                item["types_complete"] = r.types_complete
            doc["cases"].append(item)
        text = _json(doc)
    elif cfg.fmt == "md":
        text = _markdown(records, with_types)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(CASE_FIELDS) + (["itype", "tmax"] if with_types else []))
        for r in records:
            base = [getattr(r.params, f) for f in CASE_FIELDS]
            if with_types:
                for line in r.lines:
                    w.writerow(base + [str(line.itype), line.tmax])
            else:
                w.writerow(base)
        text = buf.getvalue()
    _emit(cfg, text)
    if guarded:
        print("resource guard tripped for: " + ", ".join(str(p.key()) for p in guarded),
              file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


def cmd_types(cfg: RunConfig, case: Sequence[int]) -> int:
    matches = [p for p in enumerate_cases(cfg.kr, require_types=False).cases
               if p.key()[:len(case)] == tuple(case)]
    if not matches:
        raise UsageError(f"no parameter set with kr={cfg.kr} starts with {tuple(case)}")
    profile = TypeProfile(cfg.profile, max_solutions=cfg.max_solutions)
    out = []
    code = EXIT_OK
    for p in matches:
        try:
            lines = enumerate_types(p, profile)
        except TypeSearchLimit as exc:
            print(str(exc), file=sys.stderr)
            code = EXIT_GUARD
            continue
        out.append({**_case_dict(p), "types": [
            {"itype": str(line.itype), "tmax": line.tmax, "strict": line.strict} for line in lines]})
    if cfg.fmt == "json":
        text = _json({"schema_version": SCHEMA_VERSION, "profile": cfg.profile, "cases": out})
    else:
        rows = []
        for item in out:
            rows.append(" ".join(f"{k}={item[k]}" for k in CASE_FIELDS))
            rows += [f"  ({t['itype']})  t_max={t['tmax']}" for t in item["types"]]
        text = "\n".join(rows) + "\n"
    _emit(cfg, text)
    return code


def cmd_tmax(cfg: RunConfig, d: int, b: int, type_string: str) -> int:
    t = IntersectionType.parse(type_string)
    if d < 2 or b < 1:
        raise UsageError("need d >= 2 and b >= 1")
    _emit(cfg, f"{tmax(d, b, t)}\n")
    return EXIT_OK


def _golden_for(cfg: RunConfig):
    if cfg.golden:
        rows = load_golden(cfg.golden)
    elif cfg.kr in EMBEDDED_FOR_KR:
        rows = load_golden(EMBEDDED_FOR_KR[cfg.kr])
    else:
        raise UsageError(f"no embedded golden table for kr={cfg.kr}; pass --golden")
    if any(r.kr != cfg.kr for r in rows):
        raise UsageError(f"golden rows do not all have kr={cfg.kr}")
    return rows


def _facts_for(cfg: RunConfig, rows) -> list:
    tables = {r.table for r in rows}
    return [e for e in load_facts(cfg.facts) if e.table in tables]


def cmd_review(cfg: RunConfig) -> int:
    rows = _golden_for(cfg)
    report = review(rows, _facts_for(cfg, rows))
    _emit(cfg, _json(report.as_json()) if cfg.fmt == "json" else report.as_text())
    return EXIT_FAIL if report.mismatches() else EXIT_OK


def cmd_diff(cfg: RunConfig) -> int:
    rows = _golden_for(cfg)
    records, _ = generate(cfg)
    report = diff_cases(records, rows, TypeProfile(cfg.profile), kr=cfg.kr)
    _emit(cfg, _json(report.as_json()) if cfg.fmt == "json" else report.as_text())
    if any(not r.types_complete for r in records):
        return EXIT_GUARD
    return EXIT_FAIL if report.missing_cases else EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    rows = _golden_for(cfg)
    facts = _facts_for(cfg, rows)
    validation = validate_golden(rows)
    records, _ = generate(RunConfig("check", kr=cfg.kr, max_solutions=cfg.max_solutions,
                                    jobs=cfg.jobs))
    diff = diff_cases(records, rows, TypeProfile("strict"), kr=cfg.kr)
    rev = review(rows, facts)
    small = [c for c in diff.case_diffs if c.key[CASE_FIELDS.index("kv")] * cfg.kr <= SMALL_K]
    surviving = sorted(c.case_id for c in rev.cases if c.verdict == SURVIVES)
    conditions = {
        "no missing cases": not diff.missing_cases,
        "golden arithmetic": all(v.arithmetic_ok for v in validation),
        "t_max column": all(v.tmax_ok for v in validation),
        f"type sets for k <= {SMALL_K}": all(c.empty for c in small),
        "review has no mismatch": not rev.mismatches(),
        "every case reviewed": all(c.verdict != UNREVIEWED for c in rev.cases),
    }
    if cfg.kr in EXPECTED_SURVIVORS:
        conditions["surviving cases"] = surviving == EXPECTED_SURVIVORS[cfg.kr]
    budget = [v.row.line for v in validation if not v.budget_ok]
    if cfg.fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "kr": cfg.kr,
               "conditions": conditions, "surviving": surviving,
               "class_budget_flagged_lines": budget,
               "diff": diff.as_json(), "review": rev.as_json()}
        text = _json(doc)
    else:
        lines = [f"check kr={cfg.kr}: {len(rows)} golden rows, "
                 f"{len(group_cases(rows))} cases, {len(records)} generated cases"]
        lines += [f"  [{'PASS' if ok else 'FAIL'}] {name}" for name, ok in conditions.items()]
        lines.append(f"  surviving cases: {surviving}")
        lines.append(f"  class budget flagged (report only): {len(budget)} lines")
        for v in validation:
            for msg in v.identity_violations + v.type_violations:
                lines.append(f"  line {v.row.line}: {msg}")
            if not v.tmax_ok:
                lines.append(f"  line {v.row.line}: t_max {v.row.tmax} vs recomputed {v.tmax_recomputed}")
        text = "\n".join(lines) + "\n" + diff.as_text() + rev.as_text()
    _emit(cfg, text)
    return EXIT_OK if all(conditions.values()) else EXIT_FAIL


def cmd_oracle(cfg: RunConfig, q: int, classes: int, dump: str | None) -> int:
    if q not in SUPPORTED_Q:
        raise UsageError(f"unsupported q = {q}; supported: {', '.join(map(str, SUPPORTED_Q))}")
    plane = build_plane(q)
    try:
        part = CyclicPartition(classes, plane.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if dump:
        with open(dump, "w", encoding="utf-8") as fh:
            dump_plane(plane, fh)
    report = verify_identities(plane, part)
    doc: dict = {"schema_version": SCHEMA_VERSION, "q": q, "v": plane.v, "method": plane.method,
                 "difference_set": list(plane.D), "classes": classes, "status": report.status}
    if report.measurement is not None:
        m = report.measurement
        doc.update(params=m.params.as_dict(), itype=str(m.itype), tmax=m.tmax,
                   checks=[{"name": n, "lhs": a, "rhs": b} for n, a, b in report.checks
                           if not n.startswith("r_")])
        match = [r for r in load_golden() if r.key() == m.params.key()]
        doc["golden_match"] = [{"table": r.table, "line": r.line, "case": r.case_id,
                                "itype": r.itype, "same_type": r.intersection_type() == m.itype}
                               for r in match]
    else:
        doc["reason"] = report.reason
    if cfg.fmt == "json":
        text = _json(doc)
    else:
        lines = [f"PG(2,{q}) v={plane.v} ({plane.method}) D={list(plane.D)}",
                 f"partition mod {classes}: {report.status}"]
        if report.measurement is not None:
            m = report.measurement
            p = m.params
            lines.append(f"(d,c,x,y)=({p.d},{p.c},{p.x},{p.y}) (gamma,delta)=({p.gamma},{p.delta}) "
                         f"kv*kr={p.kv}*{p.kr} bv*br={p.bv}*{p.br}")
            lines.append(f"type ({m.itype}) t_max={m.tmax}")
            for g in doc["golden_match"]:
                tag = "same type" if g["same_type"] else "other type"
                lines.append(f"golden table {g['table']} line {g['line']} case {g['case']}: "
                             f"({g['itype']}) {tag}")
        else:
            lines.append(report.reason)
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK


def _kr(value: str) -> int:
    n = int(value)
    if n < 2:
        raise argparse.ArgumentTypeError("kr must be >= 2")
    return n


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _case_prefix(value: str) -> list[int]:
    try:
        return [int(x) for x in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers d,c,x,y") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltsieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json"), kr=True, default_fmt=None):
        if kr:
            p.add_argument("--kr", type=_kr, required=True)
        p.add_argument("--format", dest="fmt", choices=formats, default=default_fmt or formats[0])
        p.add_argument("--output", help=f"write here instead of stdout (relative to ${OUTPUT_DIR_ENV} if set)")

    def search_opts(p):
        p.add_argument("--profile", choices=("strict", "paper"), default="strict")
        p.add_argument("--max-solutions", type=_positive, default=100_000)
        p.add_argument("--jobs", type=_positive, default=1,
                       help="worker processes for per-case type search (1 = single-threaded)")

    p = sub.add_parser("enumerate", help="list parameter sets for a kr")
    common(p, ("csv", "json", "md"))
    search_opts(p)
    p.add_argument("--types", action="store_true", help="include one row per intersection type")
    p.add_argument("--raw", action="store_true", help="skip the type-existence requirement")

    p = sub.add_parser("types", help="intersection types of one case")
    common(p)
    search_opts(p)
    p.add_argument("--case", type=_case_prefix, required=True, help="d,c[,x,y,...] prefix")

    p = sub.add_parser("tmax", help="t_max of a type")
    common(p, ("text",), kr=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--type", dest="type_string", required=True)

    for name, helptext in (("check", "full audit against the golden table"),
                           ("review", "re-check the recorded elimination reasons"),
                           ("diff", "set-diff generated cases against the golden table")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--golden", help="golden CSV (default: the embedded table for kr)")
        if name != "diff":
            p.add_argument("--facts", help="facts file (default: embedded)")
        if name != "review":
            search_opts(p)

    p = sub.add_parser("oracle", help="build PG(2,q) and measure a cyclic partition")
    common(p, kr=False)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--classes", type=int, required=True, help="modulus m (d = m classes)")
    p.add_argument("--dump", help="write the plane as 'q v' then one line per line")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command, kr=getattr(args, "kr", None),
                    profile=getattr(args, "profile", "strict"),
                    max_solutions=getattr(args, "max_solutions", 100_000),
                    fmt=args.fmt, golden=getattr(args, "golden", None),
                    facts=getattr(args, "facts", None), output=args.output,
                    jobs=getattr(args, "jobs", 1))
    try:
        if args.command == "enumerate":
            return cmd_enumerate(cfg, args.types, args.raw)
        if args.command == "types":
            return cmd_types(cfg, args.case)
        if args.command == "tmax":
            return cmd_tmax(cfg, args.d, args.b, args.type_string)
        if args.command == "check":
            return cmd_check(cfg)
        if args.command == "review":
            return cmd_review(cfg)
        if args.command == "diff":
            return cmd_diff(cfg)
        return cmd_oracle(cfg, args.q, args.classes, args.dump)
    except (UsageError, TypeStringError, GoldenFormatError, FactsError,
            FileNotFoundError, IsADirectoryError) as exc:
        print(f"ltsieve {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleError as exc:
        print(f"ltsieve oracle: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
