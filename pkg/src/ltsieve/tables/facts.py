"""Line-oriented facts file: ``table=1;case=2;rule=PrimeOrder;p=127;source=B;note=...``."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

RULES = ("PrimeOrder", "TmaxVsTransitivity", "RankForced2Transitive", "SylowFixLine",
         "FixedClassCongruence", "SmallLineSize", "External", "Survives")
REQUIRED = {
    "PrimeOrder": ("p", "source"),
    "TmaxVsTransitivity": ("t",),
    "RankForced2Transitive": ("side", "t"),
    "SylowFixLine": ("p",),
    "FixedClassCongruence": ("p", "f"),
    "SmallLineSize": (),
    "External": (),
    "Survives": (),
}
CHECKS = ("semiregular", "x8", "fixbound", "d1bound", "rank", "sylow")


class FactsError(ValueError):
    pass


@dataclass(frozen=True)
class FactsEntry:
    table: int
    case_id: int
    rule: str
    params: dict[str, str] = field(default_factory=dict)
    note: str = ""
    lineno: int = 0

    def int_param(self, name: str, d: int | None = None) -> int:
        """Integer parameter; ``d-N`` style values are resolved against ``d``."""
        raw = self.params[name]
        m = re.fullmatch(r"d\s*-\s*(\d+)", raw)
        if m:
            if d is None:
                raise FactsError(f"line {self.lineno}: {name}={raw} needs d")
            return d - int(m.group(1))
        try:
            return int(raw)
        except ValueError:
            raise FactsError(f"line {self.lineno}: {name}={raw!r} is not an integer") from None


def parse_facts(text: str, source: str = "<facts>") -> list[FactsEntry]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        kv: dict[str, str] = {}
        # note is free text and always last, so it may contain ';'
        head, sep, note_text = line.partition(";note=")
        if sep:
            kv["note"] = note_text.strip()
        for part in head.split(";"):
            if "=" not in part:
                raise FactsError(f"{source}:{lineno}: expected key=value, got {part!r}")
            key, value = part.split("=", 1)
            kv[key.strip()] = value.strip()
        for key in ("table", "case", "rule"):
            if key not in kv:
                raise FactsError(f"{source}:{lineno}: missing {key}")
        rule = kv.pop("rule")
        if rule not in RULES:
            raise FactsError(f"{source}:{lineno}: unknown rule {rule!r}")
        try:
            table, case_id = int(kv.pop("table")), int(kv.pop("case"))
        except ValueError:
            raise FactsError(f"{source}:{lineno}: table and case must be integers") from None
        note = kv.pop("note", "")
        missing = [k for k in REQUIRED[rule] if k not in kv]
        if missing:
            raise FactsError(f"{source}:{lineno}: rule {rule} needs {', '.join(missing)}")
        if "check" in kv and kv["check"] not in CHECKS:
            raise FactsError(f"{source}:{lineno}: unknown check {kv['check']!r}")
        out.append(FactsEntry(table, case_id, rule, kv, note, lineno))
    return out


def load_facts(path: str | Path | None = None) -> list[FactsEntry]:
    if path is None:
        text = (resources.files("ltsieve.tables") / "data" / "facts.txt").read_text("utf-8")
        return parse_facts(text, "facts.txt")
    path = Path(path)
    return parse_facts(path.read_text("utf-8"), str(path))
