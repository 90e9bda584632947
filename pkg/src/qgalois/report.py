"""Check bookkeeping shared by all verifiers, with text and JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .literals import format_value

SCHEMA_VERSION = 1
MAX_SAMPLES = 3


def _text(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ", ".join(_text(x) for x in v) + ")"
    return format_value(v)


@dataclass
class Check:
    name: str
    cases: int = 0
    failed: int = 0
    samples: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.failed == 0 else "fail"

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "cases": self.cases,
             "failed": self.failed}
        if self.samples:
            d["witnesses"] = [dict(witness=w, lhs=l, rhs=r) for w, l, r in self.samples]
        return d


class Report:
    """Ordered collection of named checks plus a table of derived values."""

    def __init__(self, title: str = "", config: dict | None = None):
        self.title = title
        self.config = dict(config or {})
        self._checks: dict[str, Check] = {}
        self.table: list[tuple[str, str]] = []
        self.timing: dict[str, float] = {}

    # -- recording --------------------------------------------------------
    def _get(self, name: str) -> Check:
        c = self._checks.get(name)
        if c is None:
            c = self._checks[name] = Check(name)
        return c

    def expect(self, name: str, witness, lhs, rhs) -> bool:
        """Record one instance of ``lhs == rhs`` (exact equality)."""
        c = self._get(name)
        c.cases += 1
        if lhs == rhs:
            return True
        c.failed += 1
        if len(c.samples) < MAX_SAMPLES:
            c.samples.append((_text(witness), _text(lhs), _text(rhs)))
        return False

    def expect_true(self, name: str, witness, ok: bool, detail: str = "") -> bool:
        c = self._get(name)
        c.cases += 1
        if ok:
            return True
        c.failed += 1
        if len(c.samples) < MAX_SAMPLES:
            c.samples.append((_text(witness), detail or "false", "true"))
        return False

    def touch(self, name: str) -> None:
        self._get(name)

    def add_row(self, name: str, value) -> None:
        self.table.append((name, _text(value)))

    def merge(self, other: "Report") -> "Report":
        for c in other.checks:
            mine = self._get(c.name)
            mine.cases += c.cases
            mine.failed += c.failed
            room = MAX_SAMPLES - len(mine.samples)
            mine.samples.extend(c.samples[:max(room, 0)])
        self.table.extend(other.table)
        self.timing.update(other.timing)
        return self

    # -- queries ----------------------------------------------------------
    @property
    def checks(self) -> list[Check]:
        return list(self._checks.values())

    def check(self, name: str) -> Check:
        return self._checks[name]

    def __contains__(self, name: str) -> bool:
        return name in self._checks

    @property
    def failures(self) -> int:
        return sum(c.failed for c in self._checks.values())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def failed_checks(self) -> list[str]:
        return [c.name for c in self._checks.values() if c.failed]

    # -- rendering --------------------------------------------------------
    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "config": self.config,
            "status": "pass" if self.passed else "fail",
            "failures": self.failures,
            "checks": [c.to_dict() for c in self._checks.values()],
            "table": [{"name": k, "value": v} for k, v in self.table],
        }
        if include_timing:
            d["timing"] = {k: round(v, 3) for k, v in sorted(self.timing.items())}
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, ensure_ascii=False) + "\n"

    def to_text(self, include_timing: bool = True) -> str:
        lines = []
        if self.title:
            lines.append(self.title)
        if self.config:
            lines.append("config: " + ", ".join(f"{k}={v}" for k, v in self.config.items()))
        if self._checks:
            width = max(len(c.name) for c in self._checks.values())
            for c in self._checks.values():
                lines.append(f"  [{c.status.upper():4}] {c.name:<{width}}  "
                             f"{c.cases - c.failed}/{c.cases}")
                for w, l, r in c.samples:
                    lines.append(f"         at {w}: {l}  !=  {r}")
        if self.table:
            lines.append("derived structure:")
            width = max(len(k) for k, _ in self.table)
            for k, v in self.table:
                lines.append(f"  {k:<{width}} = {v}")
        if include_timing and self.timing:
            lines.append("timing (s): " + ", ".join(
                f"{k}={v:.2f}" for k, v in sorted(self.timing.items())))
        if self._checks:
            lines.append(f"result: {'PASS' if self.passed else 'FAIL'} "
                         f"({self.failures} failed case(s))")
        return "\n".join(lines) + "\n"
