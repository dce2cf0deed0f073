"""Check reports: per-law verdicts with witnesses, serializable as ``report/1``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = "report/1"

# witnesses kept per law; the count of all failing instances is kept separately
WITNESS_LIMIT = 5


def _plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples/sets into JSON-ready values."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_plain(v) for v in value), key=repr)
    return value


@dataclass
class CheckReport:
    """Verdicts of a battery of named laws.

    ``results`` maps each law to True (holds everywhere checked) or False.
    ``reason`` is set for outcomes that are not plain law failures, e.g.
    ``"malformed-table"`` or ``"budget-exhausted"``.
    """

    subject: str
    results: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, list] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    reason: str | None = None

    def record(self, law: str, failures: list | None = None, total: int | None = None) -> bool:
        failures = failures or []
        ok = not failures and not total
        self.results[law] = self.results.get(law, True) and ok
        if failures:
            self.witnesses.setdefault(law, []).extend(failures[: WITNESS_LIMIT])
            del self.witnesses[law][WITNESS_LIMIT:]
        n = total if total is not None else len(failures)
        if n:
            self.counts[law] = self.counts.get(law, 0) + n
        return ok

    def check(self, law: str, holds: bool, witness: Any = None) -> bool:
        return self.record(law, [] if holds else [witness])

    def merge(self, other: CheckReport, prefix: str = "") -> CheckReport:
        for law, ok in other.results.items():
            name = prefix + law
            self.results[name] = self.results.get(name, True) and ok
            if other.witnesses.get(law):
                self.witnesses.setdefault(name, []).extend(other.witnesses[law])
                del self.witnesses[name][WITNESS_LIMIT:]
            if other.counts.get(law):
                self.counts[name] = self.counts.get(name, 0) + other.counts[law]
        if other.reason and not self.reason:
            self.reason = other.reason
        return self

    def __getitem__(self, law: str) -> bool:
        return self.results[law]

    @property
    def ok(self) -> bool:
        return self.reason is None and all(self.results.values())

    @property
    def failed(self) -> list[str]:
        return [law for law, ok in self.results.items() if not ok]

    @property
    def verdict(self) -> str:
        if self.reason is not None:
            return self.reason
        return "pass" if self.ok else "fail"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "subject": self.subject,
            "verdict": self.verdict,
            "results": dict(sorted(self.results.items())),
            "counts": dict(sorted(self.counts.items())),
            "witnesses": _plain(dict(sorted(self.witnesses.items()))),
            "data": _plain(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def pretty(self) -> str:
        lines = [f"{self.subject}: {self.verdict}"]
        for law, ok in sorted(self.results.items()):
            mark = "ok  " if ok else "FAIL"
            extra = ""
            if not ok and self.witnesses.get(law):
                extra = f"  e.g. {_plain(self.witnesses[law][0])}"
            lines.append(f"  {mark} {law}{extra}")
        return "\n".join(lines)
