"""Verification reports: check records, canonical JSON and a markdown summary.

JSON layout (frozen)::

    {
      "command": str,
      "config": {...},                       # echo of every option used
      "checks": [                            # sorted by name
        {"name", "paper_anchor", "inputs", "expected", "observed", "status"}
      ],
      "summary": {"pass": int, "fail": int, "skipped": int, "total": int}
    }

``status`` is one of pass / fail / skipped.  Floats carry 12 significant
digits and keys are sorted, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

STATUSES = ("pass", "fail", "skipped")
SIGNIFICANT_DIGITS = 12


@dataclass
class Check:
    name: str
    paper_anchor: str
    inputs: dict
    expected: object
    observed: object
    status: str

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if not self.paper_anchor:
            raise ValueError("every check needs an anchor (use 'plumbing' for infrastructure)")


@dataclass
class Report:
    command: str
    config: dict
    checks: list = field(default_factory=list)

    def add(self, name, anchor, inputs, expected, observed, ok) -> Check:
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        c = Check(name, anchor, inputs, expected, observed, status)
        self.checks.append(c)
        return c

    @property
    def summary(self) -> dict:
        counts = {s: sum(c.status == s for c in self.checks) for s in STATUSES}
        counts["total"] = len(self.checks)
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def as_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        return canonical({
            "command": self.command,
            "config": self.config,
            "checks": [
                {"name": c.name, "paper_anchor": c.paper_anchor, "inputs": c.inputs,
                 "expected": c.expected, "observed": c.observed, "status": c.status}
                for c in checks
            ],
            "summary": self.summary,
        })

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    def to_markdown(self) -> str:
        s = self.summary
        lines = [
            f"# {self.command}",
            "",
            f"{s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped ({s['total']} checks)",
            "",
            "| check | status | expected | observed |",
            "|---|---|---|---|",
        ]
        for c in self.as_dict()["checks"]:
            lines.append(f"| {c['name']} | {c['status']} | {_short(c['expected'])} | {_short(c['observed'])} |")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    text = json.dumps(v, sort_keys=True)
    return text if len(text) <= 60 else text[:57] + "..."


def canonical(obj):
    """JSON-ready copy: plain types, string keys, floats rounded to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")
