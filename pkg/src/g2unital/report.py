"""Verification records and their serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import __version__

SOURCES = ("formula", "oracle", "trivial")


def _plain(x):
    """JSON-friendly copy: tuples become lists, dict keys become strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return x.item()
    return x


@dataclass
class CheckRecord:
    id: str
    anchor: str
    expected: object
    computed: object
    passed: bool
    runtime_ms: float | None
    source: str

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
            "source": self.source,
        }


@dataclass
class VerificationReport:
    config: dict
    checks: list = field(default_factory=list)
    version: str = __version__

    def add(self, rec: CheckRecord):
        self.checks.append(rec)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> dict:
        n = len(self.checks)
        bad = len(self.failures)
        return {"total": n, "passed": n - bad, "failed": bad}

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "config": _plain(self.config),
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.summary(),
        }


def to_json(r: VerificationReport) -> str:
    return json.dumps(r.as_dict(), indent=2, sort_keys=True) + "\n"


def to_csv(r: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "anchor", "expected", "computed", "pass", "runtime_ms", "source"])
    for c in r.checks:
        d = c.as_dict()
        w.writerow(
            [
                d["id"],
                d["anchor"],
                json.dumps(d["expected"], sort_keys=True),
                json.dumps(d["computed"], sort_keys=True),
                "true" if d["pass"] else "false",
                "" if d["runtime_ms"] is None else d["runtime_ms"],
                d["source"],
            ]
        )
    return buf.getvalue()


def _short(x, width=48) -> str:
    s = json.dumps(_plain(x), sort_keys=True)
    return s if len(s) <= width else s[: width - 3] + "..."


def to_text(r: VerificationReport) -> str:
    lines = [f"g2unital {r.version}  " + " ".join(f"{k}={v}" for k, v in sorted(r.config.items()))]
    for c in r.checks:
        mark = "PASS" if c.passed else "FAIL"
        t = "" if c.runtime_ms is None else f"  ({c.runtime_ms:.0f} ms)"
        lines.append(f"[{mark}] {c.id}: {_short(c.computed)}{t}")
        if not c.passed:
            lines.append(f"        expected {_short(c.expected, 200)}")
    s = r.summary()
    lines.append(f"{s['passed']}/{s['total']} checks passed")
    return "\n".join(lines) + "\n"


def emit_report(r: VerificationReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return to_json(r).encode()
    if fmt == "csv":
        return to_csv(r).encode()
    if fmt == "text":
        return to_text(r).encode()
    raise ValueError(f"unsupported report format {fmt!r}")
