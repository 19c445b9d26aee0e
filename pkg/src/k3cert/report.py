"""Verification report containers and deterministic JSON output."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

ARTIFACT_VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy"
SKIPPED = "skipped"


@dataclass
class ReportItem:
    id: str
    status: str
    details: str
    paper_ref: str = ""
    elapsed_ms: int = 0

    def to_json(self):
        return {"id": self.id, "status": self.status, "details": self.details,
                "paper_ref": self.paper_ref, "elapsed_ms": self.elapsed_ms}


@dataclass
class Report:
    items: list = field(default_factory=list)
    artifact_version: str = ARTIFACT_VERSION

    def add(self, item):
        self.items.append(item)

    def extend(self, items):
        self.items.extend(items)

    def summary(self):
        counts = {PASS: 0, FAIL: 0, DISCREPANCY: 0, SKIPPED: 0}
        for it in self.items:
            counts[it.status] = counts.get(it.status, 0) + 1
        return counts

    @property
    def ok(self):
        """Exit-code contract: only "fail" fails the build."""
        return all(it.status != FAIL for it in self.items)

    def sorted_items(self):
        return sorted(self.items, key=lambda it: it.id)

    def to_json(self):
        return {
            "artifact_version": self.artifact_version,
            "items": [it.to_json() for it in self.sorted_items()],
            "summary": self.summary(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def render_text(self):
        lines = []
        for it in self.sorted_items():
            lines.append("[%s] %s %s" % (it.status.upper(), it.id, it.details))
        c = self.summary()
        lines.append("%d pass, %d fail, %d discrepancy, %d skipped"
                     % (c[PASS], c[FAIL], c[DISCREPANCY], c[SKIPPED]))
        return "\n".join(lines)


def timed_item(id, paper_ref, fn):
    """Run fn() -> (status, details) and wrap it with timing."""
    t0 = time.monotonic()
    try:
        status, details = fn()
    except Exception as exc:  # defensive: a crash is a failure, not an abort
        status, details = FAIL, "exception: %s" % exc
    ms = int((time.monotonic() - t0) * 1000)
    return ReportItem(id=id, status=status, details=details,
                      paper_ref=paper_ref, elapsed_ms=ms)
