"""Verification report container shared by the scan harnesses.

A report is a frozen record of one scan: what was checked, over which range,
how many samples, the failures (with witnesses), the extremal witness and
its margin, and the wall-clock runtime. Reports serialize to JSON with
stable key order and to CSV (one row per retained sample record, falling
back to one row per failure when per-sample rows were not kept).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

__all__ = ["VerificationReport"]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


@dataclass
class VerificationReport:
    theorem_id: str
    range: tuple
    samples: int
    failures: list = field(default_factory=list)
    extremal: dict | None = None
    runtime: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)
    rows: list | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "range": _jsonable(list(self.range)),
            "samples": self.samples,
            "failures": _jsonable(self.failures),
            "extremal": _jsonable(self.extremal),
            "runtime": self.runtime,
            "seed": self.seed,
            "details": _jsonable(self.details),
            "passed": self.passed,
        }

    def to_json(self, *, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        d = json.loads(text)
        return cls(
            theorem_id=d["theorem_id"],
            range=tuple(d["range"]),
            samples=d["samples"],
            failures=d["failures"],
            extremal=d["extremal"],
            runtime=d["runtime"],
            seed=d.get("seed"),
            details=d.get("details", {}),
        )

    def to_csv(self) -> str:
        """Per-sample rows when retained, else the failure list."""
        records = self.rows if self.rows is not None else self.failures
        buf = io.StringIO()
        if records:
            fields = list(records[0].keys())
            writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            for rec in records:
                writer.writerow({k: rec.get(k, "") for k in fields})
        else:
            buf.write("theorem_id,samples,failures,passed\n")
            buf.write(f"{self.theorem_id},{self.samples},0,True\n")
        return buf.getvalue()

    def summary_line(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        lo, hi = self.range
        return (
            f"{self.theorem_id}: {status}  range=[{lo}, {hi}]  "
            f"samples={self.samples}  runtime={self.runtime:.2f}s"
        )
