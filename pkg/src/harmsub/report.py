"""Report records and the common JSON report document."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, is_dataclass

import numpy as np

SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
NO_VIOLATION_FOUND = "NO_VIOLATION_FOUND"
VIOLATION = "VIOLATION"


def jsonable(obj):
    """Recursively convert complex numbers, numpy values and dataclasses."""
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        # JSON has no inf/nan; keep the information as text
        return x if np.isfinite(x) else repr(x)
    return obj


@dataclass
class ScanReport:
    """Outcome of a falsification-style check.

    Residual checks use ``PASS``/``FAIL`` with ``max_residual``; admissibility
    scans use ``NO_VIOLATION_FOUND``/``VIOLATION`` with ``margin``.  Neither
    passing verdict is a proof: it holds at the sampled resolution only.
    """

    verdict: str
    samples_tested: int = 0
    max_residual: float | None = None
    margin: float | None = None
    witness: dict | None = None
    config: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, NO_VIOLATION_FOUND)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "samples_tested": int(self.samples_tested),
            "max_residual": jsonable(self.max_residual),
            "margin": jsonable(self.margin),
            "witness": jsonable(self.witness),
            "config": jsonable(self.config),
            "details": jsonable(self.details),
        }


def report_document(kind: str, payload, timestamp: bool = True) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": jsonable(payload)}
    if timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)
