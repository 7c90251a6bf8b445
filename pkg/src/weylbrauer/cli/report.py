"""Reports: one record per check, JSON or text output."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from weylbrauer.cli.claims import CLAIMS


class Skip(Exception):
    """Raised inside a check to record it as skipped with a reason."""


@dataclass
class Check:
    claim: str
    citation: str
    status: str
    witness: Any
    ms: float

    def as_json(self) -> dict:
        return {"claim": self.claim, "citation": self.citation, "status": self.status, "witness": self.witness, "ms": self.ms}


@dataclass
class Report:
    suite: str
    params: dict
    checks: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        """pass iff every non-skipped check passed; skips are listed with reasons."""
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def run(self, claim: str, citation: str, fn: Callable[[], Any]) -> Check:
        """Run ``fn``; it returns a bool or (bool, witness) or raises Skip."""
        if citation not in CLAIMS:
            raise KeyError(f"unknown citation {citation!r}")
        t0 = time.perf_counter()
        try:
            out = fn()
            if isinstance(out, tuple):
                ok, witness = out
            else:
                ok, witness = out, None
            status = "pass" if ok else "fail"
        except Skip as exc:
            status, witness = "skip", {"reason": str(exc)}
        except Exception as exc:  # a crashing check is a failing check
            status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        ms = round((time.perf_counter() - t0) * 1000, 3)
        check = Check(claim, citation, status, _jsonable(witness), ms)
        self.checks.append(check)
        return check

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.as_json() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json(), indent=2)

    def determinism_hash(self) -> str:
        """SHA-256 of the JSON with timings removed."""
        data = self.as_json()
        for c in data["checks"]:
            c.pop("ms")
        return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  " + " ".join(f"{k}={v}" for k, v in self.params.items())]
        for c in self.checks:
            line = f"  {c.status.upper():4}  {c.claim}  [{c.citation}]  {c.ms:.1f} ms"
            if c.status == "skip":
                line += f"  ({c.witness.get('reason')})"
            elif c.status == "fail" and isinstance(c.witness, dict) and "error" in c.witness:
                line += f"  ({c.witness['error']})"
            lines.append(line)
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _jsonable(x):
    """Round-trip through JSON so reports only hold plain data."""
    return json.loads(json.dumps(x, default=str))
