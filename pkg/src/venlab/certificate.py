"""Pass/fail records for identity checks, serializable to JSON."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional

from .arith import MultiPoly, render

WITNESS_TERMS = 40


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[str] = None
    truncated: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Certificate:
    claim_id: str
    details: List[Check] = field(default_factory=list)
    ms: float = 0.0
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "verified" if all(c.passed for c in self.details) else "failed"

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def terms_truncated(self) -> bool:
        return any(c.truncated for c in self.details)

    def check(self, name: str, passed: bool, witness=None) -> bool:
        """Record one check.  A MultiPoly witness is rendered, capped at 40 terms."""
        truncated = False
        if isinstance(witness, MultiPoly):
            truncated = len(witness) > WITNESS_TERMS
            witness = render(witness, WITNESS_TERMS)
        elif witness is not None:
            witness = str(witness)
        self.details.append(Check(name, bool(passed), witness, truncated))
        return bool(passed)

    def check_zero(self, name: str, residual: MultiPoly) -> bool:
        """Passes iff the residual is zero; a nonzero residual becomes the witness."""
        return self.check(name, residual.is_zero(), None if residual.is_zero() else residual)

    def failed_checks(self) -> List[str]:
        return [c.name for c in self.details if not c.passed]

    def to_json(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "status": self.status,
            "checks": [c.to_json() for c in self.details],
            "terms_truncated": self.terms_truncated,
            "ms": round(self.ms, 3),
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def summary(self) -> str:
        bad = self.failed_checks()
        tail = f" (failed: {', '.join(bad)})" if bad else ""
        if self.error:
            tail = f" ({self.error})"
        return f"{self.claim_id}: {self.status} [{len(self.details)} checks, {self.ms:.0f} ms]{tail}"


class timed:
    """Context manager that stores elapsed milliseconds on a certificate."""

    def __init__(self, cert: Certificate):
        self.cert = cert

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.cert

    def __exit__(self, exc_type, exc, tb):
        self.cert.ms = (time.perf_counter() - self._t0) * 1000.0
        if exc is not None and not isinstance(exc, (KeyboardInterrupt, SystemExit)):
            self.cert.error = f"{type(exc).__name__}: {exc}"
            return True
        return False
