"""Verification reports and their canonical JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional

from .polyring import LaurentPoly
from .qseries import QSeries, first_mismatch


@dataclass(frozen=True)
class Mismatch:
    degree: int
    lhs: LaurentPoly
    rhs: LaurentPoly

    def to_json(self) -> dict:
        return {"degree": self.degree, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    order: int
    status: str
    first_mismatch: Optional[Mismatch] = None
    elapsed_ms: int = 0
    delta: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "order": self.order,
            "delta": self.delta,
            "status": self.status,
            "first_mismatch": self.first_mismatch.to_json() if self.first_mismatch else None,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    def summary(self) -> str:
        line = f"{self.status.upper():4}  {self.identity}  order={self.order}  {self.elapsed_ms} ms"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            where = f" delta={self.delta}" if self.delta is not None else ""
            line += f"\n      first mismatch at degree {m.degree}{where}: lhs={m.lhs}  rhs={m.rhs}"
        return line


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def ms(self) -> int:
        return int(round((time.perf_counter() - self.start) * 1000))


def compare(name: str, lhs: QSeries, rhs: QSeries, order: int, *, delta: Optional[int] = None,
            timer: Optional[Timer] = None) -> VerificationReport:
    """Coefficientwise comparison of two series on ``[0, order)``."""
    found = first_mismatch(lhs, rhs, order)
    elapsed = timer.ms if timer else 0
    if found is None:
        return VerificationReport(name, order, "pass", None, elapsed, delta)
    return VerificationReport(name, order, "fail", Mismatch(*found), elapsed, delta)


def combine(name: str, order: int, reports, timer: Optional[Timer] = None) -> VerificationReport:
    """Conjunction of sub-reports; the first failing one supplies the mismatch."""
    reports = list(reports)
    elapsed = timer.ms if timer else sum(r.elapsed_ms for r in reports)
    for r in reports:
        if not r.passed:
            return VerificationReport(name, order, "fail", r.first_mismatch, elapsed, r.delta)
    return VerificationReport(name, order, "pass", None, elapsed, None)
