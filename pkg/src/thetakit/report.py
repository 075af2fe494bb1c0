"""Residual records shared by the identity checks and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


def json_number(z) -> Any:
    if z is None:
        return None
    z = complex(z)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def relative_gap(a: complex, b: complex) -> float:
    """``|a - b| / max(|a|, |b|)``, or 0 when both vanish."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


@dataclass(frozen=True)
class Residual:
    identity: str
    params: Dict[str, Any]
    lhs: Optional[complex]
    rhs: Optional[complex]
    residual: float
    tolerance: Optional[float] = None
    report_only: bool = False
    note: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(cls, identity: str, params: dict, lhs: complex, rhs: complex, tolerance: Optional[float] = None,
                report_only: bool = False, note: str = "") -> "Residual":
        return cls(identity, dict(params), lhs, rhs, relative_gap(lhs, rhs), tolerance, report_only, note)

    @property
    def status(self) -> str:
        if self.report_only:
            return "reported"
        if self.tolerance is None:
            return "reported"
        ok = math.isfinite(self.residual) and self.residual < self.tolerance
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> Dict[str, Any]:
        params = {k: json_number(v) if isinstance(v, complex) else v for k, v in self.params.items()}
        out = {
            "identity": self.identity,
            "params": params,
            "lhs": json_number(self.lhs),
            "rhs": json_number(self.rhs),
            "residual": self.residual if math.isfinite(self.residual) else str(self.residual),
            "status": self.status,
        }
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.note:
            out["note"] = self.note
        out.update(self.extra)
        return out

    def sort_key(self):
        return (self.identity, repr(sorted(self.params.items())))
