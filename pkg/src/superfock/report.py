"""Verification reports and their JSON/CSV/text serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable

__all__ = ["VerificationReport", "PASS", "FAIL", "WARNING", "EXPECTED_FAIL", "format_reports"]

PASS = "pass"
FAIL = "fail"
WARNING = "warning"
# a check whose failure is the asserted mathematical fact (e.g. degeneracy at natural alpha)
EXPECTED_FAIL = "expected-fail"


def _decimal_string(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return format(Decimal(x.numerator) / Decimal(x.denominator), ".6e")
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".6e")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class VerificationReport:
    check_name: str
    alpha: str
    N: int
    status: str
    max_defect: str
    tolerance: str = "0"
    witness: dict[str, Any] | None = None
    elapsed_ms: int = 0
    anchor: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_defect(
        cls,
        name: str,
        *,
        alpha: str,
        N: int,
        max_defect,
        tolerance=0,
        witness=None,
        elapsed_ms: int = 0,
        anchor: str = "",
        expect_fail: bool = False,
        details: dict | None = None,
    ) -> "VerificationReport":
        ok = max_defect <= tolerance
        if expect_fail:
            status = EXPECTED_FAIL if not ok else FAIL
        else:
            status = PASS if ok else FAIL
        return cls(
            check_name=name,
            alpha=alpha,
            N=N,
            status=status,
            max_defect=_decimal_string(max_defect),
            tolerance=_decimal_string(tolerance),
            witness=_jsonable(witness) if witness is not None else None,
            elapsed_ms=elapsed_ms,
            anchor=anchor,
            details=_jsonable(details or {}),
        )

    @property
    def ok(self) -> bool:
        """True unless the check failed (warnings and expected failures are fine)."""
        return self.status != FAIL

    def to_dict(self) -> dict:
        return asdict(self)


def format_reports(reports: Iterable[VerificationReport], output: str = "text") -> str:
    reports = sorted(reports, key=lambda r: (r.check_name, r.alpha))
    if output == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if output == "csv":
        buf = io.StringIO()
        cols = ["check_name", "alpha", "N", "status", "max_defect", "tolerance", "elapsed_ms", "anchor", "witness"]
        w = csv.writer(buf)
        w.writerow(cols)
        for r in reports:
            d = r.to_dict()
            d["witness"] = json.dumps(d["witness"]) if d["witness"] is not None else ""
            w.writerow([d[c] for c in cols])
        return buf.getvalue()
    lines = []
    for r in reports:
        lines.append(
            f"{r.status.upper():13s} {r.check_name:40s} alpha={r.alpha:>6s} N={r.N:<3d} "
            f"defect={r.max_defect} tol={r.tolerance} [{r.anchor}]"
        )
    return "\n".join(lines)
