"""Identity reports and their JSON rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .cyclotomic import Cyclotomic

__all__ = ["IdentityReport", "compare", "exact_report", "render", "report_schema", "Stopwatch"]


@dataclass
class IdentityReport:
    identity: str
    params: dict
    lhs: object
    rhs: object
    abs_err: object
    rel_err: object
    tolerance: object
    passed: bool
    precision_bits: int
    elapsed_ms: float = 0.0
    exact: bool = False
    note: str = ""
    extra: dict = field(default_factory=dict)

    def sort_key(self):
        p = self.params
        return (
            self.identity,
            int(p.get("n", p.get("f", p.get("p", 0))) or 0),
            str(p.get("character", "")),
            str(p.get("s", "")),
            json.dumps(p, sort_keys=True, default=str),
        )


class Stopwatch:
    def __init__(self):
        self.t0 = time.perf_counter()

    @property
    def ms(self) -> float:
        return (time.perf_counter() - self.t0) * 1000.0


def compare(identity, params, lhs, rhs, rel_tol, prec, abs_tol=None, note="", elapsed_ms=0.0, extra=None):
    """Numeric two-sided check: pass iff abs_err <= abs_tol or rel_err <= rel_tol."""
    # errors are measured with guard bits so that sides carrying extra precision show their true gap
    with mp.workprec(prec + 32):
        rel_tol = mp.mpf(rel_tol)
        abs_tol = rel_tol if abs_tol is None else mp.mpf(abs_tol)
        d = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel = d / scale if scale else (mpf(0) if d == 0 else mp.inf)
        ok = bool(d <= abs_tol or rel <= rel_tol)
    return IdentityReport(
        identity=identity,
        params=params,
        lhs=lhs,
        rhs=rhs,
        abs_err=d,
        rel_err=rel,
        tolerance=rel_tol,
        passed=ok,
        precision_bits=prec,
        elapsed_ms=elapsed_ms,
        note=note,
        extra=extra or {},
    )


def exact_report(identity, params, lhs, rhs, prec=0, note="", elapsed_ms=0.0, extra=None):
    """Zero-tolerance comparison of exact values (Fractions, Cyclotomic, ...)."""
    ok = bool(lhs == rhs)
    return IdentityReport(
        identity=identity,
        params=params,
        lhs=lhs,
        rhs=rhs,
        abs_err=Fraction(0) if ok else None,
        rel_err=Fraction(0) if ok else None,
        tolerance=Fraction(0),
        passed=ok,
        precision_bits=prec,
        elapsed_ms=elapsed_ms,
        exact=True,
        note=note,
        extra=extra or {},
    )


# -- rendering -----------------------------------------------------------------


def fmt_value(x, digits: int):
    """Decimal-string rendering; never binary floats."""
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, Cyclotomic):
        if x.is_rational():
            return str(x.rational_value())
        return _fmt_cyclotomic(x)
    if isinstance(x, mpc):
        if x.imag == 0:
            return mp.nstr(x.real, digits)
        re = mp.nstr(x.real, digits)
        im = mp.nstr(abs(x.imag), digits)
        sign = "-" if x.imag < 0 else "+"
        return f"{re} {sign} {im}i"
    if isinstance(x, mpf):
        return mp.nstr(x, digits)
    if isinstance(x, float):
        return mp.nstr(mp.mpf(x), digits)
    if isinstance(x, (list, tuple)):
        return [fmt_value(v, digits) for v in x]
    if isinstance(x, dict):
        return {str(k): fmt_value(v, digits) for k, v in x.items()}
    return str(x)


def _fmt_cyclotomic(x: Cyclotomic) -> str:
    terms = []
    for k, v in enumerate(x.c):
        if v:
            terms.append(str(v) if k == 0 else f"({v})*z{x.n}^{k}")
    return " + ".join(terms) or "0"


def report_to_dict(r: IdentityReport, digits: int, timings: bool) -> dict:
    return {
        "identity": r.identity,
        "params": {k: fmt_value(v, digits) for k, v in r.params.items()},
        "lhs": fmt_value(r.lhs, digits),
        "rhs": fmt_value(r.rhs, digits),
        "abs_err": fmt_value(r.abs_err, 6),
        "rel_err": fmt_value(r.rel_err, 6),
        "tolerance": fmt_value(r.tolerance, 6),
        "pass": bool(r.passed),
        "exact": bool(r.exact),
        "precision_bits": int(r.precision_bits),
        "elapsed_ms": round(r.elapsed_ms, 3) if timings else 0,
        "note": r.note,
        "extra": {k: fmt_value(v, digits) for k, v in sorted(r.extra.items())},
    }


def render(suite: str, reports, digits: int, precision_bits: int, elapsed_ms: float = 0.0, timings: bool = False) -> dict:
    reports = sorted(reports, key=lambda r: r.sort_key())
    results = [report_to_dict(r, digits, timings) for r in reports]
    passed = sum(1 for r in results if r["pass"])
    return {
        "suite": suite,
        "config": {"digits": digits, "precision_bits": precision_bits},
        "results": results,
        "summary": {
            "total": len(results),
            "passed": passed,
            "failed": len(results) - passed,
            "pass": passed == len(results),
            "elapsed_ms": round(elapsed_ms, 3) if timings else 0,
        },
    }


_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "IdentitySuiteReport",
    "type": "object",
    "required": ["suite", "config", "results", "summary"],
    "properties": {
        "suite": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["digits", "precision_bits"],
            "properties": {
                "digits": {"type": "integer", "minimum": 15},
                "precision_bits": {"type": "integer", "minimum": 64},
            },
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "identity", "params", "lhs", "rhs", "abs_err", "rel_err",
                    "tolerance", "pass", "precision_bits", "elapsed_ms",
                ],
                "properties": {
                    "identity": {"type": "string"},
                    "params": {"type": "object"},
                    "lhs": {},
                    "rhs": {},
                    "abs_err": {"type": ["string", "null"]},
                    "rel_err": {"type": ["string", "null"]},
                    "tolerance": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "exact": {"type": "boolean"},
                    "precision_bits": {"type": "integer"},
                    "elapsed_ms": {"type": "number"},
                    "note": {"type": "string"},
                    "extra": {"type": "object"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "passed", "failed", "elapsed_ms"],
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "passed": {"type": "integer", "minimum": 0},
                "failed": {"type": "integer", "minimum": 0},
                "pass": {"type": "boolean"},
                "elapsed_ms": {"type": "number"},
            },
        },
    },
}


def report_schema() -> str:
    """The fixed JSON schema of suite reports."""
    return json.dumps(_SCHEMA, indent=2)
