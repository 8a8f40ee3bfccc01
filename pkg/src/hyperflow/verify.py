"""Bounded verification sweeps and their reports.

Each suite expands its bounds into independent cases, runs them (optionally on
a process pool sized by ``HYPERFLOW_THREADS``; 0 means one worker per CPU) and
collects the outcomes in case order, so reports do not depend on scheduling.
"""

from __future__ import annotations

import difflib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from hyperflow.derivations import (
    check_closed_forms,
    check_op_index,
    commutator_on_generator,
    generator_image,
)
from hyperflow.poly import ZERO, Coordinate, b, parse_polynomial, to_text
from hyperflow.series import (
    check_D1_series_identities,
    check_Dk_series_identities,
    lambda_poly,
    verify_annihilation,
)

GOLDEN_DIR = Path(__file__).parent / "golden"
SUITES = ("commute", "lambda", "closed-forms", "series", "j1-specials")


@dataclass
class CaseRecord:
    ids: dict
    status: str
    detail: str | None = None

    def to_json(self) -> dict:
        out = {"id": self.ids, "status": self.status}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    suite: str
    bounds: dict
    cases: list[CaseRecord] = field(default_factory=list)
    duration: float = 0.0

    @property
    def failures(self) -> list[CaseRecord]:
        return [c for c in self.cases if c.status != "pass"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        n_fail = len(self.failures)
        return {
            "total": len(self.cases),
            "passed": len(self.cases) - n_fail,
            "failed": n_fail,
            "status": "pass" if n_fail == 0 else "fail",
        }

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "bounds": self.bounds,
            "summary": self.summary(),
            "cases": [c.to_json() for c in self.cases],
            "duration_seconds": self.duration,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def text(self, verbose: bool = False) -> str:
        s = self.summary()
        bounds = " ".join(f"{k}={v}" for k, v in self.bounds.items())
        lines = [
            f"suite {self.suite} ({bounds}): {s['passed']}/{s['total']} passed, "
            f"{s['failed']} failed [{s['status'].upper()}] in {self.duration:.3f}s"
        ]
        for case in self.cases if verbose else self.failures:
            ids = " ".join(f"{k}={v}" for k, v in case.ids.items())
            line = f"  {case.status.upper()} {ids}"
            if case.detail:
                line += f": {case.detail}"
            lines.append(line)
        return "\n".join(lines)


def _record(ids: dict, residual) -> CaseRecord:
    """``residual`` is a polynomial that must vanish, or a (bool, detail) pair."""
    if isinstance(residual, tuple):
        ok, detail = residual
        return CaseRecord(ids, "pass" if ok else "fail", None if ok else detail)
    if residual:
        return CaseRecord(ids, "fail", to_text(residual))
    return CaseRecord(ids, "pass")


def odd_upto(n: int) -> list[int]:
    return list(range(1, n + 1, 2))


# case runners: top-level so they pickle for the process pool ---------------


def _run_commute(case):
    k, l, i, j = case
    return _record({"k": k, "l": l, "i": i, "j": j}, commutator_on_generator(k, l, Coordinate(i, j)))


def _run_lambda(case):
    k, j = case
    return _record({"k": k, "j": j}, verify_annihilation(k, j))


def _run_closed_forms(case):
    k, j = case
    ok = check_closed_forms(k, j)
    return _record({"k": k, "j": j}, (ok, "closed forms disagree with D_1 composition"))


def _run_series(case):
    k, order = case
    checks = check_Dk_series_identities(k, order) if k > 1 else check_D1_series_identities(order)
    out = []
    for check in checks:
        for n in check.exponents:
            ids = {"k": k, "identity": check.name, "exponent": n}
            out.append(_record(ids, check.failures.get(n, ZERO)))
    return out


def _run_j1(case):
    k, row = case
    got = generator_image(k, Coordinate(row, 1))
    want = b(row + 1, k)
    return _record({"k": k, "row": row}, got - want)


def _run_golden(case):
    j, golden_dir = case
    path = Path(golden_dir) / f"lambda_{2 * j + 2}.txt"
    ids = {"golden": path.name}
    try:
        frozen = path.read_text().strip()
    except OSError as exc:
        return CaseRecord(ids, "fail", f"unreadable golden file: {exc}")
    got = to_text(lambda_poly(j))
    if frozen == got:
        return CaseRecord(ids, "pass")
    diff = "\n".join(difflib.unified_diff([frozen], [got], "golden", "computed", lineterm=""))
    return CaseRecord(ids, "fail", diff)


def worker_count() -> int:
    raw = os.environ.get("HYPERFLOW_THREADS", "1").strip() or "1"
    n = int(raw)
    if n < 0:
        raise ValueError("HYPERFLOW_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _map(fn, cases, workers):
    if workers <= 1 or len(cases) < 2:
        return [fn(c) for c in cases]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cases, chunksize=max(1, len(cases) // (4 * workers))))


def _flatten(results):
    out = []
    for r in results:
        out.extend(r if isinstance(r, list) else [r])
    return out


def _sort_key(case: CaseRecord):
    return tuple((0, v) if isinstance(v, int) else (1, str(v)) for v in case.ids.values())


def run_suite(suite: str, bounds: dict, workers: int | None = None) -> VerificationReport:
    """Run one suite.  Bounds: max_k, max_l, max_j, order as the suite needs."""
    if workers is None:
        workers = worker_count()
    start = time.perf_counter()
    if suite == "commute":
        ks, ls = odd_upto(bounds["max_k"]), odd_upto(bounds["max_l"])
        cases = [(k, l, i, j) for k in ks for l in ls for i in (1, 2, 3) for j in odd_upto(bounds["max_j"])]
        fn = _run_commute
    elif suite == "lambda":
        cases = [(k, j) for k in odd_upto(bounds["max_k"]) for j in range(1, bounds["max_j"] + 1)]
        fn = _run_lambda
    elif suite == "closed-forms":
        cases = [(k, j) for k in odd_upto(bounds["max_k"]) if k >= 3 for j in odd_upto(bounds["max_j"])]
        fn = _run_closed_forms
    elif suite == "series":
        cases = [(k, bounds["order"]) for k in odd_upto(bounds["max_k"])]
        fn = _run_series
    elif suite == "j1-specials":
        cases = [(k, row) for k in odd_upto(bounds["max_k"]) for row in (1, 2)]
        fn = _run_j1
    else:
        raise ValueError(f"unknown suite {suite!r}")
    records = _flatten(_map(fn, cases, workers))
    records.sort(key=_sort_key)
    return VerificationReport(suite, dict(bounds), records, time.perf_counter() - start)


def validate_bounds(suite: str, bounds: dict) -> None:
    """Raise ValueError for bounds the suite cannot use."""
    for name in ("max_k", "max_l"):
        if name in bounds:
            check_op_index(bounds[name])
    if "max_j" in bounds:
        if bounds["max_j"] < 1:
            raise ValueError("max_j must be >= 1")
        if suite in ("commute", "closed-forms") and bounds["max_j"] % 2 == 0:
            raise ValueError("max_j is a coordinate index here and must be odd")
    if suite == "series":
        order = bounds.get("order", 0)
        if order < 2:
            raise ValueError("order must be >= 2")
        if order < bounds["max_k"]:
            raise ValueError("order must be >= max_k")


def selftest(golden_dir: Path = GOLDEN_DIR, workers: int = 1) -> VerificationReport:
    """Small fixed battery: commutators, annihilation, series identities, golden lambdas."""
    start = time.perf_counter()
    parts = [
        run_suite("commute", {"max_k": 3, "max_l": 3, "max_j": 5}, workers),
        run_suite("lambda", {"max_k": 3, "max_j": 3}, workers),
        run_suite("series", {"max_k": 3, "order": 6}, workers),
    ]
    records = []
    for part in parts:
        records += [CaseRecord({"suite": part.suite, **c.ids}, c.status, c.detail) for c in part.cases]
    records += [_run_golden((j, str(golden_dir))) for j in (1, 2)]
    report = VerificationReport("selftest", {"golden_dir": golden_dir.name}, records)
    report.duration = time.perf_counter() - start
    return report


def load_golden(j: int, golden_dir: Path = GOLDEN_DIR):
    return parse_polynomial((golden_dir / f"lambda_{2 * j + 2}.txt").read_text())
