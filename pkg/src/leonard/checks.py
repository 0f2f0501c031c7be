"""Run every verification suite on one parameter array and collect a
deterministic report."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .intersection import (
    IntersectionData,
    applicable_methods,
    brute_intersection,
    closed_forms,
    duality_identity_suite,
    recurrence_identity_suite,
)
from .parray import ParameterArray, validate
from .system import (
    build_split,
    dagger_conjugator,
    diagonal_sequences,
    extract_parray,
    td_coefficients,
    verify_leonard,
    wraparound_check,
)

SUITES = (
    "validation",
    "leonard-axioms",
    "diagonal",
    "td",
    "wrap-around",
    "dagger",
    "intersection-oracle",
    "duality",
    "recurrence",
)


def digest(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _result(witnesses: list, info: dict | None = None) -> dict:
    out = {"status": "pass" if not witnesses else "fail", "witnesses": witnesses}
    if info:
        out["info"] = info
    return out


def _skipped(reason: str) -> dict:
    return {"status": "skipped", "reason": reason, "witnesses": []}


class _Context:
    """Shared lazily computed objects; computed once before suites fan out."""

    def __init__(self, pa: ParameterArray, expected: IntersectionData | None):
        self.pa = pa
        self.expected = expected
        self.real = build_split(pa)
        self.brute = brute_intersection(self.real)


def _leonard(cx: _Context) -> dict:
    rep = verify_leonard(cx.real)
    w = [{"condition": c, "witness": list(i), "message": m} for c, i, m in rep.failures]
    back = extract_parray(cx.real, check=False)
    if back != cx.pa:
        w.append({"condition": "extract", "witness": [], "message": "extracted array differs from input"})
    return _result(w)


def _diagonal(cx: _Context) -> dict:
    dd = diagonal_sequences(cx.real, cx.pa)
    return _result([], {"a": [str(x) for x in dd.a], "a_star": [str(x) for x in dd.a_star]})


def _td(cx: _Context) -> dict:
    c = td_coefficients(cx.real)
    info = {k: str(getattr(c, k)) for k in ("beta", "gamma", "gamma_star", "varrho", "varrho_star")}
    return _result([], info)


def _wrap(cx: _Context) -> dict:
    if cx.pa.d < 2:
        return _skipped("needs d >= 2")
    return _result([] if wraparound_check(cx.real, cx.pa) else [{"message": "wrap-around identities fail"}])


def _dagger(cx: _Context) -> dict:
    dc = dagger_conjugator(cx.real)
    return _result([{"check": k} for k, ok in sorted(dc.checks.items()) if not ok])


def _oracle(cx: _Context) -> dict:
    w = []
    methods = applicable_methods(cx.pa.d)
    for m in methods:
        if closed_forms(cx.pa, m) != cx.brute:
            w.append({"method": m, "message": "closed forms disagree with the standard-basis computation"})
    if cx.expected is not None and cx.expected != cx.brute:
        w.append({"method": "expected", "message": "supplied intersection numbers disagree"})
    return _result(w, {"methods": methods, "intersections": cx.brute.to_json()})


def _identity_report(rep) -> dict:
    w = [{"identity": k, "failures": [list(x) if isinstance(x, tuple) else x for x in v]} for k, v in sorted(rep.failures().items())]
    return _result(w, {"identities_checked": sum(e["checked"] for e in rep.results.values())})


def _duality(cx: _Context) -> dict:
    return _identity_report(duality_identity_suite(cx.pa, cx.brute))


def _recurrence(cx: _Context) -> dict:
    return _identity_report(recurrence_identity_suite(cx.real, cx.brute))


_RUNNERS: dict[str, Callable[[_Context], dict]] = {
    "leonard-axioms": _leonard,
    "diagonal": _diagonal,
    "td": _td,
    "wrap-around": _wrap,
    "dagger": _dagger,
    "intersection-oracle": _oracle,
    "duality": _duality,
    "recurrence": _recurrence,
}


def _guarded(fn, cx) -> dict:
    try:
        return fn(cx)
    except Exception as exc:  # a raised cross-check is a failed suite
        return {"status": "fail", "witnesses": [{"error": type(exc).__name__, "message": str(exc)}]}


def run_checks(
    pa: ParameterArray,
    expected: IntersectionData | None = None,
    suites: list[str] | None = None,
    parallel: bool = False,
    timing: bool = False,
    input_doc: dict | None = None,
) -> dict:
    chosen = list(SUITES) if not suites else [s for s in SUITES if s in suites]
    unknown = set(suites or ()) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    results: dict[str, dict] = {}
    times: dict[str, float] = {}
    rep = validate(pa)
    results["validation"] = _result([v.to_json() for v in rep.violations], {"vacuous": rep.vacuous})
    rest = [s for s in chosen if s != "validation"]
    if not rep.valid:
        for s in rest:
            results[s] = _skipped("parameter array is invalid")
    elif rest:
        t0 = time.perf_counter()
        try:
            cx = _Context(pa, expected)
        except Exception as exc:
            cx = None
            err = {"status": "fail", "witnesses": [{"error": type(exc).__name__, "message": str(exc)}]}
        times["construct"] = time.perf_counter() - t0

        def timed(name):
            t = time.perf_counter()
            out = _guarded(_RUNNERS[name], cx)
            return name, out, time.perf_counter() - t

        if cx is None:
            outs = [(s, err, 0.0) for s in rest]
        elif parallel:
            with ThreadPoolExecutor() as pool:
                outs = list(pool.map(timed, rest))
        else:
            outs = [timed(s) for s in rest]
        for name, out, dt in outs:
            results[name] = out
            times[name] = dt
    if "validation" not in chosen:
        results.pop("validation")
    ordered = {s: results[s] for s in SUITES if s in results}
    report = {
        "input_digest": digest(input_doc if input_doc is not None else pa.to_json()),
        "ok": rep.valid and all(r["status"] != "fail" for r in ordered.values()),
        "suites": ordered,
    }
    if timing:
        report["timing"] = {k: round(v, 6) for k, v in times.items()}
    return report
