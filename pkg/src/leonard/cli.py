"""Command-line entry point.

Exit codes: 0 success, 1 a check or admissibility failure, 2 bad input.
Documents are written as sorted, indented JSON so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import SUITES, run_checks
from .errors import (
    CompositeP,
    ConstraintViolated,
    CrossCheckFailed,
    ExhaustedSearch,
    Inadmissible,
    InvalidParameterArray,
    LeonardError,
    MethodPrecondition,
    NonMonicModulus,
    ParseError,
    PostValidationFailed,
    ReducibleModulus,
    ZeroDenominator,
)
from .families import (
    FamilySpec,
    canonical_name,
    closed_intersection,
    completed_spec,
    generate_parray,
    intersection_table,
    sample_admissible,
)
from .field import make_field
from .intersection import IntersectionData, METHODS, applicable_methods, brute_intersection, closed_forms
from .parray import D4Element, ParameterArray, transform_d4, validate
from .system import Realization, build_split, extract_parray, verify_leonard

OK, FAIL, INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _line_of(text: str, needle: str) -> int | None:
    for n, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return n
    return None


def _load_json(path: str) -> tuple[dict, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}:1: expected a JSON object")
    return doc, text


def _anchored(path: str, text: str, exc: Exception) -> InputError:
    msg = str(exc)
    line = _line_of(text, '"field"') if isinstance(exc, (CompositeP, NonMonicModulus, ReducibleModulus)) else None
    for token in msg.replace("'", '"').split('"')[1::2]:
        if line:
            break
        line = _line_of(text, token)
    return InputError(f"{path}:{line or 1}: {msg}")


def _load_parray(path: str) -> tuple[ParameterArray, dict, str]:
    doc, text = _load_json(path)
    body = doc.get("parray", doc)
    try:
        return ParameterArray.from_json(body), doc, text
    except (LeonardError, ValueError, TypeError) as exc:
        raise _anchored(path, text, exc) from None


def _emit(doc, out: str | None = None) -> None:
    blob = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(blob)
    else:
        sys.stdout.write(blob)


def _err(msg: str) -> None:
    sys.stderr.write(msg.rstrip() + "\n")


# --- commands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    pa, _, _ = _load_parray(args.file)
    rep = validate(pa)
    _emit(rep.to_json())
    return OK if rep.valid else FAIL


def cmd_check(args) -> int:
    pa, doc, text = _load_parray(args.file)
    expected = None
    if "expected_intersections" in doc:
        try:
            expected = IntersectionData.from_json(pa.ctx, doc["expected_intersections"])
        except (LeonardError, KeyError, ValueError) as exc:
            raise _anchored(args.file, text, exc) from None
    suites = None
    if args.suite:
        suites = ["validation"] + [s for s in args.suite if s != "validation"]
        bad = [s for s in args.suite if s not in SUITES]
        if bad:
            raise InputError(f"unknown suite(s) {bad}; choose from {list(SUITES)}")
    report = run_checks(pa, expected, suites, parallel=args.parallel, timing=args.timing, input_doc=doc)
    if args.report:
        _emit(report, args.report)
    _emit(report)
    return OK if report["ok"] else FAIL


def cmd_construct(args) -> int:
    pa, _, _ = _load_parray(args.file)
    try:
        real = build_split(pa)
    except InvalidParameterArray as exc:
        _err(f"invalid parameter array: {exc}")
        return FAIL
    _emit(real.to_json(), args.out)
    return OK


def cmd_transform(args) -> int:
    pa, _, _ = _load_parray(args.file)
    try:
        g = D4Element.parse(args.g)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    try:
        out = transform_d4(pa, g)
    except PostValidationFailed as exc:
        _err(str(exc))
        return FAIL
    _emit(out.to_json(), args.out)
    return OK


def cmd_intersections(args) -> int:
    pa, _, _ = _load_parray(args.file)
    try:
        real = build_split(pa)
    except InvalidParameterArray as exc:
        _err(f"invalid parameter array: {exc}")
        return FAIL
    brute = brute_intersection(real)
    if args.method == "brute":
        _emit(brute.to_json())
        return OK
    if args.method != "all":
        try:
            data = closed_forms(pa, args.method)
        except MethodPrecondition as exc:
            raise InputError(str(exc)) from None
        _emit(data.to_json())
        return OK if data == brute else FAIL
    methods = applicable_methods(pa.d)
    results = {"brute": brute.to_json()}
    agree = True
    for m in methods:
        data = closed_forms(pa, m)
        results[m] = data.to_json()
        agree = agree and data == brute
    _emit({"agree": agree, "methods": results})
    return OK if agree else FAIL


def _spec_from_args(args) -> FamilySpec:
    try:
        params = json.loads(args.params) if args.params else {}
    except json.JSONDecodeError as exc:
        raise InputError(f"--params:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(params, dict):
        raise InputError("--params must be a JSON object")
    ctx = make_field(args.field)
    return FamilySpec(args.name, args.d, ctx, {k: ctx.parse(str(v)) for k, v in params.items()})


def cmd_family(args) -> int:
    try:
        if args.action == "sample":
            specs = sample_admissible(canonical_name(args.name), args.d, make_field(args.field), args.seed, args.count)
            _emit({"specs": [s.to_json() for s in specs]}, args.out)
            return OK
        spec = completed_spec(_spec_from_args(args))
        pa = generate_parray(spec)
        data = closed_intersection(spec)
    except (Inadmissible, ConstraintViolated, ExhaustedSearch, ZeroDenominator, CrossCheckFailed) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return FAIL
    if args.action == "table":
        text = intersection_table(spec, data)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return OK
    _emit({"spec": spec.to_json(), "parray": pa.to_json(), "intersections": data.to_json()}, args.out)
    return OK


def cmd_roundtrip(args) -> int:
    pa, _, _ = _load_parray(args.file)
    try:
        real = build_split(pa)
    except InvalidParameterArray as exc:
        _err(f"invalid parameter array: {exc}")
        return FAIL
    steps = {}
    steps["parray_json"] = ParameterArray.from_json(json.loads(json.dumps(pa.to_json()))) == pa
    again = Realization.from_json(json.loads(json.dumps(real.to_json())))
    steps["realization_json"] = again.to_json() == real.to_json()
    steps["leonard"] = verify_leonard(again).ok
    steps["extract"] = extract_parray(again) == pa
    ok = all(steps.values())
    _emit({"ok": ok, "steps": steps})
    return OK if ok else FAIL


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leonard", description="Exact checks for Leonard systems and their parameter arrays.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the five classification conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="run every verification suite")
    p.add_argument("file")
    p.add_argument("--report")
    p.add_argument("--suite", action="append", help=f"restrict to a suite (repeatable): {', '.join(SUITES)}")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (makes output nondeterministic)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="write the split-form realization")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("transform", help="apply a D4 word such as down.Down.star")
    p.add_argument("file")
    p.add_argument("--g", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("intersections", help="intersection numbers")
    p.add_argument("file")
    p.add_argument("--method", default="brute", choices=["brute", *METHODS, "all"])
    p.set_defaults(func=cmd_intersections)

    p = sub.add_parser("family", help="named families")
    p.add_argument("action", choices=["gen", "sample", "table"])
    p.add_argument("--name", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--params")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("roundtrip", help="serialize, rebuild and re-extract")
    p.add_argument("file")
    p.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return INPUT
    except (ParseError, LeonardError, ValueError) as exc:
        _err(f"input error: {type(exc).__name__}: {exc}")
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
