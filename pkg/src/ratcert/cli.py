"""Command-line interface.

Subcommands:

  analyze    run the full obstruction procedure on a field p*d/dx + q*d/dy
  risch      decide rational solvability of one equation y' + (k-1)*a*y = b
  transform  push a field through the infinity chart change and print it
  batch      run independent analyses, one JSON object per input line

Exit codes: 0 when a verdict or result was produced (including an explicit
inconclusive verdict), 2 on input errors.  JSON reports are canonical: keys
sorted, rationals rendered as exact "num/den" strings, byte-identical across
runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Mapping

from . import __version__
from .algebra import RatFunc
from .analyzer import Certificate, analyze, check_hk
from .parsing import ParseError, parse_lets, parse_poly, parse_univar_ratfunc
from .planar import DegenerateCurveError, PlanarField, infinity_transform
from .risch import build_risch

_INPUT_ERRORS = (ParseError, DegenerateCurveError, ValueError, ZeroDivisionError, OSError)


@dataclass(frozen=True)
class FieldSpec:
    """Source-level description of one analysis task."""

    p_text: str
    q_text: str
    phi_text: str = "0"
    k_max: int = 2
    at_infinity: bool = False
    interpretation: str = "literal"
    variables: tuple[str, str] = ("x", "y")
    lets: Mapping[str, Fraction] = dataclass_field(default_factory=dict)

    def build(self) -> tuple[PlanarField, RatFunc]:
        p = parse_poly(self.p_text, self.variables, self.lets)
        q = parse_poly(self.q_text, self.variables, self.lets)
        phi = parse_univar_ratfunc(self.phi_text, self.variables[0], self.lets)
        return PlanarField(p, q), phi

    def run(self) -> Certificate:
        field, phi = self.build()
        return analyze(
            field,
            phi,
            self.k_max,
            at_infinity=self.at_infinity,
            interpretation=self.interpretation,
        )


def _canonical(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _meta(options: dict) -> dict:
    return {"tool": "ratcert", "version": __version__, "options": options}


def _write_json(path: str, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(_canonical(report))
        handle.write("\n")


def _spec_from_args(args) -> FieldSpec:
    variables = tuple(args.vars.split(","))
    if (
        len(variables) != 2
        or variables[0] == variables[1]
        or not all(v.isidentifier() for v in variables)
    ):
        raise ValueError(f"--vars must name two distinct variables, got {args.vars!r}")
    return FieldSpec(
        p_text=args.p,
        q_text=args.q,
        phi_text=args.phi,
        k_max=args.kmax,
        at_infinity=args.at_infinity,
        interpretation=args.h1,
        variables=variables,
        lets=parse_lets(args.let),
    )


def _print_certificate(cert: Certificate, out) -> None:
    h1 = cert.h1
    print(f"chart: {cert.chart}" + (" (roles swapped)" if cert.swapped else ""), file=out)
    print(
        f"h1: holds={h1.holds} (pole>1={h1.has_high_order_finite_pole} "
        f"degree={h1.degree_condition} residues_integer={h1.residues_all_integer} "
        f"interpretation={h1.interpretation})",
        file=out,
    )
    for rec in cert.orders:
        o = rec.outcome
        if o.has_rational_solution:
            detail = f"y = {o.solution.to_str()}"
        else:
            detail = o.reason or "no rational solution"
        extra = f", case {o.case}" if o.case else ""
        status = "RationalSolution" if o.has_rational_solution else "NoRationalSolution"
        print(f"k={rec.k}: {status} [{o.solver}{extra}] {detail}", file=out)
    v = cert.verdict
    if v.k is not None:
        print(f"verdict: {v.status} (k={v.k})", file=out)
    elif v.k_max is not None:
        print(f"verdict: {v.status} ({v.reason}, k_max={v.k_max})", file=out)
    else:
        print(f"verdict: {v.status} ({v.reason})", file=out)


def _cmd_analyze(args) -> tuple[int, dict]:
    spec = _spec_from_args(args)
    started = time.perf_counter()
    cert = spec.run()
    elapsed = time.perf_counter() - started
    report = dict(cert.to_dict())
    report["meta"] = _meta(
        {
            "command": "analyze",
            "kmax": spec.k_max,
            "at_infinity": spec.at_infinity,
            "h1": spec.interpretation,
            "vars": list(spec.variables),
        }
    )
    _print_certificate(cert, sys.stdout)
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    if args.json:
        _write_json(args.json, report)
    return 0, report


def _cmd_risch(args) -> tuple[int, dict]:
    lets = parse_lets(args.let)
    alpha = parse_univar_ratfunc(args.alpha, "x", lets)
    beta = parse_univar_ratfunc(args.beta, "x", lets)
    if args.order < 2:
        raise ValueError("--order must be >= 2")
    _, outcome = check_hk(alpha, beta, args.order)
    eq = build_risch(alpha, beta, args.order)
    report = {
        "meta": _meta({"command": "risch", "order": args.order}),
        "equation": {"a": eq.a.to_str(), "b": eq.b.to_str(), "order": args.order},
        "outcome": {
            "status": "RationalSolution" if outcome.has_rational_solution else "NoRationalSolution",
            "solver": outcome.solver,
        },
    }
    if outcome.solution is not None:
        report["outcome"]["solution"] = outcome.solution.to_str()
        print(f"RationalSolution: y = {outcome.solution.to_str()} [{outcome.solver}]")
    else:
        detail = outcome.reason or ""
        case = f", case {outcome.case}" if outcome.case else ""
        report["outcome"]["reason"] = outcome.reason
        print(f"NoRationalSolution [{outcome.solver}{case}] {detail}")
    if outcome.case is not None:
        report["outcome"]["case"] = outcome.case
        if outcome.has_rational_solution:
            print(f"case: {outcome.case}")
    if args.json:
        _write_json(args.json, report)
    return 0, report


def _cmd_transform(args) -> tuple[int, dict]:
    variables = tuple(args.vars.split(","))
    if (
        len(variables) != 2
        or variables[0] == variables[1]
        or not all(v.isidentifier() for v in variables)
    ):
        raise ValueError(f"--vars must name two distinct variables, got {args.vars!r}")
    lets = parse_lets(args.let)
    p = parse_poly(args.p, variables, lets)
    q = parse_poly(args.q, variables, lets)
    out = infinity_transform(PlanarField(p, q))
    report = {
        "meta": _meta({"command": "transform", "vars": list(variables)}),
        "input": {"p": p.to_str(variables), "q": q.to_str(variables)},
        "field": {"p": out.p.to_str(), "q": out.q.to_str()},
    }
    print(f"p = {out.p.to_str()}")
    print(f"q = {out.q.to_str()}")
    if args.json:
        _write_json(args.json, report)
    return 0, report


def _batch_line(line: str) -> dict:
    try:
        payload = json.loads(line)
        lets = {
            name: Fraction(str(value)) for name, value in (payload.get("lets") or {}).items()
        }
        spec = FieldSpec(
            p_text=payload["p"],
            q_text=payload["q"],
            phi_text=str(payload.get("phi", "0")),
            k_max=int(payload.get("kmax", 2)),
            at_infinity=bool(payload.get("at_infinity", False)),
            interpretation=payload.get("h1", "literal"),
            lets=lets,
        )
        return spec.run().to_dict()
    except _INPUT_ERRORS + (KeyError, json.JSONDecodeError, TypeError) as exc:
        return {"error": str(exc)}


def _cmd_batch(args) -> tuple[int, dict]:
    with open(args.input, "r", encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(_batch_line, lines))
    sink = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        for result in results:
            sink.write(_canonical(result))
            sink.write("\n")
    finally:
        if sink is not sys.stdout:
            sink.close()
    failed = sum(1 for r in results if "error" in r)
    report = {"meta": _meta({"command": "batch"}), "lines": len(results), "failed": failed}
    return (0 if failed == 0 else 2), report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratcert",
        description="Certify non-rational-integrability of planar polynomial vector fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the obstruction procedure on a field")
    pa.add_argument("--p", required=True, help="first component of the field")
    pa.add_argument("--q", required=True, help="second component of the field")
    pa.add_argument("--phi", default="0", help="invariant curve y = phi(x); default 0")
    pa.add_argument("--kmax", type=int, default=2, help="highest variational order to test")
    pa.add_argument("--at-infinity", action="store_true", help="analyse along the line at infinity")
    pa.add_argument("--h1", choices=("literal", "corrected"), default="literal")
    pa.add_argument("--json", default=None, help="write the canonical JSON report to PATH")
    pa.add_argument("--let", action="append", default=[], metavar="NAME=VALUE")
    pa.add_argument("--vars", default="x,y", help="variable names, comma separated")
    pa.set_defaults(func=_cmd_analyze)

    pr = sub.add_parser("risch", help="decide one equation y' + (order-1)*alpha*y = beta")
    pr.add_argument("--alpha", required=True)
    pr.add_argument("--beta", required=True)
    pr.add_argument("--order", type=int, required=True)
    pr.add_argument("--json", default=None)
    pr.add_argument("--let", action="append", default=[], metavar="NAME=VALUE")
    pr.set_defaults(func=_cmd_risch)

    pt = sub.add_parser("transform", help="print the field in the infinity chart")
    pt.add_argument("--p", required=True)
    pt.add_argument("--q", required=True)
    pt.add_argument("--vars", default="z1,z2")
    pt.add_argument("--json", default=None)
    pt.add_argument("--let", action="append", default=[], metavar="NAME=VALUE")
    pt.set_defaults(func=_cmd_transform)

    pb = sub.add_parser("batch", help="analyse one JSON task per input line")
    pb.add_argument("--input", required=True)
    pb.add_argument("--output", default=None)
    pb.add_argument("--jobs", type=int, default=4)
    pb.set_defaults(func=_cmd_batch)
    return parser


def run(argv=None) -> tuple[int, dict | None]:
    """Parse arguments and execute; returns (exit code, report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), None
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
