#!/usr/bin/env python3
"""Run the three worked families end to end and print a summary table.

Usage:
    python scripts/case_studies.py [--kmax N]

Covers:
  * the cubic family (x^3 - y, y*(x^2 - c*x - b - a*y)) over a parameter
    sweep, splitting the certified-non-integrable region from the
    undecided boundary c = -a*b/3;
  * the constant-profile power-pole family across pole exponents,
    locating the solvable/unsolvable threshold;
  * the linear-profile quadratic field, including the order-10 sweep and
    the Darboux-type first integral check.
"""

import argparse
import time
from fractions import Fraction

from ratcert.algebra import Poly, RatFunc
from ratcert.analyzer import analyze
from ratcert.planar import (
    BivarPoly,
    BivarRatFunc,
    PlanarField,
    verify_darboux_integral,
)
from ratcert.risch import KaltofenInstance, solve_general, solve_xk_specialized

XV, YV = BivarPoly.var(0), BivarPoly.var(1)


def cubic_sweep():
    print("== cubic family: (x^3 - y) d/dx + y*(x^2 - c*x - b - a*y) d/dy ==")
    triples = [
        (Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(2), Fraction(1), Fraction(-1)),
        (Fraction(0), Fraction(3), Fraction(2)),
        (Fraction(1, 2), Fraction(-2), Fraction(1)),
        (Fraction(3), Fraction(1), Fraction(-1)),  # boundary: c = -a*b/3
        (Fraction(-3), Fraction(2), Fraction(2)),  # boundary again
    ]
    for a, b, c in triples:
        field = PlanarField(XV**3 - YV, YV * (XV**2 - c * XV - BivarPoly.const(b) - a * YV))
        started = time.perf_counter()
        cert = analyze(field, RatFunc.zero(), 2)
        ms = 1000 * (time.perf_counter() - started)
        tag = "boundary c=-a*b/3" if c == -a * b / 3 else ""
        verdict = cert.verdict.status
        if cert.verdict.k is not None:
            verdict += f" (k={cert.verdict.k})"
        print(f"  a={a!s:>5} b={b!s:>5} c={c!s:>5}  ->  {verdict:<34} {ms:6.1f} ms  {tag}")
    print()


def power_pole_threshold():
    print("== power-pole family: alpha = 1/x^k, beta = 2/x^(2k) + 2/x^k ==")
    for k in range(2, 8):
        inst = KaltofenInstance(Poly.const(1), Poly.const(1), k)
        special = solve_xk_specialized(inst)
        general = solve_general(inst.equation())
        assert special.has_rational_solution == general.has_rational_solution
        if special.has_rational_solution:
            print(f"  k={k}: rational solution y = {special.solution.to_str()}")
        else:
            print(f"  k={k}: no rational solution (case {special.case}, {special.reason})")
    print()


def elementary_family(k_max: int):
    print(f"== quadratic field (x^2 - y) d/dx + y*(x + 1) d/dy, orders 2..{k_max} ==")
    field = PlanarField(XV**2 - YV, YV * (XV + 1))
    started = time.perf_counter()
    cert = analyze(field, RatFunc.zero(), k_max)
    elapsed = time.perf_counter() - started
    for record in cert.orders:
        print(f"  k={record.k}: y = {record.outcome.solution.to_str()}")
    print(f"  verdict: {cert.verdict.status} ({cert.verdict.reason}) in {elapsed:.2f}s")
    r = BivarRatFunc(XV + YV, YV)
    s = BivarRatFunc(-(XV + 1), XV + YV)
    print(f"  first integral R*exp(S) with R=(x+y)/y, S=-(x+1)/(x+y): "
          f"{'confirmed' if verify_darboux_integral(field, r, s) else 'FAILED'}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kmax", type=int, default=10)
    args = parser.parse_args()
    cubic_sweep()
    power_pole_threshold()
    elementary_family(args.kmax)


if __name__ == "__main__":
    main()
