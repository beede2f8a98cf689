#!/usr/bin/env python3
"""Run the full verification matrix and print one summary block per configuration.

For each bundled configuration this builds the code, compares the brute-force
weight distribution with the closed-form tables, runs the exact-vs-predicted
hierarchy, evaluates the Griesmer bound, and reports the minimality test
(flagging R >= 3 instances where it fails).  Exits nonzero if any comparison
fails.
"""

import argparse
import sys

from quadcodes import (CodeCD, PairSpaceCtx, QuadForm, griesmer_sum,
                       hierarchy_report, make_field, minimality_check,
                       weight_distribution_bruteforce,
                       weight_distribution_predicted)
from quadcodes.ghw import TheoremParams


def diag_form(field, entries):
    s = field.s
    return QuadForm(field, [[entries[i] if i == j else 0 for j in range(s)]
                            for i in range(s)])


def build_configs(include_stretch: bool):
    F3 = make_field(3, 1)
    F9 = make_field(3, 2)
    tr_sq = QuadForm.from_trace_poly(F9, [[1, 0]])
    configs = [
        ("p=3 s1=s2=1  f=x^2, g=2y^2", QuadForm(F3, [[1]]), QuadForm(F3, [[2]])),
        ("p=3 s1=2 s2=1  f=Tr(x^2), g=y^2", tr_sq, QuadForm(F3, [[1]])),
        ("p=3 s1=s2=2  f=Tr(x^2), g=diag(1,1)", tr_sq,
         QuadForm(F9, [[1, 0], [0, 1]])),
        ("p=3 s1=s2=2  f=g=diag(1,1)  (case A)", diag_form(F9, (1, 1)),
         diag_form(F9, (1, 1))),
    ]
    if include_stretch:
        configs.append(("p=3 s1=3 s2=2  f=diag(1,1,1), g=diag(1,1)  (stretch)",
                        diag_form(make_field(3, 3), (1, 1, 1)),
                        diag_form(F9, (1, 1))))
    return configs


def run_one(label: str, f: QuadForm, g: QuadForm, threads: int) -> bool:
    ctx = PairSpaceCtx(f.field, g.field)
    code = CodeCD(ctx, f, g)
    params = TheoremParams.from_forms(f, g)
    print(f"== {label}")
    print(f"   n = {code.n}, dimension = {code.dimension}, "
          f"R = {params.R}, eps = {params.eps:+d}")
    ok = True

    brute = weight_distribution_bruteforce(code, threads=threads)
    predicted = weight_distribution_predicted(
        params.p, params.s, params.R, params.eps)
    wd_ok = brute == predicted
    ok &= wd_ok
    print(f"   weights: {dict(sorted(brute.items()))} "
          f"({'match' if wd_ok else 'MISMATCH'})")

    rep = hierarchy_report(f, g, check_product_witness=False)
    ok &= rep.verdict
    d1 = rep.rows[0].exact
    bounds = [griesmer_sum(d1, row.r, params.p) for row in rep.rows]
    print(f"   hierarchy: exact {rep.exact}, theorem '{rep.theorem}' "
          f"({'match' if rep.verdict else 'MISMATCH'})")
    print(f"   griesmer bounds: {tuple(bounds)}, equality at r = "
          f"{[row.r for row, b in zip(rep.rows, bounds) if row.exact == b]}")

    holds, w_min, w_max = minimality_check(brute, params.p)
    flag = "  [FLAGGED: fails despite R >= 3]" if params.R >= 3 and not holds \
        else ""
    print(f"   minimality: {'holds' if holds else 'fails'} "
          f"(w_min={w_min}, w_max={w_max}){flag}")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--skip-stretch", action="store_true",
                        help="omit the s = 5 configuration")
    args = parser.parse_args()
    all_ok = True
    for label, f, g in build_configs(not args.skip_stretch):
        all_ok &= run_one(label, f, g, args.threads)
        print()
    print("overall:", "all comparisons passed" if all_ok else "FAILURES above")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
