"""Configuration-driven command-line front end.

Commands: build | wdist | ghw | verify | export.  A run is described by a
JSON config naming the two fields, the two forms, and optional limits;
reports embed the fully resolved config (including auto-selected moduli)
and are serialized with sorted keys so identical runs produce identical
bytes.  Timing is printed to standard output only, never written into
report files.

Exit codes: 0 all checks passed, 1 some check failed, 2 config error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import codes, cyclotomic, ghw
from .errors import (ConfigError, DimensionDeficient, NoApplicableTheorem,
                     NonIntegerWeight, OracleMismatch, QuadCodesError, TooLarge)
from .gf import ExtField, make_field
from .ghw import TheoremParams
from .quadform import QuadForm
from .subspace import PairSpaceCtx, Subspace, enumerate_subspaces, matmul

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

DEFAULT_MESSAGE_LIMIT = codes.DEFAULT_MESSAGE_LIMIT
DEFAULT_SUBSPACE_LIMIT = ghw.DEFAULT_SUBSPACE_LIMIT
SUITES = ("lemma21", "lemma22", "lemma26", "lemma27",
          "lemma32", "lemma33", "tables", "theorems", "all")


# -- configuration ---------------------------------------------------------------

@dataclass
class RunConfig:
    field1: ExtField
    field2: ExtField
    f: QuadForm
    g: QuadForm
    message_limit: int = DEFAULT_MESSAGE_LIMIT
    subspace_limit: int = DEFAULT_SUBSPACE_LIMIT

    @property
    def ctx(self) -> PairSpaceCtx:
        return PairSpaceCtx(self.field1, self.field2)

    def resolved(self) -> dict:
        """The full config with every default made explicit, for embedding."""
        def field_json(fld: ExtField) -> dict:
            return {"p": fld.p, "s": fld.s, "modulus": list(fld.modulus)}

        def form_json(form: QuadForm) -> dict:
            return {"kind": "gram", "rows": [list(r) for r in form.gram]}

        return {
            "field1": field_json(self.field1),
            "field2": field_json(self.field2),
            "form_f": form_json(self.f),
            "form_g": form_json(self.g),
            "limits": {"max_messages": self.message_limit,
                       "max_subspaces": self.subspace_limit},
        }


def _build_form(fld: ExtField, spec: dict, label: str) -> QuadForm:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"{label} must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "gram":
        if "rows" not in spec:
            raise ConfigError(f"{label}: gram form needs 'rows'")
        return QuadForm(fld, spec["rows"])
    if kind == "trace_poly":
        if "coeffs" not in spec:
            raise ConfigError(f"{label}: trace_poly form needs 'coeffs'")
        return QuadForm.from_trace_poly(fld, spec["coeffs"])
    raise ConfigError(f"{label}: unknown form kind {kind!r}")


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    try:
        f1 = raw["field1"]
        f2 = raw["field2"]
        p = int(f1["p"])
        field1 = make_field(p, int(f1["s"]), f1.get("modulus"))
        field2 = make_field(p, int(f2["s"]), f2.get("modulus"))
        f = _build_form(field1, raw["form_f"], "form_f")
        g = _build_form(field2, raw["form_g"], "form_g")
        limits = raw.get("limits", {})
        return RunConfig(
            field1, field2, f, g,
            message_limit=int(limits.get("max_messages", DEFAULT_MESSAGE_LIMIT)),
            subspace_limit=int(limits.get("max_subspaces", DEFAULT_SUBSPACE_LIMIT)))
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"config missing required key: {exc}") from exc
    except (TypeError, ValueError, QuadCodesError) as exc:
        raise ConfigError(f"invalid config: {exc}") from exc


def write_report(out_dir: str, name: str, payload: dict) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


# -- verification suites -----------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    count: int = 0
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "count": self.count}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteResult:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def _run_check(checks: list[CheckResult], name: str, fn) -> None:
    """Run fn() -> (count, detail); classify pass/fail/skipped with timing."""
    t0 = time.perf_counter()
    try:
        result = fn()
        count, detail = result if isinstance(result, tuple) else (result, {})
        status = "pass"
    except TooLarge as exc:
        count, detail, status = 0, {"reason": str(exc)}, "skipped"
    except (OracleMismatch, NonIntegerWeight, AssertionError) as exc:
        count, detail, status = 0, {"error": str(exc)}, "fail"
    checks.append(CheckResult(name, status, count,
                              time.perf_counter() - t0, detail))


def _all_subspaces(p: int, m: int):
    for r in range(m + 1):
        yield from enumerate_subspaces(p, m, r)


def _subspace_budget(p: int, m: int, limit: int) -> None:
    from .subspace import gaussian_binomial
    total = sum(gaussian_binomial(p, m, r) for r in range(m + 1))
    if total > limit:
        raise TooLarge(f"{total} subspaces of F_{p}^{m} exceed the limit {limit}")


def suite_lemma21(cfg: RunConfig) -> SuiteResult:
    """Galois-orbit sums of (p*)^(r/2) zeta^z versus their closed forms."""
    res = SuiteResult("lemma21")
    p = cfg.field1.p

    def run():
        n = 0
        for r in range(1, 5):
            for z in range(p):
                cyclotomic.sigma_orbit_sum(p, r, z)
                n += 1
        return n
    _run_check(res.checks, f"orbit-sums-p{p}-r1..4", run)
    return res


def _per_form_subspace_suite(cfg: RunConfig, suite: str, check_one) -> SuiteResult:
    res = SuiteResult(suite)
    for label, form in (("f", cfg.f), ("g", cfg.g)):
        def run(form=form):
            _subspace_budget(form.p, form.s, cfg.subspace_limit)
            n = 0
            for H in _all_subspaces(form.p, form.s):
                check_one(form, H)
                n += 1
            return n
        _run_check(res.checks, f"{suite}-form-{label}", run)
    return res


def suite_lemma22(cfg: RunConfig) -> SuiteResult:
    """Level-set counts |H ∩ {f = beta}| versus the rank/sign closed form."""
    return _per_form_subspace_suite(
        cfg, "lemma22", lambda form, H: cyclotomic.check_form_on_subspace(form, H))


def suite_lemma27(cfg: RunConfig) -> SuiteResult:
    """Subspace character sums versus sign * (p*)^(R_H/2) * p^(r - R_H)."""
    return _per_form_subspace_suite(
        cfg, "lemma27", lambda form, H: cyclotomic.subspace_char_sum(form, H))


def suite_lemma26(cfg: RunConfig) -> SuiteResult:
    """Weil sums with a linear twist, for every b of each field."""
    res = SuiteResult("lemma26")
    for label, form in (("f", cfg.f), ("g", cfg.g)):
        if form.field.order > cfg.message_limit:
            res.checks.append(CheckResult(
                f"lemma26-form-{label}", "skipped",
                detail={"reason": f"q = {form.field.order} over limit"}))
            continue
        _run_check(res.checks, f"lemma26-form-{label}",
                   lambda form=form: cyclotomic.weil_sum_check_all(form))
    return res


def _subspaces_of(S: Subspace, limit: int):
    """All subspaces of a fixed subspace S, mapped to ambient coordinates."""
    from .subspace import gaussian_binomial
    total = sum(gaussian_binomial(S.p, S.dim, r) for r in range(S.dim + 1))
    if total > limit:
        raise TooLarge(f"{total} subspaces of a {S.dim}-dim space exceed {limit}")
    for r in range(S.dim + 1):
        for W in enumerate_subspaces(S.p, S.dim, r):
            if r == 0:
                yield Subspace.zero(S.p, S.m)
            else:
                yield Subspace.from_vectors(
                    S.p, S.m, matmul(W.basis, S.basis, S.p))


def suite_lemma32(cfg: RunConfig) -> SuiteResult:
    """Product level-set counts over U x V inside Im(L_f) x Im(L_g)."""
    res = SuiteResult("lemma32")
    p = cfg.field1.p

    def run():
        n = 0
        for U in _subspaces_of(cfg.f.image, cfg.subspace_limit):
            for V in _subspaces_of(cfg.g.image, cfg.subspace_limit):
                for t in range(p):
                    ghw.count_Sfg(cfg.f, cfg.g, U, V, t)
                    n += 1
        return n
    _run_check(res.checks, "product-level-sets", run)
    return res


def suite_lemma33(cfg: RunConfig) -> SuiteResult:
    """N(H) = |H^perp ∩ D| + 1 versus its character-sum closed form, all H."""
    res = SuiteResult("lemma33")
    ctx = cfg.ctx
    dset = codes.build_defining_set(ctx, cfg.f, cfg.g)

    def run():
        _subspace_budget(ctx.p, ctx.s, cfg.subspace_limit)
        n = 0
        for H in _all_subspaces(ctx.p, ctx.s):
            ghw.count_N(cfg.f, cfg.g, H, ctx=ctx, defining_set=dset)
            n += 1
        return n
    _run_check(res.checks, "orthogonal-counts", run)
    return res


def suite_tables(cfg: RunConfig, threads: int = 1,
                 _corrupt_sign: bool = False) -> SuiteResult:
    """Brute-force weight distribution versus the closed-form tables.

    _corrupt_sign deliberately negates the sign product fed to the predicted
    table; it exists so the negative path (a mismatch must be reported as a
    failure, not masked) stays tested.  It is not reachable from the CLI.
    """
    res = SuiteResult("tables")
    code = codes.CodeCD(cfg.ctx, cfg.f, cfg.g)
    params = TheoremParams.from_forms(cfg.f, cfg.g)

    def check_length():
        if params.R < 1:
            raise TooLarge("length formula needs R >= 1")  # reported as skipped
        expected = codes.predicted_length(params.p, params.s, params.R, params.eps)
        if code.n != expected:
            raise OracleMismatch(f"|D| = {code.n} but formula gives {expected}")
        return code.n, {"n": code.n}
    _run_check(res.checks, "length-formula", check_length)

    def check_wd():
        if not code.full_dimensional:
            raise TooLarge(f"dimension {code.dimension} < s = {code.s}; "
                           "tables presuppose full dimension")
        if params.R < 1:
            raise TooLarge("tables need R >= 1")
        eps = -params.eps if _corrupt_sign else params.eps
        predicted = codes.weight_distribution_predicted(
            params.p, params.s, params.R, eps)
        brute = codes.weight_distribution_bruteforce(
            code, threads=threads, limit=cfg.message_limit)
        if brute != predicted:
            raise OracleMismatch(
                f"weight distribution {brute} != predicted {predicted}")
        return sum(brute.values()), {"distribution": {str(w): a for w, a
                                                      in sorted(brute.items())}}
    _run_check(res.checks, "weight-distribution", check_wd)

    def check_minimality():
        brute = codes.weight_distribution_bruteforce(
            code, threads=threads, limit=cfg.message_limit)
        holds, w_min, w_max = codes.minimality_check(brute, params.p)
        detail = {"holds": holds, "w_min": w_min, "w_max": w_max,
                  "R": params.R}
        if params.R >= 3 and not holds:
            detail["flag"] = ("minimality fails despite R >= 3: "
                              f"{params.p}*{w_min} <= {params.p - 1}*{w_max}")
        return 1, detail
    _run_check(res.checks, "minimality-reported", check_minimality)
    return res


def suite_theorems(cfg: RunConfig) -> SuiteResult:
    """Exhaustive weight hierarchy versus the applicable closed-form theorem."""
    res = SuiteResult("theorems")

    def run():
        try:
            report = ghw.hierarchy_report(
                cfg.f, cfg.g, check_product_witness=False,
                max_subspaces=cfg.subspace_limit)
        except DimensionDeficient as exc:
            raise TooLarge(str(exc)) from exc  # reported as skipped
        detail = {"theorem": report.theorem,
                  "exact": list(report.exact),
                  "predicted": [row.predicted for row in report.rows]}
        for row in report.rows:
            if row.match is False:
                raise OracleMismatch(
                    f"d_{row.r}: exact {row.exact} != predicted {row.predicted}")
        return len(report.rows), detail
    _run_check(res.checks, "hierarchy-match", run)
    return res


SUITE_RUNNERS = {
    "lemma21": suite_lemma21,
    "lemma22": suite_lemma22,
    "lemma26": suite_lemma26,
    "lemma27": suite_lemma27,
    "lemma32": suite_lemma32,
    "lemma33": suite_lemma33,
    "tables": suite_tables,
    "theorems": suite_theorems,
}


def run_suites(cfg: RunConfig, suite: str, threads: int = 1) -> list[SuiteResult]:
    names = list(SUITE_RUNNERS) if suite == "all" else [suite]
    results = []
    for name in names:
        runner = SUITE_RUNNERS[name]
        if name == "tables":
            results.append(runner(cfg, threads=threads))
        else:
            results.append(runner(cfg))
    return results


# -- commands ----------------------------------------------------------------------

def cmd_build(cfg: RunConfig, args) -> int:
    code = codes.CodeCD(cfg.ctx, cfg.f, cfg.g)
    os.makedirs(args.out, exist_ok=True)
    gen_path = os.path.join(args.out, "generator.csv")
    codes.export_generator_csv(code, gen_path)
    warnings = []
    if code.n == 0:
        warnings.append("defining set is empty (n = 0)")
    elif not code.full_dimensional:
        warnings.append(f"dimension {code.dimension} < s = {code.s}")
    payload = {
        "config": cfg.resolved(),
        "n": code.n,
        "dimension": code.dimension,
        "defining_set_size": code.n,
        "generator_csv": "generator.csv",
        "warnings": warnings,
    }
    path = write_report(args.out, "build_report.json", payload)
    print(f"n = {code.n}, dimension = {code.dimension}")
    for w in warnings:
        print(f"warning: {w}")
    print(f"wrote {gen_path} and {path}")
    return EXIT_OK


def cmd_wdist(cfg: RunConfig, args) -> int:
    code = codes.CodeCD(cfg.ctx, cfg.f, cfg.g)
    params = TheoremParams.from_forms(cfg.f, cfg.g)
    brute = codes.weight_distribution_bruteforce(
        code, threads=args.threads, limit=cfg.message_limit)
    predicted = None
    verdict = None
    if code.full_dimensional and params.R >= 1:
        predicted = codes.weight_distribution_predicted(
            params.p, params.s, params.R, params.eps)
        verdict = brute == predicted
    holds, w_min, w_max = codes.minimality_check(brute, params.p)
    minimality = {"holds": holds, "w_min": w_min, "w_max": w_max, "R": params.R}
    if params.R >= 3 and not holds:
        minimality["flag"] = "minimality fails despite R >= 3"
    payload = {
        "config": cfg.resolved(),
        "n": code.n,
        "dimension": code.dimension,
        "bruteforce": {str(w): a for w, a in sorted(brute.items())},
        "predicted": ({str(w): a for w, a in sorted(predicted.items())}
                      if predicted is not None else None),
        "match": verdict,
        "minimality": minimality,
    }
    if args.format == "csv":
        os.makedirs(args.out, exist_ok=True)
        csv_path = os.path.join(args.out, "wdist.csv")
        with open(csv_path, "w") as fh:
            for w, a in sorted(brute.items()):
                fh.write(f"{w},{a}\n")
        print(f"wrote {csv_path}")
    path = write_report(args.out, "wdist_report.json", payload)
    for w, a in sorted(brute.items()):
        mark = ""
        if predicted is not None and predicted.get(w) != a:
            mark = "  (MISMATCH)"
        print(f"weight {w}: {a}{mark}")
    print(f"minimality: {'holds' if holds else 'fails'} "
          f"(w_min={w_min}, w_max={w_max})"
          + ("  [FLAGGED: R >= 3]" if "flag" in minimality else ""))
    print(f"wrote {path}")
    if verdict is False:
        print("FAIL: brute-force distribution disagrees with the tables")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _parse_r_range(text: str | None, s: int) -> list[int]:
    if text is None:
        return list(range(1, s + 1))
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def cmd_ghw(cfg: RunConfig, args) -> int:
    rs = _parse_r_range(args.r_range, cfg.ctx.s)
    try:
        report = ghw.hierarchy_report(
            cfg.f, cfg.g, r_range=rs,
            check_product_witness=not args.no_witness,
            max_subspaces=cfg.subspace_limit)
    except DimensionDeficient as exc:
        if not args.force:
            print(f"error: {exc} (use --force to report anyway)", file=sys.stderr)
            return EXIT_CHECK_FAILED
        code = codes.CodeCD(cfg.ctx, cfg.f, cfg.g)
        payload = {"config": cfg.resolved(), "n": code.n,
                   "dimension": code.dimension, "rows": [],
                   "warning": str(exc), "verdict": None}
        path = write_report(args.out, "ghw_report.json", payload)
        print(f"warning: {exc}")
        print(f"wrote {path}")
        return EXIT_OK
    payload = {"config": cfg.resolved(), **report.to_json()}
    path = write_report(args.out, "ghw_report.json", payload)
    print(f"{'r':>3} {'exact':>7} {'predicted':>9} {'griesmer':>8} "
          f"{'match':>5}")
    for row in report.rows:
        pred = row.predicted if row.predicted is not None else "-"
        match = {True: "yes", False: "NO", None: "-"}[row.match]
        print(f"{row.r:>3} {row.exact:>7} {pred!s:>9} "
              f"{row.griesmer_bound:>8} {match:>5}")
    print(f"theorem: {report.theorem}, verdict: {report.verdict}")
    print(f"wrote {path}")
    return EXIT_OK if report.verdict else EXIT_CHECK_FAILED


def cmd_verify(cfg: RunConfig, args) -> int:
    results = run_suites(cfg, args.suite, threads=args.threads)
    payload = {"config": cfg.resolved(),
               "suites": [r.to_json() for r in results]}
    path = write_report(args.out, f"verify_{args.suite}.json", payload)
    any_fail = False
    for result in results:
        for check in result.checks:
            line = (f"{result.suite}::{check.name}: {check.status.upper()} "
                    f"({check.count} checks, {check.seconds:.2f}s)")
            if check.detail.get("reason"):
                line += f" — {check.detail['reason']}"
            if check.detail.get("error"):
                line += f" — {check.detail['error']}"
            if check.detail.get("flag"):
                line += f" — FLAGGED: {check.detail['flag']}"
            print(line)
            if check.status == "fail":
                any_fail = True
    print(f"wrote {path}")
    return EXIT_CHECK_FAILED if any_fail else EXIT_OK


def cmd_export(cfg: RunConfig, args) -> int:
    code = codes.CodeCD(cfg.ctx, cfg.f, cfg.g)
    os.makedirs(args.out, exist_ok=True)
    gen_path = os.path.join(args.out, "generator.csv")
    codes.export_generator_csv(code, gen_path)
    print(f"wrote {gen_path} ({code.s} rows x {code.n} columns)")
    return EXIT_OK


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcodes",
        description="Build and verify three-weight codes from quadratic forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True, help="JSON config path")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads for brute-force enumeration")

    sp = sub.add_parser("build", help="construct the code and export artifacts")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("wdist", help="brute-force vs predicted weight distribution")
    common(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_wdist)

    sp = sub.add_parser("ghw", help="exact vs predicted weight hierarchy")
    common(sp)
    sp.add_argument("--r-range", default=None,
                    help="single r or lo:hi (default 1:s)")
    sp.add_argument("--force", action="store_true",
                    help="report even when the dimension is below s")
    sp.add_argument("--no-witness", action="store_true",
                    help="skip the product-subspace witness search")
    sp.set_defaults(func=cmd_ghw)

    sp = sub.add_parser("verify", help="run a named verification suite")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write the generator matrix CSV")
    common(sp)
    sp.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadCodesError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(cfg, args)
    except TooLarge as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OracleMismatch as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except QuadCodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
