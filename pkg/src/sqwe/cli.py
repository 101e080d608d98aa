"""Command line: ``sqwe analyze|search|plotdata|xcode|verify``."""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from . import oracle
from .code import CodeError, StabilizerCode, choose_logical_frame, classify, parse_code_text, validate
from .enumerator import (
    DistillationReport,
    analyze,
    build_x_code,
    compute_enumerators,
    rbar_from_r,
    theorem1_outputs,
    x_weight_distribution,
)
from .pauli import PauliError, PauliOperator, parse_bitvector
from .roots import INV_SQRT3
from .search import BranchResult, SearchConfig, SearchConfigError, search

EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_ORACLE = 4
EXIT_INTERRUPTED = 130

VERIFY_POINTS = (0.0, 0.1, 0.2, 0.3, 0.5, 1 / math.sqrt(3))


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_code(path: str) -> StabilizerCode:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_USAGE) from exc
    try:
        code = parse_code_text(text)
    except (PauliError, CodeError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from exc
    report = validate(code)
    if not report:
        raise CliError(f"{path}: invalid code: {report.detail}", EXIT_INVALID)
    return code


def radical_threshold(report: DistillationReport) -> str | None:
    """Exact r* as a radical expression when its minimal polynomial has degree <= 4."""
    th = report.threshold
    if not th or not th.useful or th.rbar_star is None:
        return None
    import sympy

    r = sympy.Symbol("r")
    poly = sympy.Poly(list(reversed(report.w_dist.coeffs)), r)
    for factor, _ in sympy.factor_list(poly.as_expr(), r)[1]:
        fp = sympy.Poly(factor, r)
        if fp.degree() > 4:
            continue
        for root in sympy.roots(fp, r):
            if root.is_real and abs(float(root) - th.rbar_star) < 1e-9:
                return str(sympy.radsimp(sympy.nsimplify(sympy.sqrt(3) * root)))
    return None


def verify_against_oracle(code: StabilizerCode, report: DistillationReport, samples: int = 2000, seed: int = 0) -> list[str]:
    """Cross-check polynomials and classification against the dense oracle.

    Returns a list of mismatch descriptions (empty when everything agrees).
    """
    problems = []
    frame = report.enumerators.frame
    for rbar in VERIFY_POINTS:
        dense = oracle.oracle_enumerator_values(code, frame, rbar)
        exact = [float(report.enumerators.axis(q)(rbar)) for q in "IXYZ"]
        for q, d, e in zip("IXYZ", dense, exact):
            if abs(d - e) > oracle.ATOL:
                problems.append(f"W_{q}({rbar:.6f}): polynomial {e!r} vs trace {d!r}")
    if code.n <= 5:
        proj = oracle.projector(code)
        rng = random.Random(seed)
        n = code.n
        if n <= 3:
            ops = [PauliOperator(n, x, z, k) for x in range(1 << n) for z in range(1 << n) for k in range(4)]
        else:
            ops = [PauliOperator(n, rng.randrange(1 << n), rng.randrange(1 << n), rng.randrange(4)) for _ in range(samples)]
        for p in ops:
            a, b = classify(p, code, frame), oracle.oracle_classify(p, code, frame, proj)
            if a != b:
                problems.append(f"classify({p}): exact {a} vs oracle {b}")
    return problems


def pure_success_probability(enums) -> str:
    """W_I(1/sqrt 3) / 2^(n-1) as exact text; zero when the projection never succeeds."""
    value = enums.W_I(INV_SQRT3) / (2 ** (enums.n - 1))
    if value.sign() <= 0:
        return "0" if value.sign() == 0 else str(float(value))
    p = theorem1_outputs(enums, INV_SQRT3).success_probability
    return str(p)


def _print_report(report: DistillationReport, radical: str | None) -> None:
    e = report.enumerators
    print(f"n = {report.code.n}")
    print("generators: " + ", ".join(str(g) for g in report.code.generators))
    print(f"M3-code: {report.m3_code}")
    print(f"T-axis preserving: {report.t_axis_preserving}")
    if report.relabeling:
        print("relabeling: " + " ".join(f"{'+' if s > 0 else '-'}{a}" for s, a in report.relabeling))
    for q in "IXYZ":
        print(f"W_{q}(r) = {e.axis(q)}")
    if report.w_dist is not None:
        print(f"W_dist(r) = {report.w_dist}")
    line = f"threshold r* = {report.threshold_r:.12f}"
    if radical:
        line += f" = {radical}"
    print(line)
    print(f"useful: {report.useful}")
    if report.threshold and report.threshold.multi_root:
        print("warning: several interior fixed points")
    print(f"success probability at r = 1: {pure_success_probability(e)}")


def cmd_analyze(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    report = analyze(code)
    radical = radical_threshold(report)
    problems = verify_against_oracle(code, report) if args.verify else []
    if args.json:
        d = report.to_dict()
        d["threshold_exact"] = radical
        d["success_probability_r1"] = pure_success_probability(report.enumerators)
        if args.verify:
            d["oracle_agreement"] = not problems
        print(json.dumps(d, sort_keys=True))
    else:
        _print_report(report, radical)
        if args.verify:
            print("oracle: " + ("agree within 1e-9" if not problems else f"{len(problems)} mismatches"))
    for msg in problems:
        print(msg, file=sys.stderr)
    return EXIT_ORACLE if problems else 0


def cmd_verify(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    if code.n > oracle.MAX_QUBITS:
        raise CliError(f"oracle supports n <= {oracle.MAX_QUBITS}", EXIT_USAGE)
    problems = verify_against_oracle(code, analyze(code), samples=args.samples)
    for msg in problems:
        print(msg, file=sys.stderr)
    print("ok" if not problems else f"{len(problems)} mismatches")
    return EXIT_ORACLE if problems else 0


def cmd_plotdata(args: argparse.Namespace) -> int:
    code = _load_code(args.codefile)
    report = analyze(code)
    if not report.t_axis_preserving:
        raise CliError("code is not T-axis preserving; no distillation polynomial", EXIT_INVALID)
    if args.samples < 2:
        raise CliError("--samples must be at least 2", EXIT_USAGE)
    # exact points: r = k/(N-1) gives r̄ = r/sqrt(3) in Q(sqrt 3); the marker r = 1/sqrt(3) gives r̄ = 1/3
    points = [(Fraction(k, args.samples - 1), None) for k in range(args.samples)]
    points.append((None, Fraction(1, 3)))
    points.sort(key=lambda pt: float(pt[0]) if pt[0] is not None else 1 / math.sqrt(3))
    e = report.enumerators
    denom = 2 ** (code.n - 1)
    out = [args.header]
    for r, rb in points:
        rbar = rbar_from_r(r) if r is not None else rb
        rval = float(r) if r is not None else 1 / math.sqrt(3)
        wi = float(e.W_I(rbar))
        wd = float(report.w_dist(rbar))
        out.append(f"{rval:.12f},{float(rbar):.12f},{wd:.12e},{wi:.12e},{wi / denom:.12e}")
    text = "\n".join(out) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_xcode(args: argparse.Namespace) -> int:
    try:
        lines = [l.split("#", 1)[0].strip() for l in Path(args.vectorfile).read_text().splitlines()]
    except OSError as exc:
        raise CliError(f"cannot read {args.vectorfile}: {exc}", EXIT_USAGE) from exc
    vectors = [l for l in lines if l]
    if not vectors:
        raise CliError(f"{args.vectorfile}: no vectors", EXIT_USAGE)
    try:
        wi = x_weight_distribution(vectors)
        code = build_x_code(vectors) if len(vectors) == len(vectors[0]) - 1 else None
    except PauliError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    except CodeError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    if code is not None:
        # the signed enumerator of an all-X code has no negative terms
        assert compute_enumerators(code, choose_logical_frame(code)).W_I == wi
    n = len(vectors[0])
    generators = [str(PauliOperator(n, parse_bitvector(v), 0)) for v in vectors]
    weights = [w for w, c in enumerate(wi.coeffs) if c]
    if args.json:
        print(json.dumps({
            "generators": generators,
            "n1_code": code is not None,
            "W_I": list(wi.coeffs),
            "nonzero_weights": weights,
        }))
    else:
        for g in generators:
            print(g)
        if code is None:
            print(f"# {len(vectors)} generators: a stabilizer group, not an [[{n},1]] code")
        print(f"# W_I(r) = {wi}")
        print("# weights present: " + " ".join(str(w) for w in weights))
    return 0


# -- search driver with checkpointing ---------------------------------------------


def _config_dict(cfg: SearchConfig) -> dict:
    d = asdict(cfg)
    d.pop("jobs")
    d.pop("keep_records")
    return d


def cmd_search(args: argparse.Namespace) -> int:
    try:
        cfg = SearchConfig(
            n=args.n, mode="m3" if args.m3 else "general", jobs=args.jobs, min_weight=args.min_weight,
            instrument=args.instrument, records=args.records, keep_records=False,
        )
    except SearchConfigError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "config.json"
    ckpt_path = out / "checkpoint.jsonl"
    partial_path = out / "records.partial.jsonl"
    prior: list[BranchResult] = []
    if args.resume and ckpt_path.exists():
        saved = json.loads(config_path.read_text()) if config_path.exists() else None
        if saved != _config_dict(cfg):
            raise CliError("checkpoint was written with a different configuration", EXIT_USAGE)
        seen = set()
        for line in ckpt_path.read_text().splitlines():
            if line.strip():
                r = BranchResult.from_dict(json.loads(line))
                if r.branch not in seen:
                    seen.add(r.branch)
                    prior.append(r)
    else:
        for p in (ckpt_path, partial_path, out / "records.jsonl", out / "summary.json"):
            p.unlink(missing_ok=True)
    config_path.write_text(json.dumps(_config_dict(cfg), sort_keys=True) + "\n")

    record_cfg = SearchConfig(**{**asdict(cfg), "keep_records": cfg.records != "none"})

    def on_branch(r: BranchResult) -> None:
        with partial_path.open("a") as fh:
            for rec in r.records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        with ckpt_path.open("a") as fh:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
        if not args.quiet:
            print(f"branch {r.branch}: {r.groups} groups, {r.useful} useful", file=sys.stderr)

    try:
        summary = search(record_cfg, skip={r.branch for r in prior}, on_branch=on_branch, prior=prior)
    except KeyboardInterrupt:
        print("interrupted; rerun with --resume to continue", file=sys.stderr)
        return EXIT_INTERRUPTED

    records = {}
    if partial_path.exists():
        for line in partial_path.read_text().splitlines():
            if line.strip():
                rec = json.loads(line)
                records[(rec["branch"], rec["seq"])] = line
    with (out / "records.jsonl").open("w") as fh:
        for key in sorted(records):
            fh.write(records[key] + "\n")
    d = summary.to_dict()
    if not args.instrument:
        d.pop("instrumentation")
    text = json.dumps(d, sort_keys=True)
    (out / "summary.json").write_text(text + "\n")
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqwe", description="Signed weight enumerators and T-state distillation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="enumerators, axis preservation and threshold of one code")
    p.add_argument("codefile")
    p.add_argument("--verify", action="store_true", help="cross-check with the dense oracle (n <= 7)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="exhaustive search over standard-form codes")
    p.add_argument("--n", type=int, required=True, help="number of physical qubits")
    p.add_argument("--m3", action="store_true", help="restrict to M3-codes")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--resume", action="store_true", help="skip branches already in the checkpoint")
    p.add_argument("--instrument", action="store_true", help="include the bit-count instrumentation")
    p.add_argument("--records", choices=("useful", "preserving", "none"), default="useful",
                   help="which signed codes are written as records")
    p.add_argument("--min-weight", type=int, default=2, help="smallest generator weight tried")
    p.add_argument("--quiet", action="store_true", help="no per-branch progress")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("plotdata", help="CSV samples of W_dist, W_I and success probability")
    p.add_argument("codefile")
    p.add_argument("--samples", type=int, default=101, help="evenly spaced r values in [0, 1]")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_plotdata, header="r,rbar,w_dist,w_i,p_success")

    p = sub.add_parser("xcode", help="all-X code from binary vectors and its W_I")
    p.add_argument("vectorfile")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_xcode)

    p = sub.add_parser("verify", help="dense-matrix cross-check of one code")
    p.add_argument("codefile")
    p.add_argument("--samples", type=int, default=2000, help="random operators per classification check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
