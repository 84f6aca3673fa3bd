"""Command-line surface: exact values, approximations, simulation, verification.

Output is machine readable: JSON ({"schema_version": 1, "rows": [...]}) or
RFC-4180 CSV with identical numeric payloads.  High-precision values are
printed as 25-significant-digit decimal strings next to an explicit err
column.  All commands are deterministic given their flags; simulation
seeds default to a fixed constant (pass --randomize for entropy seeding).

Exit codes: 0 ok, 1 assertion or claim failure, 2 usage error,
3 resource-bound error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
from dataclasses import asdict

from . import asymptotics, exact, montecarlo, poisson_approx, verification
from .hpreal import HPReal
from .montecarlo import DEFAULT_SEED, SeededStream
from .sorters import ResourceBoundError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _hp_columns(value: HPReal, prefix: str = "value") -> dict:
    return {
        prefix: float(value),
        f"{prefix}_dec": value.decimal_string(25),
        f"{prefix}_err": value.err,
    }


def _summary_row(summary) -> dict:
    return {k: v for k, v in asdict(summary).items() if v is not None}


# ---------------------------------------------------------------------------
# exact
# ---------------------------------------------------------------------------


def _cmd_exact(args) -> tuple[list[dict], int]:
    t = args.target
    rows: list[dict] = []
    if t == "collision-sf":
        rows.append({"target": t, "n": args.n, "m": args.m,
                     **_hp_columns(exact.collision_sf(args.n, args.m))})
    elif t == "pass-cdf":
        rows.append({"target": t, "n": args.n, "m": args.m,
                     **_hp_columns(exact.pass_cdf(args.n, args.m))})
    elif t == "series":
        rows.append({"target": "collision-sf-series", "n": args.n, "m": args.m,
                     "depth": args.depth,
                     **_hp_columns(exact.collision_sf_series(args.n, args.m, args.depth))})
        rows.append({"target": "pass-cdf-series", "n": args.n, "m": args.m,
                     "depth": args.depth,
                     **_hp_columns(exact.pass_cdf_series(args.n, args.m, args.depth))})
    elif t == "sandwich":
        lower, upper = exact.sandwich_bounds(args.n, args.m)
        mid = exact.pass_cdf(args.n, args.m)
        rows.append({
            "target": t, "n": args.n, "m": args.m,
            **_hp_columns(lower, "lower"),
            **_hp_columns(mid, "pass_cdf"),
            **_hp_columns(upper, "upper"),
            "bracketed": bool(lower <= mid <= upper),
        })
    elif t == "relerr":
        for kind, report in (
            ("common", exact.relative_error_common(args.n, args.m)),
            ("shifted", exact.relative_error_shifted(args.n, args.m)),
        ):
            rows.append({
                "target": t, "kind": kind, "n": args.n, "m": args.m,
                **_hp_columns(report.exact_ratio, "exact_ratio"),
                "relative_error": report.relative_error,
                "asymptotic_formula_value": report.asymptotic_formula_value,
            })
    elif t == "optimal-shift":
        brute, asym = exact.optimal_shift(args.n, args.m)
        rows.append({"target": t, "n": args.n, "m": args.m,
                     "brute_force_shift": brute, "asymptotic_shift": asym})
    elif t == "moments":
        rows.append({"target": "scaled-pass-moment", "n": args.n, "k": args.k,
                     **_hp_columns(exact.scaled_pass_moment(args.n, args.k))})
        rows.append({"target": "scaled-collision-moment", "n": args.n, "k": args.k,
                     **_hp_columns(exact.scaled_collision_moment(args.n, args.k))})
        rows.append({"target": "scaled-pass-variance", "n": args.n,
                     **_hp_columns(exact.scaled_pass_variance(args.n))})
    else:
        raise ValueError(f"unknown exact target {t!r}")
    return rows, EXIT_OK


# ---------------------------------------------------------------------------
# approx
# ---------------------------------------------------------------------------


def _with_reference(value: float, reference: float) -> dict:
    return {
        "value": value,
        "exact": reference,
        "abs_error": abs(value - reference),
        "rel_error": abs(value - reference) / abs(reference) if reference else math.inf,
    }


def _cmd_approx(args) -> tuple[list[dict], int]:
    t = args.target
    n = args.n
    rows: list[dict] = []
    if t == "varrho":
        value = asymptotics.scaled_pass_survival_expansion(n, args.x)
        row = {"target": t, "n": n, "x": args.x, "value": value}
        mf = args.x * math.sqrt(n)
        if abs(mf - round(mf)) < 1e-8 and 0 <= round(mf) <= n - 1:
            row.update(_with_reference(value, float(asymptotics.scaled_pass_survival(n, args.x))))
        rows.append(row)
    elif t == "cdf":
        if args.x is not None:
            m = round(args.x * math.sqrt(n))
            rows.append({
                "target": "scaled-pass-cdf", "n": n, "x": args.x,
                **_with_reference(asymptotics.scaled_pass_cdf_approx(n, args.x),
                                  1.0 - float(exact.pass_cdf(n, m + 1)) if m + 1 < n else 1.0),
            })
        if args.z is not None:
            j = round(args.z * math.sqrt(n))
            rows.append({
                "target": "scaled-collision-cdf", "n": n, "z": args.z,
                **_with_reference(asymptotics.scaled_collision_cdf_approx(n, args.z),
                                  1.0 - float(exact.collision_sf(n, j))),
            })
        if not rows:
            raise ValueError("cdf target needs --x (pass side) and/or --z (collision side)")
    elif t == "pmf":
        if args.x is not None:
            m = round(args.x * math.sqrt(n))
            ref = float(exact.pass_cdf(n, m)) - (
                float(exact.pass_cdf(n, m + 1)) if m + 1 < n else 0.0
            )
            rows.append({
                "target": "scaled-pass-pmf", "n": n, "x": args.x,
                **_with_reference(asymptotics.scaled_pass_pmf_approx(n, args.x), ref),
            })
        if args.z is not None:
            j = round(args.z * math.sqrt(n))
            ref = float(exact.collision_sf(n, j - 1)) - float(exact.collision_sf(n, j))
            rows.append({
                "target": "scaled-collision-pmf", "n": n, "z": args.z,
                **_with_reference(asymptotics.scaled_collision_pmf_approx(n, args.z), ref),
            })
        if not rows:
            raise ValueError("pmf target needs --x (pass side) and/or --z (collision side)")
    elif t == "moments":
        rows.append({
            "target": t, "n": n, "k": args.k,
            **_with_reference(asymptotics.scaled_pass_moment_approx(n, args.k),
                              float(exact.scaled_pass_moment(n, args.k))),
        })
    elif t == "charfn":
        value = asymptotics.scaled_pass_charfn_approx(n, args.t)
        ref = exact.scaled_pass_charfn_exact(n, args.t)
        rows.append({
            "target": t, "n": n, "t": args.t,
            "value_re": value.real, "value_im": value.imag,
            "exact_re": ref.real, "exact_im": ref.imag,
            "abs_error": abs(value - ref),
        })
    elif t == "stats":
        stats = asymptotics.scaled_pass_stats_approx(n)
        rows.append({
            "target": "mean", "n": n,
            **_with_reference(stats.mean_approx, float(exact.scaled_pass_moment(n, 1))),
        })
        rows.append({
            "target": "second-moment", "n": n,
            **_with_reference(stats.second_moment_approx, float(exact.scaled_pass_moment(n, 2))),
        })
        rows.append({
            "target": "variance", "n": n,
            **_with_reference(stats.variance_approx, float(exact.scaled_pass_variance(n))),
        })
    elif t == "opt-deltas":
        deltas = asymptotics.expected_opcount_deltas(n)
        e1 = float(exact.scaled_pass_moment(n, 1))
        e2 = float(exact.scaled_pass_moment(n, 2))
        exact_reduction = (n * e2 - math.sqrt(n) * e1) / 2.0
        rows.append({
            "target": "comparison-reduction", "n": n,
            **_with_reference(deltas.comparison_reduction, exact_reduction),
        })
        rows.append({"target": "flag-writes-early-exit", "n": n,
                     "value": deltas.flag_writes_early_exit})
        rows.append({"target": "flag-writes-variant", "n": n,
                     "value": deltas.flag_writes_variant})
    elif t == "em-check":
        rows.append({
            "target": t, "n": n, "epsilon": args.epsilon,
            "residual": asymptotics.euler_maclaurin_residual(n, args.epsilon),
        })
    else:
        raise ValueError(f"unknown approx target {t!r}")
    return rows, EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> tuple[list[dict], int]:
    stream = SeededStream(args.seed, args.stream_id)
    code = EXIT_OK
    rows: list[dict] = []
    if args.target == "law":
        summary = montecarlo.empirical_law(args.kind, args.n, args.trials, stream)
        row = _summary_row(summary)
        crit = 1.63 / math.sqrt(args.trials)
        row["ks_critical_1pct"] = crit
        row["seed"] = args.seed
        rows.append(row)
        if args.check and summary.ks_exact >= crit:
            code = EXIT_FAILURE
    elif args.target == "delta":
        summary = montecarlo.empirical_pair_matches(args.kind, args.n, args.m, args.trials, stream)
        family = (
            poisson_approx.birthday_family(args.n, args.m)
            if args.kind == "birthday"
            else poisson_approx.inversion_family(args.n, args.m)
        )
        bound = poisson_approx.stein_chen_bound(family).tv_bound
        row = _summary_row(summary)
        row["tv_bound"] = bound
        row["within_bound"] = bool(summary.tv_distance <= bound + 3.0 * summary.tv_se)
        row["seed"] = args.seed
        rows.append(row)
        if args.check and not row["within_bound"]:
            code = EXIT_FAILURE
    elif args.target == "opcounts":
        counters = montecarlo.empirical_opcounts(args.n, args.trials, stream)
        deltas = asymptotics.expected_opcount_deltas(args.n)
        refs = {
            "comparison_reduction": deltas.comparison_reduction,
            "flag_writes_early_exit": deltas.flag_writes_early_exit,
            "flag_writes_variant": deltas.flag_writes_variant,
        }
        for name in sorted(refs):
            summary = counters[name]
            row = _summary_row(summary)
            row["expected"] = refs[name]
            row["deviation_se"] = (
                abs(summary.mean - refs[name]) / summary.se_mean if summary.se_mean else 0.0
            )
            row["seed"] = args.seed
            rows.append(row)
            if args.check and row["deviation_se"] > 4.0:
                code = EXIT_FAILURE
    else:
        raise ValueError(f"unknown simulate target {args.target!r}")
    return rows, code


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> tuple[list[dict], int]:
    results = verification.run_suite(args.suite)
    rows = [
        {
            "claim_id": c.claim_id,
            "status": c.status,
            "observed": c.observed,
            "expected": c.expected,
            "detail": c.detail,
        }
        for c in results
    ]
    code = EXIT_FAILURE if any(c.failed for c in results) else EXIT_OK
    return rows, code


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def emit_rows(rows: list[dict], fmt: str, path: str | None) -> None:
    if fmt == "json":
        text = json.dumps({"schema_version": 1, "rows": rows}, indent=2)
    elif fmt == "csv":
        header: list[str] = []
        for row in rows:
            for key in row:
                if key not in header:
                    header.append(key)
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row.get(k)) for k in header])
        text = buf.getvalue().rstrip("\n")
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collisort",
        description="Exact and asymptotic bubble-sort pass / birthday collision laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--output-path", default=None)

    p_exact = sub.add_parser("exact", help="high-precision exact values")
    p_exact.add_argument("target", choices=(
        "collision-sf", "pass-cdf", "series", "sandwich", "relerr",
        "optimal-shift", "moments"))
    p_exact.add_argument("--n", type=int, required=True)
    p_exact.add_argument("--m", type=int, default=0)
    p_exact.add_argument("--k", type=int, default=1)
    p_exact.add_argument("--depth", type=int, default=None)
    add_common(p_exact)

    p_approx = sub.add_parser("approx", help="asymptotic approximations")
    p_approx.add_argument("target", choices=(
        "varrho", "cdf", "pmf", "moments", "charfn", "stats", "opt-deltas", "em-check"))
    p_approx.add_argument("--n", type=int, required=True)
    p_approx.add_argument("--x", type=float, default=None)
    p_approx.add_argument("--z", type=float, default=None)
    p_approx.add_argument("--t", type=float, default=0.0)
    p_approx.add_argument("--k", type=int, default=1)
    p_approx.add_argument("--epsilon", type=float, default=0.15)
    add_common(p_approx)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo")
    p_sim.add_argument("target", choices=("law", "delta", "opcounts"))
    p_sim.add_argument("--kind", choices=("pass", "collision", "birthday", "inversion"),
                       default="pass")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--m", type=int, default=0)
    p_sim.add_argument("--trials", type=int, default=10**5)
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sim.add_argument("--stream-id", type=int, default=0)
    p_sim.add_argument("--randomize", action="store_true",
                       help="replace the fixed default seed with OS entropy")
    p_sim.add_argument("--assert", dest="check", action="store_true",
                       help="exit 1 when the built-in tolerance check fails")
    add_common(p_sim)

    p_verify = sub.add_parser("verify", help="named verification suites")
    p_verify.add_argument("--suite", default="all",
                          choices=sorted(verification.SUITES) + ["all"])
    add_common(p_verify)
    return parser


_DISPATCH = {
    "exact": _cmd_exact,
    "approx": _cmd_approx,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "randomize", False):
        args.seed = secrets.randbits(63)
    try:
        rows, code = _DISPATCH[args.command](args)
    except ResourceBoundError as exc:
        print(json.dumps({"error": str(exc), "kind": "resource"}), file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(json.dumps({"error": str(exc), "kind": "usage"}), file=sys.stderr)
        return EXIT_USAGE
    emit_rows(rows, args.output, args.output_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
