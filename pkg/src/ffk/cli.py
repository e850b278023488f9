"""Command-line front end.

Exit codes: 0 ok, 2 bad parameters, 3 resource cap exceeded, 4 mathematical
contract violation, 5 I/O error. All JSON output is deterministic: sorted
keys, canonical labels, rationals as "numerator/denominator" strings in
lowest terms.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bounds, divisors, polyarith, verify
from .errors import CapExceeded, MathContractError, ParameterError
from .fiber import pair
from .model import build_config, i_c, transversality_check

SCHEMA_VERSION = "1"


def rat(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _jsonify(obj):
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def envelope(command: str, inputs: dict, results: dict, checks=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonify(inputs),
        "results": _jsonify(results),
        "checks": [
            {"name": c.name, "pass": bool(c.passed), "detail": c.detail} for c in checks
        ],
    }


def emit(doc: dict, stream=None) -> None:
    json.dump(doc, stream or sys.stdout, sort_keys=True, indent=2)
    (stream or sys.stdout).write("\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_rho(args) -> int:
    p = args.p
    s = polyarith.double_root_count(p)
    results = {
        "p": p,
        "s": s,
        "rho_over_m": s,
        "double_roots_mod_p": polyarith.double_roots(p),
    }
    emit(envelope("rho", {"p": p}, results))
    return 0


def _fiber_payload(model) -> dict:
    params = model.params
    checks = list(verify.suite_fiber([model])) + list(verify.suite_cycles([model]))
    return {
        "p": params.p,
        "m": params.m,
        "s": params.s,
        "N": params.n,
        "genus": params.genus,
        "census": model.census(),
        "n_components": model.config.n_components,
        "n_cusps": len(model.cusps),
        "transversality": transversality_check(model),
    }, checks


def _fiber_csv(model) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        [
            "kind",
            "i",
            "k",
            "j",
            "multiplicity",
            "genus",
            "self_intersection",
            "degree_in_graph",
        ]
    )
    for c in model.config.components:
        lab = c.label
        w.writerow(
            [
                lab.kind,
                lab.i,
                lab.k,
                lab.j,
                c.multiplicity,
                c.genus,
                c.self_int,
                i_c(model.config, c.cid),
            ]
        )
    return buf.getvalue()


def _resolve_pm(args) -> list[tuple[int, int]]:
    if args.N is not None:
        if args.p is not None or args.m is not None:
            raise ParameterError("give either --N or --p/--m, not both")
        primes = bounds.factor_odd_squarefree(args.N)
        return [(p, args.N // p) for p in primes]
    if args.p is None or args.m is None:
        raise ParameterError("either --N or both --p and --m are required")
    return [(args.p, args.m)]


def cmd_fiber(args) -> int:
    pairs = _resolve_pm(args)
    subreports = []
    all_checks = []
    csv_blobs = []
    for p, m in pairs:
        model = build_config(p, m, args.s)
        payload, checks = _fiber_payload(model)
        subreports.append(payload)
        all_checks.extend(checks)
        blob = _fiber_csv(model)
        csv_blobs.append(blob if not csv_blobs else blob.split("\n", 1)[1])
    if args.format == "csv":
        sys.stdout.write("".join(csv_blobs))
    else:
        inputs = {"N": args.N, "p": args.p, "m": args.m, "s": args.s}
        emit(envelope("fiber", inputs, {"fibers": subreports}, all_checks))
    return 0 if all(c.passed for c in all_checks) else 4


def cmd_divisors(args) -> int:
    pairs = _resolve_pm(args)
    cusp = tuple(args.cusp) if args.cusp else (1, 1)
    subreports = []
    all_checks = []
    for p, m in pairs:
        model = build_config(p, m)
        params = model.params
        ln = divisors.lambda_nu(params)
        vs = divisors.v_s(model, cusp)
        gs = divisors.g_s(model, cusp)
        semis = divisors.semipos_check(model, cusp)
        payload = {
            "p": p,
            "m": m,
            "N": params.n,
            "lambda": ln.lam,
            "nu": ln.nu,
            "v_s_self": pair(model.config, vs, vs),
            "g_s_self": pair(model.config, gs, gs),
            "beta_s": divisors.beta_s(model, cusp),
            "per_prime_geometric": divisors.per_prime_geometric(model, cusp),
            "semipositivity_min": min(v for _, v in semis),
            "cusp": list(cusp),
        }
        checks = (
            verify.suite_divisor([model])
            + verify.suite_beta([model])
            + divisors.u_s_probe(model, cusp)
        )
        subreports.append(payload)
        all_checks.extend(checks)
    inputs = {"N": args.N, "p": args.p, "m": args.m, "cusp": list(cusp)}
    emit(envelope("divisors", inputs, {"fibers": subreports}, all_checks))
    failing = [c for c in all_checks if not c.passed and not c.name.startswith("u_s[")]
    if failing:
        raise MathContractError(f"identity failed: {failing[0].name}")
    return 0


def _bounds_payload(report) -> dict:
    return {
        "N": report.n,
        "genus": report.genus,
        "phi": report.phi,
        "primes": [
            {
                "p": r.p,
                "m": r.m,
                "s": r.s,
                "rho": r.rho,
                "q_np": r.q,
                "beta_sp": r.beta_sp,
                "alpha": r.alpha,
            }
            for r in report.primes
        ],
        "geometric_terms": [{"p": p, "coeff": c} for p, c in report.geometric_terms],
        "geometric_float": report.geometric_float,
        "lower_bound": report.lower,
        "simple_lower": report.simple,
        "mertens_diag": report.mertens,
        "upper_bound": report.upper,
        "upper_is_conditional": report.conditional,
    }


def cmd_bounds(args) -> int:
    report = bounds.bound_report(args.N, args.kappa1, args.kappa2)
    payload = _bounds_payload(report)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["N", "genus", "phi", "p", "m", "s", "rho", "q_np", "beta_sp", "alpha",
             "geometric_coeff", "lower_bound", "simple_lower", "mertens_diag",
             "upper_bound", "upper_is_conditional"]
        )
        geo = dict(report.geometric_terms)
        for r in report.primes:
            w.writerow(
                [report.n, report.genus, report.phi, r.p, r.m, r.s, r.rho,
                 rat(r.q), rat(r.beta_sp), r.alpha, rat(geo[r.p]), repr(report.lower),
                 repr(report.simple), repr(report.mertens),
                 "" if report.upper is None else repr(report.upper),
                 report.conditional]
            )
        sys.stdout.write(buf.getvalue())
    else:
        checks = [
            verify.CheckResult(
                "lower bound exceeds simplified lower bound",
                report.lower > report.simple,
                f"{report.lower} vs {report.simple}",
            )
        ]
        emit(envelope("bounds", {"N": args.N, "kappa1": args.kappa1, "kappa2": args.kappa2},
                      payload, checks))
    return 0


def cmd_scan(args) -> int:
    rows = bounds.scan_rows(args.max_N) if args.max_N >= 15 else []
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N", "phi", "geometric_coeffs", "lower_bound", "simple_lower", "ratio"])
        for r in rows:
            coeffs = ";".join(f"{p}:{rat(c)}" for p, c in r["geometric_coeffs"])
            w.writerow([r["N"], r["phi"], coeffs, repr(r["lower"]),
                        repr(r["simple"]), repr(r["ratio"])])
    results = {
        "rows": len(rows),
        "max_N": args.max_N,
        "out": args.out,
        "all_strict": all(r["ratio"] > 1 for r in rows),
    }
    if not rows:
        results["warning"] = "no odd squarefree composite N <= max-N"
    emit(envelope("scan", {"max_N": args.max_N, "out": args.out}, results))
    return 0


def cmd_verify(args) -> int:
    checks = verify.run_suites(args.suite)
    emit(envelope("verify", {"suite": args.suite},
                  {"total": len(checks), "failed": sum(1 for c in checks if not c.passed)},
                  checks))
    for c in checks:
        if not c.passed:
            print(f"FIRST FAILURE: {c.name}: {c.detail}", file=sys.stderr)
            return 4
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def _cusp_arg(text: str) -> tuple[int, int]:
    try:
        i, k = (int(v) for v in text.split(","))
        return (i, k)
    except ValueError:
        raise argparse.ArgumentTypeError("cusp must be 'i,k'") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffk",
        description="Special fibers of minimal regular Fermat models: exact "
        "intersection identities and dualizing-sheaf bounds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rho", help="double-root count of the splitting polynomial mod p")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(fn=cmd_rho)

    for name, fn in (("fiber", cmd_fiber), ("divisors", cmd_divisors)):
        sp = sub.add_parser(name)
        sp.add_argument("--N", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--m", type=int)
        if name == "fiber":
            sp.add_argument("--s", type=int, default=None, help="override the double-root count")
            sp.add_argument("--format", choices=("json", "csv"), default="json")
        else:
            sp.add_argument("--cusp", type=_cusp_arg, default=None, metavar="i,k")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("bounds")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--kappa1", type=float, default=None)
    sp.add_argument("--kappa2", type=float, default=None)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("scan")
    sp.add_argument("--max-N", dest="max_N", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("verify")
    sp.add_argument("--suite", choices=("all", "polynomial", "fiber", "divisor", "bounds"),
                    default="all")
    sp.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except MathContractError as exc:
        print(f"mathematical contract violation: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
