"""Command-line interface: tables for every observable plus the verify suites.

Exit codes: 0 success, 1 verification/tolerance failure, 2 usage error.
All commands are deterministic given their full flag set; `sample` uses a
documented default seed so published numbers are reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys

from fractions import Fraction

from .exact import catalan, double_factorial
from .maps.rosettes import harer_zagier_closed, rosette_count_formula
from .montecarlo import estimate_wilson, zscore
from .observables import (
    density,
    density_eval,
    moment_exact,
    wigner_density,
    wilson_eval,
    wilson_loop,
)
from .records import OutputRecord
from .verify import DEFAULT_SEED, SUITES, run_suite


def _grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def cmd_wilson(N: int, t_min: float, t_max: float, steps: int) -> OutputRecord:
    w = wilson_loop(N)
    params = {
        "N": N, "t_min": t_min, "t_max": t_max, "steps": steps,
        "coefficients": list(w.coefficients),
    }
    rows = [[t, wilson_eval(w, t).real] for t in _grid(t_min, t_max, steps)]
    return OutputRecord("wilson", params, ["t", "wilson_loop"], rows)


def cmd_density(N: int, lam_min: float, lam_max: float, steps: int) -> OutputRecord:
    d = density(N)
    rows = [
        [lam, density_eval(d, lam), wigner_density(lam)]
        for lam in _grid(lam_min, lam_max, steps)
    ]
    params = {"N": N, "lambda_min": lam_min, "lambda_max": lam_max, "steps": steps}
    return OutputRecord("density", params, ["lambda", "density", "wigner"], rows)


def cmd_moments(N: int, l_max: int) -> OutputRecord:
    if l_max < 0:
        raise ValueError("l-max must be >= 0")
    rows = []
    for l in range(l_max + 1):
        m = moment_exact(N, l)
        rows.append([l, m, float(m), catalan(l)])
    return OutputRecord("moments", {"N": N, "l_max": l_max},
                        ["l", "moment", "moment_float", "catalan"], rows)


def cmd_rosettes(l: int, genus: int | None = None) -> OutputRecord:
    if l < 1:
        raise ValueError("l must be >= 1")
    params = {"l": l}
    if genus is not None:
        params["g"] = genus
        rows = [[genus, rosette_count_formula(l, genus)]]
        return OutputRecord("rosettes", params, ["g", "count"], rows)
    counts = [rosette_count_formula(l, g) for g in range(l // 2 + 1)]
    rows: list[list] = [[g, c] for g, c in enumerate(counts)]
    rows.append(["sum", sum(counts)])
    rows.append(["double_factorial", double_factorial(2 * l - 1)])
    return OutputRecord("rosettes", params, ["g", "count"], rows)


def cmd_harer_zagier(N: int, p_max: int) -> OutputRecord:
    coeffs = harer_zagier_closed(N, p_max)
    rows = []
    for p in range(1, p_max + 1):
        rebuilt = sum(
            Fraction(rosette_count_formula(p, g), N ** (2 * g))
            for g in range(p // 2 + 1)
        ) / double_factorial(2 * p - 1)
        rows.append([p, coeffs[p - 1], rebuilt])
    return OutputRecord("harer-zagier", {"N": N, "p_max": p_max},
                        ["p", "series_coefficient", "from_rosette_counts"], rows)


def cmd_sample(N: int, samples: int, seed: int, t_list: list[float]) -> OutputRecord:
    w = wilson_loop(N)
    rows = []
    for t in t_list:
        st = estimate_wilson(N, t, samples, seed)
        exact = wilson_eval(w, t).real
        z = zscore(st, exact) if st.std_error > 0 else 0.0
        rows.append([t, st.mean, st.std_error, exact, z])
    params = {"N": N, "samples": samples, "seed": seed}
    return OutputRecord("sample", params,
                        ["t", "mean", "std_error", "exact", "zscore"], rows)


def cmd_verify(suite: str, l_max: int | None, samples: int, bins: int, seed: int,
               stream=None) -> int:
    stream = stream or sys.stdout
    failures = run_suite(suite, l_max=l_max, samples=samples, bins=bins, seed=seed)
    if failures:
        print(json.dumps({"suite": suite, "status": "FAIL", "failures": failures},
                         indent=2), file=stream)
        return 1
    print(f"PASS {suite}", file=stream)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="guekit",
        description="Exact finite-N GUE observables with combinatorial and "
                    "Monte Carlo cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", metavar="FILE", default=None,
                       help="write the table to FILE instead of stdout")

    p = sub.add_parser("wilson", help="Wilson loop I(t, N) on a t grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=41)
    add_common(p)

    p = sub.add_parser("density", help="spectral density with Wigner reference")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lambda-min", type=float, default=-3.0)
    p.add_argument("--lambda-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=121)
    add_common(p)

    p = sub.add_parser("moments", help="exact even moments with Catalan column")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--l-max", type=int, default=8)
    add_common(p)

    p = sub.add_parser("rosettes", help="genus counts C_g(l) of one-vertex maps")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--g", type=int, default=None, help="restrict to one genus")
    add_common(p)

    p = sub.add_parser("harer-zagier", help="generating-series coefficients")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p-max", type=int, default=7)
    add_common(p)

    p = sub.add_parser("sample", help="Monte Carlo Wilson loop vs the exact value")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--t", type=float, action="append", dest="t_list",
                   help="repeatable; defaults to 0.5 .. 4.0")
    add_common(p)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--l-max", type=int, default=None,
                   help="lower (never raise) the enumeration budget")
    p.add_argument("--samples", type=int, default=4000)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.suite, args.l_max, args.samples, args.bins, args.seed)
        if args.command == "wilson":
            record = cmd_wilson(args.N, args.t_min, args.t_max, args.steps)
        elif args.command == "density":
            record = cmd_density(args.N, args.lambda_min, args.lambda_max, args.steps)
        elif args.command == "moments":
            record = cmd_moments(args.N, args.l_max)
        elif args.command == "rosettes":
            record = cmd_rosettes(args.l, args.g)
        elif args.command == "harer-zagier":
            record = cmd_harer_zagier(args.N, args.p_max)
        elif args.command == "sample":
            t_list = args.t_list or [0.5 * k for k in range(1, 9)]
            record = cmd_sample(args.N, args.samples, args.seed, t_list)
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = record.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
