"""Command-line harness: potential evaluation, single solves, degree sweeps
with extrapolation, lemniscate comparisons, and prediction reports.

Outputs are JSON, CSV, and a minimal hand-written SVG line chart.  Angles
are radians; every subcommand also accepts --alpha-deg.  Exit codes: 0 ok,
2 parse error, 3 domain error, 4 extrapolation residual too large,
5 solver did not converge.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import json
import math
import os
import sys

from .asymptotics import (
    predict_lemniscate_limit,
    predict_pointwise_limit,
    predict_widom_limit,
    richardson_extrapolate,
    szego_widom_bounds,
)
from .errors import ArcChebError, NoConvergence
from .lemniscate import LemniscateSpec, capacity_lemniscate, direct_vs_reduced
from .minimax import (
    build_grid,
    build_lemniscate_grid,
    solve_minimax,
    widom_factor,
)
from .potential import (
    INF,
    ArcDomain,
    c_r_alpha,
    green_inf,
    harmonic_measure_log_integral,
    is_infinity,
    mu_log_integral,
)
from .weights import UNIT_WEIGHT, WeightSpec

EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_EXTRAPOLATION = 4
EXIT_NO_CONVERGENCE = 5

EXTRAPOLATION_RESIDUAL_CAP = 1e-2


def _fmt(v):
    """17 significant digits, the round-trip precision of a double."""
    return format(float(v), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _parse_complex(text):
    """RE,IM pair, a bare real, or 'inf' for the point at infinity."""
    text = text.strip()
    if text.lower() in ("inf", "infinity"):
        return INF
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"cannot parse point {text!r}; expected RE,IM or inf")


def _parse_range(text):
    """START:STOP:STEP inclusive degree range, or a single degree."""
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 1:
        return parts
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise ValueError(f"bad range {text!r}; expected START:STOP:STEP")
    return list(range(parts[0], parts[1] + 1, parts[2]))


def _load_weight(path):
    if path is None:
        return UNIT_WEIGHT
    with open(path) as fh:
        return WeightSpec.from_json(fh.read())


def _domain_from_args(args):
    if args.alpha_deg is not None:
        return ArcDomain(math.radians(args.alpha_deg))
    if args.alpha is None:
        raise ValueError("one of --alpha or --alpha-deg is required")
    return ArcDomain(args.alpha)


def _add_alpha(parser):
    parser.add_argument("--alpha", type=float, help="arc half-angle, radians")
    parser.add_argument(
        "--alpha-deg", type=float, help="arc half-angle, degrees"
    )


def _grid_size(degree, requested):
    if requested is not None:
        return requested
    return max(16 * degree + 64, 1024)


def _solution_summary(sol, cap=None):
    parts = [
        f"degree {sol.degree}",
        f"norm {_fmt(sol.norm)}",
        f"certificate {_fmt(sol.certificate)}",
        "converged" if sol.converged else "not converged",
    ]
    if cap is not None and sol.normalization == "monic":
        parts.insert(2, f"widom {_fmt(widom_factor(sol, cap))}")
    return ", ".join(parts)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_potential(args):
    domain = _domain_from_args(args)
    if args.cap:
        quantity, value = "capacity", domain.capacity
    elif args.green is not None:
        quantity = "green"
        value = green_inf(_parse_complex(args.green), domain)
    elif args.c_r is not None:
        quantity, value = "c_r_alpha", c_r_alpha(args.c_r, domain)
    elif args.mu_log_int is not None:
        quantity = "mu_log_integral"
        value = mu_log_integral(_load_weight(args.mu_log_int), domain)
    elif args.omega_log_int is not None:
        if args.point is None:
            raise ValueError("--omega-log-int requires --point")
        quantity = "omega_log_integral"
        value = harmonic_measure_log_integral(
            _load_weight(args.omega_log_int),
            _parse_complex(args.point),
            domain,
        )
    else:
        raise ValueError(
            "need one of --cap/--green/--c-r/--mu-log-int/--omega-log-int"
        )
    print(f'{{"quantity":"{quantity}","value":{_fmt(value)}}}')
    return 0


def cmd_solve(args):
    domain = _domain_from_args(args)
    weight = _load_weight(args.weight)
    size = _grid_size(args.n, args.grid)
    grid = build_grid(domain, size, weight=weight)
    point = _parse_complex(args.point) if args.point is not None else None
    sol = solve_minimax(grid, args.n, point=point)
    doc = sol.export_json(extremal_params=[
        float(grid.params[i]) for i in sol.extremal_set
    ])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
        print(f"wrote {args.out}: {_solution_summary(sol, domain.capacity)}")
    else:
        print(doc)
    return 0


def _sweep_solve(domain, weight, n, grid_size):
    grid = build_grid(domain, grid_size, weight=weight)
    return solve_minimax(grid, n)


def _write_svg(path, ns, widoms, predicted):
    """Minimal line chart: axes, the widom-vs-n polyline, and a horizontal
    reference line at the predicted limit."""
    width, height, margin = 640, 400, 50
    ys = list(widoms) + [predicted]
    ylo, yhi = min(ys), max(ys)
    pad = 0.1 * (yhi - ylo) or 0.1
    ylo, yhi = ylo - pad, yhi + pad
    xlo, xhi = min(ns), max(ns)

    def sx(n):
        return margin + (width - 2 * margin) * (n - xlo) / max(xhi - xlo, 1)

    def sy(v):
        return height - margin - (height - 2 * margin) * (v - ylo) / (yhi - ylo)

    pts = " ".join(f"{sx(n):.2f},{sy(v):.2f}" for n, v in zip(ns, widoms))
    ref = sy(predicted)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}">',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{ref:.2f}" x2="{width - margin}" '
        f'y2="{ref:.2f}" stroke="red" stroke-dasharray="6,4"/>',
        f'<polyline points="{pts}" fill="none" stroke="blue"/>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle">'
        "n</text>",
        f'<text x="14" y="{height // 2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {height // 2})">widom factor</text>',
        "</svg>",
    ]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_sweep(args):
    domain = _domain_from_args(args)
    weight = _load_weight(args.weight)
    ns = _parse_range(args.n)
    predicted = predict_widom_limit(domain, weight).value
    cap = domain.capacity
    sizes = [_grid_size(n, args.grid) for n in ns]

    workers = min(len(ns), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        sols = list(
            pool.map(
                lambda pair: _sweep_solve(domain, weight, *pair),
                zip(ns, sizes),
            )
        )

    widoms = [widom_factor(s, cap) for s in sols]
    extrapolated = None
    fit_resid = None
    if args.extrapolate:
        extrapolated, fit_resid = richardson_extrapolate(
            list(zip(ns, widoms)), with_residual=True
        )

    rows = ["n,grid,norm,widom,certificate,predicted,extrapolated"]
    for n, size, sol, wf in zip(ns, sizes, sols, widoms):
        last = _fmt(extrapolated) if extrapolated is not None else ""
        rows.append(
            f"{n},{size},{_fmt(sol.norm)},{_fmt(wf)},"
            f"{_fmt(sol.certificate)},{_fmt(predicted)},{last}"
        )
    csv_text = "\n".join(rows) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {args.csv}: {len(ns)} rows")
    else:
        sys.stdout.write(csv_text)
    if args.svg:
        _write_svg(args.svg, ns, widoms, predicted)
        print(f"wrote {args.svg}")
    if extrapolated is not None:
        print(f"extrapolated {_fmt(extrapolated)} (fit residual {_fmt(fit_resid)})")
        if fit_resid > EXTRAPOLATION_RESIDUAL_CAP:
            print("extrapolation fit residual exceeds 1e-2", file=sys.stderr)
            return EXIT_EXTRAPOLATION
    return 0


def cmd_lemniscate(args):
    spec = LemniscateSpec(args.m, args.r, _domain_from_args(args).alpha, args.l)
    if args.compare:
        record, direct, _ = direct_vs_reduced(spec, args.n)
        print(json.dumps(record))
        return 0
    degree = args.n * spec.m + spec.l
    grid = build_lemniscate_grid(spec, _grid_size(degree, args.grid))
    sol = solve_minimax(grid, degree)
    cap = capacity_lemniscate(spec)
    print(
        json.dumps(
            {
                "m": spec.m,
                "r": spec.r,
                "alpha": spec.alpha,
                "l": spec.l,
                "n": args.n,
                "degree": degree,
                "norm": sol.norm,
                "widom": widom_factor(sol, cap),
                "certificate": sol.certificate,
                "converged": sol.converged,
            }
        )
    )
    return 0


def cmd_predict(args):
    domain = _domain_from_args(args)
    weight = _load_weight(args.weight)
    if args.lemniscate is not None:
        parts = args.lemniscate.split(",")
        if len(parts) != 3:
            raise ValueError("--lemniscate expects M,R,L")
        spec = LemniscateSpec(
            int(parts[0]), float(parts[1]), domain.alpha, int(parts[2])
        )
        report = predict_lemniscate_limit(spec)
    elif args.point is not None:
        point = _parse_complex(args.point)
        if is_infinity(point):
            report = predict_widom_limit(domain, weight)
        else:
            report = predict_pointwise_limit(domain, weight, point)
    else:
        report = predict_widom_limit(domain, weight)
    print(report.to_json())
    return 0


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def _build_parser():
    parser = _Parser(prog="widom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="closed-form potential quantities")
    _add_alpha(p)
    p.add_argument("--cap", action="store_true", help="logarithmic capacity")
    p.add_argument("--green", metavar="Z", help="Green's function at RE,IM")
    p.add_argument("--c-r", type=float, metavar="R", help="c(r, alpha)")
    p.add_argument("--mu-log-int", metavar="WEIGHT.json")
    p.add_argument("--omega-log-int", metavar="WEIGHT.json")
    p.add_argument("--point", metavar="Z", help="pole of the harmonic measure")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("solve", help="single weighted Chebyshev solve")
    _add_alpha(p)
    p.add_argument("--n", type=int, required=True, help="polynomial degree")
    p.add_argument("--weight", metavar="W.json")
    p.add_argument("--point", metavar="RE,IM|inf")
    p.add_argument("--grid", type=int, help="grid size override")
    p.add_argument("--out", metavar="SOL.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="degree sweep with CSV/SVG output")
    _add_alpha(p)
    p.add_argument("--n", required=True, metavar="START:STOP:STEP")
    p.add_argument("--weight", metavar="W.json")
    p.add_argument("--grid", type=int, help="grid size override")
    p.add_argument("--csv", metavar="OUT.csv")
    p.add_argument("--svg", metavar="OUT.svg")
    p.add_argument("--extrapolate", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemniscate", help="lemniscatic-arc solve/comparison")
    _add_alpha(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--n", type=int, required=True, help="reduced degree")
    p.add_argument("--grid", type=int, help="grid size override")
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=cmd_lemniscate)

    p = sub.add_parser("predict", help="closed-form limit prediction")
    _add_alpha(p)
    p.add_argument("--weight", metavar="W.json")
    p.add_argument("--point", metavar="RE,IM|inf")
    p.add_argument("--lemniscate", metavar="M,R,L")
    p.set_defaults(func=cmd_predict)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        if exc.solution is not None:
            print(
                f"partial result (not converged): norm "
                f"{_fmt(exc.solution.norm)}"
            )
        print(f"widom: solver did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ArcChebError, ValueError, OSError) as exc:
        print(f"widom: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
