"""Command-line interface: ``wrmf <subcommand> ...`` or ``python -m wrmf``.

Exit codes: 0 success, 2 usage error, 3 numerical failure (including failed
oracle checks), 4 I/O error.

Numbers in CSV and JSON are written with 15 significant digits
(``%.14e``).  Rows come out in a fixed order regardless of the worker count
set through the ``WRMF_THREADS`` environment variable.

Run manifests: JSON output embeds one, and every file written with
``--out`` gets a sidecar ``<out>.manifest.json``.  Wall-clock time lives only
in the sidecar so the primary output stays byte-identical between runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .checks import DEFAULT_TOL as CHECK_TOL
from .checks import SUITES, run_suite
from .eos import isotherm, phase_densities
from .errors import DomainError, ResourceError, SolverError
from .phase import (
    DEFAULT_TOL,
    Kind,
    PhasePoint,
    PhaseTolerances,
    classify,
    order_parameter,
    spinodal_eta,
)
from .svg import Canvas

THREADS_ENV = "WRMF_THREADS"
EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 2, 3, 4


class UsageError(Exception):
    pass


def num(x) -> str:
    return f"{float(x):.14e}"


def _jsonable(x):
    if isinstance(x, float):
        return float(num(x)) if math.isfinite(x) else str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return _jsonable(x.item())
    return x


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([num(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


@dataclass
class RunManifest:
    tool: str
    version: str
    command: str
    parameters: dict
    tolerances: dict

    def full(self, wall_clock: float) -> dict:
        return dict(asdict(self), wall_clock_seconds=wall_clock)


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")


def ordered_map(fn, items):
    """Map in parallel when configured, results always in input order."""
    n = _threads()
    if n == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _tolerances(args) -> PhaseTolerances:
    if getattr(args, "tol", None) is None:
        return DEFAULT_TOL
    return PhaseTolerances(eq=args.tol, crit=args.tol)


# --- classify --------------------------------------------------------------------


def _phase_rows(sol) -> list[dict]:
    a = sol.point.a
    return [
        dict(y_star=y, rho0=d.rho0, rho1=d.rho1, z0=d.rho0, z1=d.rho1, p=d.pressure(a))
        for y, d in zip(sol.y_star, phase_densities(sol))
    ]


def cmd_classify(args):
    point = PhasePoint(args.a, args.mu0, args.mu1)
    sol = classify(point, _tolerances(args))
    phases = _phase_rows(sol)
    record = dict(
        a=point.a, mu0=point.mu0, mu1=point.mu1, region=sol.region.value,
        ybar=sol.order_parameter, p=phases[0]["p"], near_degenerate=sol.near_degenerate,
        root_count=len(sol.stationary), phases=phases,
    )
    if args.format == "json":
        return "json", record
    if args.format == "csv":
        header = ["region", "y_star", "rho0", "rho1", "z0", "z1", "p", "ybar"]
        rows = [[sol.region.value, r["y_star"], r["rho0"], r["rho1"], r["z0"], r["z1"], r["p"],
                 sol.order_parameter] for r in phases]
        return "text", dump_csv(header, rows)
    if args.format == "svg":
        raise UsageError("classify has no svg rendering; use text, csv or json")
    lines = [
        f"region={sol.region.value}",
        f"a={num(point.a)} mu0={num(point.mu0)} mu1={num(point.mu1)}",
        f"ybar={num(sol.order_parameter)}",
        f"p={num(record['p'])}",
        f"phases={len(phases)}",
    ]
    for i, r in enumerate(phases, 1):
        lines.append(
            f"phase {i}: y_star={num(r['y_star'])} rho0={num(r['rho0'])} rho1={num(r['rho1'])} "
            f"z0={num(r['z0'])} z1={num(r['z1'])}"
        )
    if sol.near_degenerate:
        lines.append("warning: maxima tied within tolerance off the symmetric axis")
    return "text", "\n".join(lines) + "\n"


# --- phase diagram ----------------------------------------------------------------


@dataclass(frozen=True)
class ScanRequest:
    a: float
    mu0_range: tuple[float, float]
    mu1_range: tuple[float, float]
    steps0: int
    steps1: int
    fmt: str
    out: str | None

    def __post_init__(self):
        vals = [self.a, *self.mu0_range, *self.mu1_range]
        if not all(math.isfinite(v) for v in vals):
            raise UsageError("scan ranges must be finite")
        if self.steps0 < 2 or self.steps1 < 2:
            raise UsageError("step counts must be at least 2")
        if self.a < 0:
            raise UsageError("a must be nonnegative")


def scan(req: ScanRequest, tol: PhaseTolerances = DEFAULT_TOL) -> list[dict]:
    mu0s = np.linspace(*req.mu0_range, req.steps0)
    mu1s = np.linspace(*req.mu1_range, req.steps1)

    def row(i):
        out = []
        for mu1 in mu1s:
            sol = classify(PhasePoint(req.a, float(mu0s[i]), float(mu1)), tol)
            out.append(dict(
                mu0=float(mu0s[i]), mu1=float(mu1), region=sol.region.value,
                root_count=len(sol.stationary),
                degenerate=int(any(s.kind is Kind.DEGENERATE for s in sol.stationary)),
                y_star=sol.maximizers[-1].y, ybar=sol.order_parameter,
            ))
        return out

    return [cell for r in ordered_map(row, range(req.steps0)) for cell in r]


def spinodal_curve(a: float, xi_max: float, n: int = 400) -> tuple[list, list, list, list]:
    """Both spinodal branches in the (mu0, mu1) plane, from the cusp to xi_max."""
    la = math.log(a)
    xs = np.linspace(1.0, max(xi_max, 1.0), n)
    up0, up1, lo0, lo1 = [], [], [], []
    for xi in xs:
        eta = spinodal_eta(float(xi))
        mbar = xi - la
        up0.append(mbar - eta), up1.append(mbar + eta)
        lo0.append(mbar + eta), lo1.append(mbar - eta)
    return up0, up1, lo0, lo1


def render_phase_diagram(req: ScanRequest, cells: list[dict], manifest: str) -> str:
    c = Canvas(req.mu0_range, req.mu1_range, title=f"phase diagram at a = {req.a:g}")
    d0 = (req.mu0_range[1] - req.mu0_range[0]) / (req.steps0 - 1)
    d1 = (req.mu1_range[1] - req.mu1_range[0]) / (req.steps1 - 1)
    for cell in cells:
        fill = {3: "#bdbdbd", 2: "#8c8c8c"}.get(cell["root_count"], "#ffffff")
        c.rect(cell["mu0"] - d0 / 2, cell["mu1"] - d1 / 2, cell["mu0"] + d0 / 2, cell["mu1"] + d1 / 2, fill)
    if req.a > 0:
        la = math.log(req.a)
        xi_max = max(req.mu0_range[1], req.mu1_range[1]) + la + 5.0
        up0, up1, lo0, lo1 = spinodal_curve(req.a, xi_max)
        c.polyline(up0, up1, stroke="black")
        c.polyline(lo0, lo1, stroke="black")
        mc = 1.0 - la
        top = min(req.mu0_range[1], req.mu1_range[1])
        if top > mc:
            c.polyline([mc, top], [mc, top], stroke="crimson", width=3)
        c.circle(mc, mc, fill="crimson")
    c.axes("mu0", "mu1")
    return c.render(manifest)


def cmd_phase_diagram(args):
    req = ScanRequest(args.a, tuple(args.mu0_range), tuple(args.mu1_range),
                      args.steps[0], args.steps[1], args.format, args.out)
    cells = scan(req, _tolerances(args))
    header = ["mu0", "mu1", "region", "root_count", "degenerate", "y_star", "ybar"]
    if args.format == "json":
        return "json", dict(a=req.a, cells=cells)
    if args.format == "svg":
        return "svg", (req, cells)
    return "text", dump_csv(header, [[c[k] for k in header] for c in cells])


# --- isotherm ----------------------------------------------------------------------


def cmd_isotherm(args):
    if not (0 < args.rho_min < args.rho_max):
        raise UsageError("need 0 < rho-min < rho-max")
    if args.points < 2:
        raise UsageError("need at least 2 points")
    if not args.theta > 0:
        raise UsageError("theta must be positive")
    grid = np.geomspace(args.rho_min, args.rho_max, args.points) if args.log_grid \
        else np.linspace(args.rho_min, args.rho_max, args.points)
    curve = isotherm(args.a, args.theta, grid)
    rows = [[r, p, b] for (r, p), b in zip(curve.samples, curve.branches)]
    if args.format == "json":
        plat = None if curve.plateau is None else asdict(curve.plateau)
        return "json", dict(a=args.a, theta=args.theta, plateau=plat,
                            samples=[dict(rho=r, p_hat=p, branch=b) for r, p, b in rows])
    if args.format == "svg":
        return "svg", curve
    return "text", dump_csv(["rho", "p_hat", "branch"], rows)


def render_isotherm(curve, manifest: str) -> str:
    rs = [s[0] for s in curve.samples]
    ps = [s[1] for s in curve.samples]
    pad = 0.05 * (max(ps) - min(ps) or 1.0)
    c = Canvas((min(rs), max(rs)), (min(ps) - pad, max(ps) + pad),
               title=f"isotherm a = {curve.a:g}, theta = {curve.theta:g}")
    c.polyline(rs, ps, stroke="navy")
    if curve.plateau is not None:
        pl = curve.plateau
        c.polyline([pl.rho_minus, pl.rho_plus], [pl.p_star, pl.p_star], stroke="crimson", width=3)
    c.axes("rho", "p_hat")
    return c.render(manifest)


# --- order parameter ----------------------------------------------------------------


def cmd_order_parameter(args):
    if not args.a > 0:
        raise UsageError("order parameter needs a > 0")
    if args.points < 2 or not args.mu_min < args.mu_max:
        raise UsageError("need mu-min < mu-max and at least 2 points")
    mus = np.linspace(args.mu_min, args.mu_max, args.points)
    rows = ordered_map(lambda m: [float(m), order_parameter(args.a, float(m))], list(mus))
    rows = [[m, y, y / args.a] for m, y in rows]
    if args.format == "json":
        return "json", dict(a=args.a, samples=[dict(mu=m, ybar=y, delta_rho=d) for m, y, d in rows])
    if args.format == "svg":
        return "svg", (args.a, rows)
    return "text", dump_csv(["mu", "ybar", "delta_rho"], rows)


def render_order_parameter(a, rows, manifest: str) -> str:
    ms = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    c = Canvas((ms[0], ms[-1]), (0.0, max(max(ys), 1e-12) * 1.05), title=f"order parameter at a = {a:g}")
    c.polyline(ms, ys, stroke="navy")
    c.axes("mu", "ybar")
    return c.render(manifest)


# --- oracle checks -------------------------------------------------------------------


def cmd_oracle_check(args):
    checks = run_suite(args.suite, args.V, tol=args.tol, a=args.a, mu0=args.mu0, mu1=args.mu1,
                       theta=args.theta, mu=args.mu, x=args.x)
    report = dict(suite=args.suite, checks=[c.as_dict() for c in checks])
    failed = not all(c.passed for c in checks)
    if args.format == "json":
        return "json", report, failed
    if args.format == "svg":
        raise UsageError("oracle-check reports are json or csv")
    header = ["name", "params", "residual", "tolerance", "pass"]
    rows = [[c.name, json.dumps(_jsonable(c.params), sort_keys=True), float(c.residual),
             float(c.tolerance), str(c.passed).lower()] for c in checks]
    return "text", dump_csv(header, rows), failed


# --- plumbing --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wrmf",
        description="Mean-field Widom-Rowlinson model: phases, isotherms and finite-volume oracles.",
        epilog=f"Set {THREADS_ENV}=N to evaluate grid rows on N threads (output order is fixed).",
    )
    p.add_argument("--version", action="version", version=f"wrmf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="output path (default: stdout)")

    tol_help = ("membership tolerance for the symmetric axis |mu0-mu1| and the critical "
                f"line |mu-(1-ln a)| (default {DEFAULT_TOL.eq:g})")

    sp = sub.add_parser("classify", help="classify one phase point")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--mu0", type=float, required=True)
    sp.add_argument("--mu1", type=float, required=True)
    sp.add_argument("--tol", type=float, help=tol_help)
    common(sp, ["text", "csv", "json", "svg"], "text")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("phase-diagram", help="scan a (mu0, mu1) grid at fixed a")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--mu0-range", type=float, nargs=2, default=[-1.0, 4.0], metavar=("LO", "HI"))
    sp.add_argument("--mu1-range", type=float, nargs=2, default=[-1.0, 4.0], metavar=("LO", "HI"))
    sp.add_argument("--steps", type=int, nargs=2, default=[21, 21], metavar=("N0", "N1"))
    sp.add_argument("--tol", type=float, help=tol_help)
    common(sp, ["csv", "json", "svg"], "csv")
    sp.set_defaults(func=cmd_phase_diagram)

    sp = sub.add_parser("isotherm", help="one-component isotherm p_hat(rho) with plateau")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--rho-min", type=float, required=True)
    sp.add_argument("--rho-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--log-grid", action="store_true", help="geometric density grid")
    common(sp, ["csv", "json", "svg"], "csv")
    sp.set_defaults(func=cmd_isotherm)

    sp = sub.add_parser("order-parameter", help="ybar(a, mu) along mu at fixed a")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--mu-min", type=float, required=True)
    sp.add_argument("--mu-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=100)
    common(sp, ["csv", "json", "svg"], "csv")
    sp.set_defaults(func=cmd_order_parameter)

    sp = sub.add_parser("oracle-check", help="finite-volume oracle suites")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--V", type=float, nargs="+", help="volumes (suite default if omitted)")
    sp.add_argument("--a", type=float)
    sp.add_argument("--mu0", type=float)
    sp.add_argument("--mu1", type=float)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--x", type=float)
    sp.add_argument("--tol", type=float, help="override the pass tolerance of every check "
                    + ", ".join(f"{k}: {v:g}" for k, v in CHECK_TOL.items()))
    common(sp, ["json", "csv"], "json")
    sp.set_defaults(func=cmd_oracle_check)
    return p


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "command")}


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    tolerances = asdict(_tolerances(args)) if args.command in ("classify", "phase-diagram") else \
        {"check_tolerance": args.tol if getattr(args, "tol", None) is not None
         else CHECK_TOL.get(getattr(args, "suite", ""), None)}
    manifest = RunManifest("wrmf", __version__, args.command, _params(args), tolerances)
    failed = False
    try:
        result = args.func(args)
        if len(result) == 3:
            kind, payload, failed = result
        else:
            kind, payload = result
        if kind == "json":
            text = dump_json(dict(payload, manifest=asdict(manifest)))
        elif kind == "svg":
            meta = json.dumps(_jsonable(asdict(manifest)), sort_keys=True)
            if args.command == "phase-diagram":
                text = render_phase_diagram(*payload, meta)
            elif args.command == "isotherm":
                text = render_isotherm(payload, meta)
            else:
                text = render_order_parameter(*payload, meta)
        else:
            text = payload
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"wrmf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, ResourceError, FloatingPointError) as exc:
        print(f"wrmf: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    full = dump_json(manifest.full(time.perf_counter() - t0))
    try:
        _write(args.out, text)
        if args.out is not None:
            _write(args.out + ".manifest.json", full)
    except OSError as exc:
        print(f"wrmf: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_NUMERIC if failed else 0


if __name__ == "__main__":
    sys.exit(main())
