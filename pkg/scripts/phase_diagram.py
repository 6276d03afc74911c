"""Phase diagram at fixed coupling: region and stationary-point count on a grid.

Writes <outdir>/phase_diagram_a<a>.csv and .svg, then prints a coarse text map
(. = one root, # = three roots, d = degenerate, M = coexistence, C = critical).
"""
import argparse
import os

from wrmf.cli import ScanRequest, dump_csv, render_phase_diagram, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--lo", type=float, default=-1.0)
    ap.add_argument("--hi", type=float, default=4.0)
    ap.add_argument("--steps", type=int, default=41)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    req = ScanRequest(args.a, (args.lo, args.hi), (args.lo, args.hi), args.steps, args.steps, "csv", None)
    cells = scan(req)
    os.makedirs(args.outdir, exist_ok=True)
    stem = os.path.join(args.outdir, f"phase_diagram_a{args.a:g}")
    header = ["mu0", "mu1", "region", "root_count", "degenerate", "y_star", "ybar"]
    with open(stem + ".csv", "w") as fh:
        fh.write(dump_csv(header, [[c[k] for k in header] for c in cells]))
    with open(stem + ".svg", "w") as fh:
        fh.write(render_phase_diagram(req, cells, f"phase_diagram.py a={args.a}"))

    n = args.steps
    grid = [cells[i * n:(i + 1) * n] for i in range(n)]  # grid[i][j]: mu0 index i, mu1 index j
    for j in reversed(range(n)):
        row = []
        for i in range(n):
            c = grid[i][j]
            if c["region"] == "Coexistence":
                row.append("M")
            elif c["region"] == "Critical":
                row.append("C")
            elif c["degenerate"]:
                row.append("d")
            else:
                row.append("#" if c["root_count"] == 3 else ".")
        print("".join(row))
    counts = {k: sum(c["root_count"] == k for c in cells) for k in (1, 2, 3)}
    print(f"root counts: {counts}; wrote {stem}.csv and {stem}.svg")


if __name__ == "__main__":
    main()
