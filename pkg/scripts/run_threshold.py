"""Sweep success probability along p = q for several sizes and report the
crossing estimate.

Example:
    python3 scripts/run_threshold.py --decoder mwpm --L 11 15 21 \
        --grid 0.28:0.38:11 --samples 4000 --out sweep.csv
"""

import argparse
import sys

import numpy as np

from ptimdec import Params, RngStream, estimate_pd, threshold_crossing


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--decoder", default="mwpm")
    ap.add_argument("--L", type=int, nargs="+", default=[11, 15, 21])
    ap.add_argument("--grid", default="0.28:0.38:11", help="lo:hi:n for p = q")
    ap.add_argument("--samples", type=int, default=4000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="csv path for the raw curves")
    args = ap.parse_args(argv)

    lo, hi, n = args.grid.split(":")
    grid = np.linspace(float(lo), float(hi), int(n))
    rng = RngStream.from_seed(args.seed)

    rows = []
    curves = []
    for li, L in enumerate(args.L):
        ys = []
        for pi, p in enumerate(grid):
            params = Params(p=float(p), q=float(p), L=L, T=L)
            est = estimate_pd(
                params, args.decoder, args.samples, rng.derive(li, pi), workers=args.workers
            )
            ys.append(est.pd)
            rows.append((L, float(p), est.pd, est.se))
            print(
                f"L={L} p=q={p:.4f} pd={est.pd:.4f} se={est.se:.4f}",
                file=sys.stderr,
                flush=True,
            )
        curves.append(np.array(ys))

    if args.out:
        with open(args.out, "w") as fh:
            fh.write("L,p,pd,se\n")
            for L, p, pd, se in rows:
                fh.write(f"{L},{p!r},{pd!r},{se!r}\n")

    med, spread = threshold_crossing(grid, curves)
    print(f"threshold estimate: {med:.4f} (pairwise crossing spread {spread:.4f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
