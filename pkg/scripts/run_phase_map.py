"""Map full knowledge decoding success over the (p, q) square.

The success probability is 1 when the measurement pattern pins the final
configuration and 1/2 when a global flip stays open, so the map shows the
ordered region (near 1) and the disordered region (near 1/2) with the
boundary along p + q = 1.

Example:
    python3 scripts/run_phase_map.py --L 31 --points 21 --samples 1000 \
        --out map.csv
"""

import argparse
import sys

import numpy as np

from ptimdec import Params, RngStream, estimate_pd


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--L", type=int, default=31)
    ap.add_argument("--T", type=int, default=None)
    ap.add_argument("--points", type=int, default=21, help="grid points per axis")
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    T = args.T if args.T is not None else args.L
    grid = np.linspace(0.0, 1.0, args.points)
    rng = RngStream.from_seed(args.seed)
    fh = open(args.out, "w") if args.out else sys.stdout
    fh.write("p,q,pd,se\n")
    for pi, p in enumerate(grid):
        for qi, q in enumerate(grid):
            params = Params(p=float(p), q=float(q), L=args.L, T=T)
            est = estimate_pd(
                params, "full", args.samples, rng.derive(pi, qi), workers=args.workers
            )
            fh.write(f"{float(p)!r},{float(q)!r},{est.pd!r},{est.se!r}\n")
        print(f"row p={p:.3f} done", file=sys.stderr, flush=True)
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
