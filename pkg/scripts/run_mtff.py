"""Mean time to first failure vs system size at fixed p = q.

Below threshold a decoder that keeps up with the noise shows mtff growing
with L; a decoder limited by per-step mistakes saturates. The script
prints the mean for each size and the ratio between successive sizes.

Example:
    python3 scripts/run_mtff.py --decoder mvd --L 51 101 201 401 \
        --p 0.2 --samples 200 --t-max 800
"""

import argparse
import sys

from ptimdec import Params, RngStream, mtff


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--decoder", default="mvd")
    ap.add_argument("--L", type=int, nargs="+", default=[51, 101, 201, 401])
    ap.add_argument("--p", type=float, default=0.2)
    ap.add_argument("--q", type=float, default=None, help="defaults to p")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--t-max", type=int, default=800)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    q = args.p if args.q is None else args.q
    rng = RngStream.from_seed(args.seed)
    prev = None
    for li, L in enumerate(args.L):
        params = Params(p=args.p, q=q, L=L, T=1)
        res = mtff(
            params,
            args.decoder,
            args.samples,
            rng.derive(li),
            t_max=args.t_max,
            workers=args.workers,
        )
        line = (
            f"L={L} mtff={res.mean:.1f} se={res.se:.1f} "
            f"censored={res.n_censored}/{res.n}"
        )
        if prev is not None:
            line += f" ratio={res.mean / prev:.2f}"
        prev = res.mean
        print(line, flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
