"""Command line front end.

Subcommands:
  sweep       success probability over a parameter grid
  mtff        mean time to first failure under truncated-record decoding
  crosscheck  classical vs quantum estimate of the same success probability
  analytic    closed-form matching success at q = 0

Rows go to stdout (or --out) as csv or jsonl; progress goes to stderr.
Numbers are written with repr so a sweep is byte-for-byte reproducible;
worker count never changes results, only wall time. Errors come out as a
single json object on stderr with exit status 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .lattice import Params
from .sampler import RngStream
from .metrics import (
    DECODERS,
    analytic_pd_mwpm_q0,
    estimate_pd,
    mtff,
)


def _parse_grid(one, grid, name):
    if one is not None and grid is not None:
        raise ValueError(f"give --{name} or --{name}-grid, not both")
    if grid is not None:
        parts = grid.split(":")
        if len(parts) != 3:
            raise ValueError(f"--{name}-grid wants lo:hi:n")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        return [float(v) for v in np.linspace(lo, hi, n)]
    if one is not None:
        return [float(one)]
    raise ValueError(f"missing --{name} or --{name}-grid")


def _size_pairs(Ls, Ts):
    if Ts is None:
        return [(L, L) for L in Ls]
    if len(Ts) == 1:
        return [(L, Ts[0]) for L in Ls]
    if len(Ts) == len(Ls):
        return list(zip(Ls, Ts))
    raise ValueError("--T must be one value or match --L")


class _Writer:
    """Opens the output and writes the csv header only once there is
    something to say, so a run that dies on argument validation leaves
    stdout untouched and never creates --out."""

    def __init__(self, path, fmt, columns):
        self.fmt = fmt
        self.columns = columns
        self.path = path
        self.fh = None

    def _out(self):
        if self.fh is None:
            self.fh = open(self.path, "w") if self.path else sys.stdout
            if self.fmt == "csv":
                self.fh.write(",".join(self.columns) + "\n")
        return self.fh

    def row(self, rec: dict):
        fh = self._out()
        if self.fmt == "csv":
            fh.write(",".join(_cell(rec[c]) for c in self.columns) + "\n")
        else:
            fh.write(json.dumps({c: rec[c] for c in self.columns}) + "\n")

    def close(self):
        fh = self._out()
        fh.flush()
        if self.path is not None:
            fh.close()


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


def cmd_sweep(args) -> int:
    ps = _parse_grid(args.p, args.p_grid, "p")
    if args.diagonal:
        points = [(p, p) for p in ps]
    else:
        qs = _parse_grid(args.q, args.q_grid, "q")
        points = [(p, q) for p in ps for q in qs]
    sizes = _size_pairs(args.L, args.T)
    rng = RngStream.from_seed(args.seed)
    cols = ["L", "T", "p", "q", "decoder", "samples", "pd", "se"]
    w = _Writer(args.out, args.format, cols)
    total = len(sizes) * len(points)
    k = 0
    for li, (L, T) in enumerate(sizes):
        for pi, (p, q) in enumerate(points):
            k += 1
            params = Params(p=p, q=q, L=L, T=T)
            est = estimate_pd(
                params,
                args.decoder,
                args.samples,
                rng.derive("pt", li, pi),
                workers=args.workers,
            )
            w.row(
                {
                    "L": L,
                    "T": T,
                    "p": p,
                    "q": q,
                    "decoder": args.decoder,
                    "samples": est.n,
                    "pd": est.pd,
                    "se": est.se,
                }
            )
            _progress(
                f"[{k}/{total}] L={L} T={T} p={p:.4f} q={q:.4f} "
                f"pd={est.pd:.4f} se={est.se:.4f}"
            )
    w.close()
    return 0


def cmd_mtff(args) -> int:
    ps = _parse_grid(args.p, args.p_grid, "p")
    if args.diagonal:
        points = [(p, p) for p in ps]
    else:
        qs = _parse_grid(args.q, args.q_grid, "q")
        points = [(p, q) for p in ps for q in qs]
    rng = RngStream.from_seed(args.seed)
    cols = [
        "L",
        "t_max",
        "p",
        "q",
        "decoder",
        "samples",
        "mtff",
        "se",
        "n_censored",
    ]
    w = _Writer(args.out, args.format, cols)
    k = 0
    total = len(args.L) * len(points)
    for li, L in enumerate(args.L):
        for pi, (p, q) in enumerate(points):
            k += 1
            params = Params(p=p, q=q, L=L, T=1)
            res = mtff(
                params,
                args.decoder,
                args.samples,
                rng.derive("pt", li, pi),
                t_max=args.t_max,
                workers=args.workers,
            )
            w.row(
                {
                    "L": L,
                    "t_max": args.t_max,
                    "p": p,
                    "q": q,
                    "decoder": args.decoder,
                    "samples": res.n,
                    "mtff": res.mean,
                    "se": res.se,
                    "n_censored": res.n_censored,
                }
            )
            _progress(
                f"[{k}/{total}] L={L} p={p:.4f} q={q:.4f} "
                f"mtff={res.mean:.2f} censored={res.n_censored}"
            )
    w.close()
    return 0


def cmd_crosscheck(args) -> int:
    rng = RngStream.from_seed(args.seed)
    params = Params(p=args.p, q=args.q, L=args.L[0], T=args.T[0] if args.T else args.L[0])
    cls = estimate_pd(
        params, args.decoder, args.samples, rng.derive("classical"), workers=args.workers
    )
    qm = estimate_pd(
        params,
        args.decoder,
        args.samples,
        rng.derive("quantum"),
        workers=args.workers,
        quantum=True,
    )
    denom = math.hypot(cls.se, qm.se)
    z = (cls.pd - qm.pd) / denom if denom > 0 else 0.0
    cols = [
        "L",
        "T",
        "p",
        "q",
        "decoder",
        "samples",
        "pd_classical",
        "se_classical",
        "pd_quantum",
        "se_quantum",
        "z",
    ]
    w = _Writer(args.out, args.format, cols)
    w.row(
        {
            "L": params.L,
            "T": params.T,
            "p": params.p,
            "q": params.q,
            "decoder": args.decoder,
            "samples": args.samples,
            "pd_classical": cls.pd,
            "se_classical": cls.se,
            "pd_quantum": qm.pd,
            "se_quantum": qm.se,
            "z": z,
        }
    )
    w.close()
    return 0


def cmd_analytic(args) -> int:
    ps = _parse_grid(args.p, args.p_grid, "p")
    sizes = _size_pairs(args.L, args.T)
    cols = ["L", "T", "p", "pd"]
    w = _Writer(args.out, args.format, cols)
    for L, T in sizes:
        for p in ps:
            w.row({"L": L, "T": T, "p": p, "pd": analytic_pd_mwpm_q0(p, L, T)})
    w.close()
    return 0


def _add_common(sp, with_decoder=True, with_T=True):
    sp.add_argument("--L", type=int, nargs="+", required=True)
    if with_T:
        sp.add_argument("--T", type=int, nargs="+", default=None)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--p-grid", default=None, help="lo:hi:n")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    if with_decoder:
        sp.add_argument("--decoder", choices=DECODERS, required=True)
        sp.add_argument("--samples", type=int, required=True)
        sp.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ptimdec")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("sweep", help="success probability over a grid")
    _add_common(sp)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--q-grid", default=None, help="lo:hi:n")
    sp.add_argument("--diagonal", action="store_true", help="set q = p")

    sp = sub.add_parser("mtff", help="mean time to first failure")
    _add_common(sp, with_T=False)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--q-grid", default=None, help="lo:hi:n")
    sp.add_argument("--diagonal", action="store_true", help="set q = p")
    sp.add_argument("--t-max", type=int, required=True)

    sp = sub.add_parser("crosscheck", help="classical vs quantum estimate")
    _add_common(sp)
    sp.add_argument("--q", type=float, required=True)

    sp = sub.add_parser("analytic", help="closed-form matching success at q=0")
    _add_common(sp, with_decoder=False)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.cmd == "sweep":
            return cmd_sweep(args)
        if args.cmd == "mtff":
            return cmd_mtff(args)
        if args.cmd == "crosscheck":
            if args.p is None:
                raise ValueError("crosscheck wants a single --p")
            return cmd_crosscheck(args)
        if args.cmd == "analytic":
            return cmd_analytic(args)
        raise ValueError(f"unknown command {args.cmd!r}")
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
