"""Monte Carlo estimators and analytic references.

Per-sample randomness comes from streams derived off the caller's stream
by sample index (rng.derive("traj", i) for the trajectory, ("coin", i)
for decoder tie coins), so sample i is the same no matter how samples are
chunked across workers. Success values live in {0, 1/2, 1}; accumulators
hold the integers 2f and (2f)^2, so partial sums combine exactly and a
sweep is byte-for-byte reproducible for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .lattice import Params
from .sampler import RngStream, run_classical, evaluate_fbi
from .mvd import decode_mvd
from .matching import decode_mwpm
from .mld import decode_mld
from .stabilizer import run_quantum, evaluate_fqm, full_knowledge_success

DECODERS = ("full", "mvd", "mwpm", "mld")


@dataclass
class Estimate:
    """Mean of a {0, 1/2, 1}-valued success variable with its standard error."""

    n: int
    sum2: int  # sum of 2f
    sum4: int  # sum of (2f)^2

    @property
    def pd(self) -> float:
        return self.sum2 / (2 * self.n)

    @property
    def se(self) -> float:
        if self.n < 2:
            return 0.0
        mean = self.pd
        var = (self.sum4 / 4.0 - self.n * mean * mean) / (self.n - 1)
        return math.sqrt(max(var, 0.0) / self.n)

    def __add__(self, other: "Estimate") -> "Estimate":
        return Estimate(self.n + other.n, self.sum2 + other.sum2, self.sum4 + other.sum4)


def decode_record(name: str, record, params: Params, rng: RngStream) -> np.ndarray:
    """Run one of the record-based decoders by name."""
    if name == "mvd":
        return decode_mvd(record, rng)
    if name == "mwpm":
        return decode_mwpm(record)
    if name == "mld":
        return decode_mld(record, params.p, params.q, rng)
    raise ValueError(f"unknown record decoder {name!r}")


def _sample_once(params: Params, decoder: str, rng: RngStream, i: int, quantum: bool) -> int:
    """One sample's 2f value."""
    r_traj = rng.derive("traj", i)
    if decoder == "full":
        f = full_knowledge_success(params, r_traj)
        return int(round(2.0 * f))
    r_coin = rng.derive("coin", i)
    if quantum:
        state, record = run_quantum(params, r_traj)
        guess = decode_record(decoder, record, params, r_coin)
        return int(round(2.0 * evaluate_fqm(state, guess)))
    traj = run_classical(params, r_traj)
    guess = decode_record(decoder, traj.record, params, r_coin)
    return 2 * evaluate_fbi(traj, guess)


def _pd_chunk(args) -> tuple[int, int, int]:
    params, decoder, seed_seq, lo, hi, quantum = args
    rng = RngStream(seed_seq)
    s2 = 0
    s4 = 0
    for i in range(lo, hi):
        f2 = _sample_once(params, decoder, rng, i, quantum)
        s2 += f2
        s4 += f2 * f2
    return hi - lo, s2, s4


def estimate_pd(
    params: Params,
    decoder: str,
    n_samples: int,
    rng: RngStream,
    workers: int = 1,
    quantum: bool = False,
) -> Estimate:
    """Monte Carlo estimate of the decoding success probability."""
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}")
    bounds = np.linspace(0, n_samples, max(workers, 1) + 1).astype(int)
    jobs = [
        (params, decoder, rng.seed_seq, int(lo), int(hi), quantum)
        for lo, hi in zip(bounds[:-1], bounds[1:])
        if hi > lo
    ]
    if workers <= 1:
        parts = [_pd_chunk(j) for j in jobs]
    else:
        with Pool(workers) as pool:
            parts = pool.map(_pd_chunk, jobs)
    total = Estimate(0, 0, 0)
    for n, s2, s4 in parts:
        total = total + Estimate(n, s2, s4)
    return total


@dataclass
class MtffResult:
    """Mean time to first decoding failure, censored at t_max."""

    n: int
    sum_t: int
    sum_t2: int
    n_censored: int
    t_max: int

    @property
    def mean(self) -> float:
        return self.sum_t / self.n

    @property
    def se(self) -> float:
        if self.n < 2:
            return 0.0
        m = self.mean
        var = (self.sum_t2 - self.n * m * m) / (self.n - 1)
        return math.sqrt(max(var, 0.0) / self.n)

    def __add__(self, other: "MtffResult") -> "MtffResult":
        assert self.t_max == other.t_max
        return MtffResult(
            self.n + other.n,
            self.sum_t + other.sum_t,
            self.sum_t2 + other.sum_t2,
            self.n_censored + other.n_censored,
            self.t_max,
        )


def _first_failure(params: Params, decoder: str, rng: RngStream, i: int, t_max: int) -> int:
    """First t in 1..t_max whose truncated-record decode misses m_t; 0 when
    censored (no failure up to t_max)."""
    r_traj = rng.derive("traj", i)
    run_params = Params(p=params.p, q=params.q, L=params.L, T=t_max)
    traj = run_classical(run_params, r_traj)
    for t in range(1, t_max + 1):
        rec_t = traj.record.truncated(t, traj.configs[t])
        guess = decode_record(decoder, rec_t, params, rng.derive("coin", i, t))
        if not np.array_equal(guess, traj.configs[t]):
            return t
    return 0


def _mtff_chunk(args):
    params, decoder, seed_seq, lo, hi, t_max = args
    rng = RngStream(seed_seq)
    st = 0
    st2 = 0
    cens = 0
    for i in range(lo, hi):
        t = _first_failure(params, decoder, rng, i, t_max)
        if t == 0:
            cens += 1
            t = t_max
        st += t
        st2 += t * t
    return hi - lo, st, st2, cens


def mtff(
    params: Params,
    decoder: str,
    n_samples: int,
    rng: RngStream,
    t_max: int,
    workers: int = 1,
) -> MtffResult:
    """Mean time to first failure under repeated truncated-record decoding.

    Each sample simulates one trajectory out to t_max; at every horizon t
    the decoder sees the sampled rows before t plus the forced row at t
    and must reproduce m_t. Samples that never fail count as t_max and are
    reported in n_censored (the mean is biased low when that happens, so
    keep t_max generous).
    """
    if decoder == "full":
        raise ValueError("time to failure needs a record decoder")
    bounds = np.linspace(0, n_samples, max(workers, 1) + 1).astype(int)
    jobs = [
        (params, decoder, rng.seed_seq, int(lo), int(hi), t_max)
        for lo, hi in zip(bounds[:-1], bounds[1:])
        if hi > lo
    ]
    if workers <= 1:
        parts = [_mtff_chunk(j) for j in jobs]
    else:
        with Pool(workers) as pool:
            parts = pool.map(_mtff_chunk, jobs)
    total = MtffResult(0, 0, 0, 0, t_max)
    for n, st, st2, cens in parts:
        total = total + MtffResult(n, st, st2, cens, t_max)
    return total


def odd_majority_prob(L: int, p: float) -> float:
    """Probability that at least half of L sites flip in one step, counting
    a half at exactly L/2 (only relevant for even L). Per-site flip
    probability is p/2."""
    fp = 0.5 * p
    total = 0.0
    for b in range(L // 2 + 1, L + 1):
        total += math.comb(L, b) * fp**b * (1.0 - fp) ** (L - b)
    if L % 2 == 0:
        b = L // 2
        total += 0.5 * math.comb(L, b) * fp**b * (1.0 - fp) ** (L - b)
    return total


def analytic_pd_mwpm_q0(p: float, L: int, T: int) -> float:
    """Exact matching-decoder success at q = 0 (every row measured).

    With full rows the decoder handles each step independently and fails a
    step exactly when the majority of sites flipped, so the final guess is
    right when an even number of steps had majority flips:
    P_D = (1 + (1 - 2P)^T) / 2 with P the per-step majority probability.
    """
    P = odd_majority_prob(L, p)
    return 0.5 * (1.0 + (1.0 - 2.0 * P) ** T)


def crossing_point(x: np.ndarray, y1: np.ndarray, y2: np.ndarray) -> float:
    """x where y1 - y2 changes sign, linearly interpolated. nan if the
    difference never changes sign."""
    d = np.asarray(y1, dtype=float) - np.asarray(y2, dtype=float)
    for i in range(len(d) - 1):
        if d[i] == 0.0:
            return float(x[i])
        if d[i] * d[i + 1] < 0.0:
            frac = d[i] / (d[i] - d[i + 1])
            return float(x[i] + frac * (x[i + 1] - x[i]))
    if d[-1] == 0.0:
        return float(x[-1])
    return float("nan")


def threshold_crossing(x: np.ndarray, curves: list[np.ndarray]) -> tuple[float, float]:
    """Median and spread of pairwise crossings between success curves of
    increasing system size. Curves cross where the larger size stops
    winning; the median over all pairs is the threshold estimate."""
    pts = []
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            c = crossing_point(x, curves[i], curves[j])
            if not math.isnan(c):
                pts.append(c)
    if not pts:
        return float("nan"), float("nan")
    arr = np.array(pts)
    return float(np.median(arr)), float(arr.max() - arr.min())
