"""Small brute-force oracles the real implementations are tested against.

Everything here trades efficiency for obviousness: exhaustive enumeration
over flip grids, min-plus dynamic programming over all 2^L configurations,
recursive enumeration of matchings. Keep sizes tiny when calling these.
"""

import numpy as np

from ptimdec.lattice import SyndromeRecord, candidate_strings, syndrome_of_config


def min_flips_dp(record: SyndromeRecord, final: np.ndarray | None = None) -> int:
    """Fewest total flips of any trajectory consistent with the record.

    Dynamic program over all 2^L configurations: start at all zeros, each
    step allows any set of flips at cost one per site, then configurations
    clashing with the measured syndrome values are discarded. If final is
    given, the trajectory must end exactly there.
    """
    values = record.values
    T, E = values.shape
    L = E + 1
    n = 1 << L
    idx = np.arange(n)
    bits = ((idx[:, None] >> np.arange(L)[None, :]) & 1).astype(np.int8)
    big = 10**9
    cost = np.full(n, big, dtype=np.int64)
    cost[0] = 0
    for k in range(T):
        # relax one site at a time: flipping site i costs 1
        for i in range(L):
            flipped = cost[idx ^ (1 << i)] + 1
            cost = np.minimum(cost, flipped)
        for e in range(E):
            v = values[k, e]
            if v == 0:
                continue
            agree = bits[:, e] == bits[:, e + 1]
            bad = agree if v == -1 else ~agree
            cost[bad] = big
    if final is not None:
        want = int(np.dot(np.asarray(final, dtype=np.int64), 1 << np.arange(L)))
        return int(cost[want])
    return int(cost.min())


def brute_force_class_weights(record: SyndromeRecord, p: float, q: float):
    """Joint probabilities P(record, m_T = C) and (.., Cbar) by summing over
    every flip grid. Feasible for T*L up to ~16."""
    values = record.values
    T, E = values.shape
    L = E + 1
    fp = 0.5 * p
    # probability of the measurement pattern itself (final row is forced)
    pat = 1.0
    for k in range(T - 1):
        n_meas = int(np.count_nonzero(values[k]))
        pat *= (1.0 - q) ** n_meas * q ** (E - n_meas)
    c, cbar = candidate_strings(values[T - 1])
    w = {0: 0.0, 1: 0.0}
    total_bits = T * L
    for g in range(1 << total_bits):
        flips = np.array(
            [(g >> (k * L + i)) & 1 for k in range(T) for i in range(L)],
            dtype=np.uint8,
        ).reshape(T, L)
        cfg = np.cumsum(flips, axis=0, dtype=np.int64) & 1
        ok = True
        for k in range(T):
            s = syndrome_of_config(cfg[k])
            for e in range(E):
                v = values[k, e]
                if v != 0 and v != s[e]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        nf = int(flips.sum())
        prob = fp**nf * (1.0 - fp) ** (total_bits - nf)
        if np.array_equal(cfg[T - 1], c):
            w[0] += prob
        elif np.array_equal(cfg[T - 1], cbar):
            w[1] += prob
        else:
            raise AssertionError("consistent grid ended off both candidates")
    return w[0] * pat, w[1] * pat


def exhaustive_min_pairing(dist: np.ndarray, wb: np.ndarray) -> int:
    """Cheapest way to pair defects up or send them to the boundary.

    dist[i, j] big means unreachable. Recursive enumeration; fine for up
    to ~10 defects.
    """
    n = len(wb)
    big = 10**9

    def rec(mask: int) -> int:
        if mask == 0:
            return 0
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        best = int(wb[i]) + rec(rest)
        j = rest
        while j:
            jj = (j & -j).bit_length() - 1
            j &= j - 1
            d = int(dist[i, jj])
            if d < big:
                best = min(best, d + rec(rest & ~(1 << jj)))
        return best

    return rec((1 << n) - 1)


def all_flip_grids(T: int, L: int):
    """Iterate every flip grid as a (T, L) uint8 array."""
    for g in range(1 << (T * L)):
        yield np.array(
            [(g >> (k * L + i)) & 1 for k in range(T) for i in range(L)],
            dtype=np.uint8,
        ).reshape(T, L)


def grid_probability(flips: np.ndarray, p: float) -> float:
    fp = 0.5 * p
    nf = int(flips.sum())
    return fp**nf * (1.0 - fp) ** (flips.size - nf)
