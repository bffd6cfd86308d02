"""Majority vote decoder: time-local, segment-wise fewest-flips tracking.

The decoder keeps a running guess of the bit string. Each step, every
maximal run of simultaneously measured edges pins the bits it touches up to
a global complement; the decoder picks whichever of the two assignments
differs from its previous guess in fewer places (a fair coin on exact
ties). Sites touched by no measured edge keep their previous value; this
falls out of treating an isolated site as a length-one run, where keeping
the value is always the strictly cheaper choice.
"""

from __future__ import annotations

import numpy as np

from .lattice import SyndromeRecord
from .sampler import RngStream


def segments_at(mask_row: np.ndarray) -> list[tuple[int, int]]:
    """Site ranges pinned by one step's measured edges.

    mask_row is the (L-1,) boolean measured-edge row. Returns half-open
    0-indexed site intervals [start, stop), one per maximal run of measured
    edges. A run of edges e..f (0-indexed) pins sites e..f+1.
    """
    mask_row = np.asarray(mask_row, dtype=bool)
    edges = np.flatnonzero(mask_row)
    out = []
    if edges.size == 0:
        return out
    breaks = np.flatnonzero(np.diff(edges) > 1)
    starts = np.concatenate(([0], breaks + 1))
    stops = np.concatenate((breaks, [edges.size - 1]))
    for a, b in zip(starts, stops):
        out.append((int(edges[a]), int(edges[b]) + 2))
    return out


def _step(prev: np.ndarray, values_row: np.ndarray, rng: RngStream) -> np.ndarray:
    """Advance the running guess through one syndrome row."""
    L = prev.shape[0]
    measured = values_row != 0
    flip = np.zeros(L, dtype=np.int64)
    flip[1:] = (values_row == -1)
    conn = np.zeros(L, dtype=bool)
    conn[1:] = measured

    # runs of sites chained by measured edges; isolated sites are runs of one
    starts = np.flatnonzero(~conn)
    run_id = np.cumsum(~conn) - 1
    csum = np.cumsum(flip * conn)
    base = np.concatenate(([0], csum[starts[1:] - 1])) if starts.size > 1 else np.zeros(1, dtype=np.int64)
    rel = (csum - base[run_id]) & 1

    mism0 = (rel != prev).astype(np.int64)
    n0 = np.add.reduceat(mism0, starts)
    lengths = np.diff(np.concatenate((starts, [L])))
    n1 = lengths - n0

    choose = np.zeros(starts.size, dtype=np.uint8)
    choose[n1 < n0] = 1
    for r in np.flatnonzero(n0 == n1):
        choose[r] = rng.coin()
    return (rel ^ choose[run_id]).astype(np.uint8)


def decode_mvd(record: SyndromeRecord, rng: RngStream, history: bool = False):
    """Run the decoder over a full record; returns the final guess.

    With history=True, returns the (T+1, L) array of guesses m~_0 .. m~_T
    instead. Ties consume one coin each, scanned row by row and left to
    right, so a record with complete rows and odd L draws no randomness.
    """
    T, n_edges = record.values.shape
    L = n_edges + 1
    guesses = np.zeros((T + 1, L), dtype=np.uint8)
    cur = guesses[0]
    for k in range(T):
        cur = _step(cur, record.values[k], rng)
        guesses[k + 1] = cur
    if history:
        return guesses
    return cur
