"""Core data types for the measured repetition code on a space-time lattice.

Conventions used throughout the package:

* Sites are qubits 1..L, edges are nearest-neighbour pairs (i, i+1) for
  i = 1..L-1.  Arrays are 0-indexed, so column ``i`` of an (L-1,)-shaped
  syndrome array refers to edge (i+1, i+2) in 1-indexed language.
* Steps are 1-indexed in prose.  Row ``k`` of a (T, ...) array holds step
  ``k+1``.  Within a step, bit flips happen first, syndrome measurements
  second.  ``m_0`` is the all-zeros string.
* Syndrome values are +1 when the two adjacent bits agree, -1 when they
  differ.  Unmeasured entries are stored as 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Type aliases, mostly for documentation. A BitConfig is a (L,) uint8 array
# with entries in {0, 1}. Error and flip patterns are (T, L) bool arrays,
# a syndrome measurement pattern is a (T, L-1) bool array whose last row is
# all True (the final readout is forced).
BitConfig = np.ndarray
ErrorPattern = np.ndarray
FlipPattern = np.ndarray
SyndromePattern = np.ndarray


@dataclass(frozen=True)
class Params:
    """Model parameters.

    p is the per-site, per-step probability that a bit is hit by the error
    channel (a classical flip then happens with probability 1/2), q is the
    probability that an edge syndrome measurement is *skipped*, L is the
    (odd) number of sites and T the number of steps.
    """

    p: float
    q: float
    L: int
    T: int
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")
        if self.L < 1 or self.L % 2 == 0:
            raise ValueError(f"L must be odd and positive, got {self.L}")
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T}")

    @property
    def n_edges(self) -> int:
        return self.L - 1


def syndrome_of_config(bits: BitConfig) -> np.ndarray:
    """Noiseless syndrome of a bit string: +1 where neighbours agree, else -1."""
    bits = np.asarray(bits)
    return (1 - 2 * (bits[:-1] != bits[1:])).astype(np.int8)


def configs_from_flips(flips: FlipPattern) -> np.ndarray:
    """Bit configurations m_0 .. m_T from a (T, L) flip pattern.

    Returns a (T+1, L) uint8 array; row 0 is the all-zeros initial string,
    row k is the configuration after step k.
    """
    flips = np.asarray(flips, dtype=np.int64)
    T, L = flips.shape
    out = np.zeros((T + 1, L), dtype=np.uint8)
    out[1:] = np.cumsum(flips, axis=0) & 1
    return out


def candidate_strings(values: np.ndarray) -> tuple[BitConfig, BitConfig]:
    """The two bit strings consistent with a complete +1/-1 syndrome row.

    Returns (C, Cbar) where C has first bit 0 and Cbar is its complement.
    """
    values = np.asarray(values)
    if values.ndim != 1 or np.any(values == 0):
        raise ValueError("candidate_strings needs one complete syndrome row")
    c = np.zeros(values.shape[0] + 1, dtype=np.uint8)
    c[1:] = np.cumsum(values == -1) & 1
    return c, (1 - c).astype(np.uint8)


@dataclass
class SyndromeRecord:
    """Measured syndrome history: (T, L-1) int8, entries in {+1, -1, 0}.

    0 marks an edge that was not measured at that step. The last row is
    complete by construction (final forced readout).
    """

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int8)
        if self.values.ndim != 2:
            raise ValueError("record values must be 2-d")

    @property
    def n_steps(self) -> int:
        return self.values.shape[0]

    @property
    def n_edges(self) -> int:
        return self.values.shape[1]

    @property
    def mask(self) -> SyndromePattern:
        return self.values != 0

    def final_row(self) -> np.ndarray:
        return self.values[-1]

    def truncated(self, t: int, config_t: BitConfig) -> "SyndromeRecord":
        """Record seen by a decoder stopped at step t.

        Rows for steps 1..t-1 are kept as recorded, the row for step t is
        replaced by a forced complete readout of ``config_t`` (the true
        configuration m_t).
        """
        if not 1 <= t <= self.n_steps:
            raise ValueError(f"t must be in 1..{self.n_steps}, got {t}")
        vals = np.empty((t, self.n_edges), dtype=np.int8)
        vals[: t - 1] = self.values[: t - 1]
        vals[t - 1] = syndrome_of_config(config_t)
        return SyndromeRecord(vals)
