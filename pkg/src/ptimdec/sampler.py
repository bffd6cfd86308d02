"""Classical Monte Carlo sampling of measurement trajectories.

Randomness discipline: every consumer takes an RngStream. Derived streams
are keyed by integer/string tags through SeedSequence spawning, so adding a
decoder or reordering estimation loops never shifts the random numbers seen
elsewhere. Draw order inside a trajectory is fixed: flip grid first
(row-major), then the syndrome measurement grid (row-major).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    Params,
    SyndromeRecord,
    configs_from_flips,
    syndrome_of_config,
)


def _tag_to_ints(tag) -> tuple[int, ...]:
    # leading marker keeps int and str tags in disjoint key spaces
    if isinstance(tag, (int, np.integer)):
        return (0, int(tag))
    if isinstance(tag, str):
        # stable text -> int key, independent of PYTHONHASHSEED
        return (1,) + tuple(tag.encode("utf8"))
    raise TypeError(f"rng tag must be int or str, got {type(tag)}")


class RngStream:
    """A named, forkable random stream on top of numpy's SeedSequence tree."""

    def __init__(self, seed_seq):
        if not isinstance(seed_seq, np.random.SeedSequence):
            seed_seq = np.random.SeedSequence(seed_seq)
        self.seed_seq = seed_seq
        self.generator = np.random.Generator(np.random.PCG64(seed_seq))

    @classmethod
    def from_seed(cls, seed: int | None) -> "RngStream":
        return cls(np.random.SeedSequence(seed))

    def derive(self, *tags) -> "RngStream":
        """Independent child stream addressed by the given tags."""
        key = []
        for tag in tags:
            key.extend(_tag_to_ints(tag))
        child = np.random.SeedSequence(
            entropy=self.seed_seq.entropy,
            spawn_key=tuple(self.seed_seq.spawn_key) + tuple(key),
        )
        return RngStream(child)

    # passthroughs used all over the package
    def random(self, size=None):
        return self.generator.random(size)

    def integers(self, *args, **kwargs):
        return self.generator.integers(*args, **kwargs)

    def coin(self) -> int:
        """Single fair bit, used for tie breaking."""
        return int(self.generator.integers(0, 2))


@dataclass
class Trajectory:
    """One sampled history: flips, resulting configs m_0..m_T, and record."""

    flips: np.ndarray
    configs: np.ndarray
    record: SyndromeRecord

    @property
    def final_config(self) -> np.ndarray:
        return self.configs[-1]


def sample_error_pattern(params: Params, rng: RngStream) -> np.ndarray:
    """Sites hit by the error channel: (T, L) bool, each True w.p. p."""
    return rng.random((params.T, params.L)) < params.p


def sample_flips_direct(params: Params, rng: RngStream) -> np.ndarray:
    """Flip pattern drawn in one stage: each site flips w.p. p/2."""
    return rng.random((params.T, params.L)) < 0.5 * params.p


def sample_flips_two_stage(errors: np.ndarray, rng: RngStream) -> np.ndarray:
    """Flips given an error pattern: each hit site flips w.p. 1/2.

    A full coin grid is drawn regardless of the pattern so that the stream
    position does not depend on the errors.
    """
    coins = rng.random(errors.shape) < 0.5
    return errors & coins


def sample_syndrome_pattern(params: Params, rng: RngStream) -> np.ndarray:
    """Which edges get measured at which step: (T, L-1) bool.

    Rows 1..T-1 measure each edge independently w.p. 1-q; the final row is
    forced complete.
    """
    pattern = rng.random((params.T, params.L - 1)) < (1.0 - params.q)
    pattern[params.T - 1, :] = True
    return pattern


def record_from(flips: np.ndarray, pattern: np.ndarray) -> tuple[np.ndarray, SyndromeRecord]:
    """Configs and the measured record implied by flips + measurement pattern."""
    configs = configs_from_flips(flips)
    agree = configs[1:, :-1] == configs[1:, 1:]
    values = np.where(agree, 1, -1).astype(np.int8)
    values[~np.asarray(pattern, dtype=bool)] = 0
    return configs, SyndromeRecord(values)


def run_classical(params: Params, rng: RngStream, two_stage: bool = False) -> Trajectory:
    """Sample one classical trajectory.

    two_stage=True draws the error pattern and the conditional coin flips
    separately; the marginal law of the flips is the same either way.
    """
    if two_stage:
        errors = sample_error_pattern(params, rng)
        flips = sample_flips_two_stage(errors, rng)
    else:
        flips = sample_flips_direct(params, rng)
    pattern = sample_syndrome_pattern(params, rng)
    configs, record = record_from(flips, pattern)
    return Trajectory(flips=flips, configs=configs, record=record)


def evaluate_fbi(trajectory: Trajectory, decoded: np.ndarray) -> int:
    """1 if the decoder output equals the true final configuration, else 0."""
    return int(np.array_equal(np.asarray(decoded) & 1, trajectory.final_config))
