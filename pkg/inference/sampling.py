"""Seeded sampling of qubit outcomes.

Bit generator: numpy's Philox4x64-10 (counter based). Derived streams come
from SeedSequence(seed, spawn_key=(index, ...)), so every (seed, index) pair
names one stream regardless of which order batches are run in.
"""
from dataclasses import dataclass

import numpy as np

from inference.measurement import success_probability


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    phi_true: float
    outcomes: np.ndarray  # +1 / −1
    seed: int
    M: int

    @property
    def n_plus(self):
        return int(np.count_nonzero(self.outcomes > 0))

    @property
    def n_minus(self):
        return self.M - self.n_plus

    @property
    def plus_fraction(self):
        return self.n_plus / self.M


def derive_seed(seed, *index):
    """64-bit sub-seed for stream `index` of a run seeded with `seed`."""
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in index))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_outcomes(table, phi_true, M, seed):
    """M independent readouts, + with probability p(+|phi_true)."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    p_plus = success_probability(table, float(phi_true))
    draws = make_rng(seed).random(M)
    outcomes = np.where(draws < p_plus, 1, -1).astype(np.int8)
    return MeasurementRecord(phi_true=float(phi_true), outcomes=outcomes,
                             seed=int(seed), M=int(M))
