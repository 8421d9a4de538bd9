"""Seeded synthetic grouped-count data, reproducible across platforms.

Randomness comes from a self-contained splitmix64 generator rather than
any library PRNG, so a given seed produces byte-identical CSV output on
every platform and library version.  Binomial draws use plain CDF
inversion on one uniform each.  Consumption order per row: one uniform
per declared variable (level choice, declaration order), then one
uniform for the binomial draw.
"""

import csv

import numpy as np

from .design import Dataset
from .links import link_for

__all__ = ["SplitMix64", "binomial_draw", "simulate_dataset", "write_dataset_csv"]

_MASK64 = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """Tiny 64-bit PRNG (splitmix64 finalizer); deterministic by seed."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def next_float(self) -> float:
        """Uniform on [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53


def binomial_draw(rng: SplitMix64, n_trials: int, prob: float) -> int:
    """One Binomial(n_trials, prob) variate by CDF inversion."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if prob <= 0.0:
        return 0
    if prob >= 1.0:
        return n_trials
    u = rng.next_float()
    ratio = prob / (1.0 - prob)
    pmf = (1.0 - prob) ** n_trials
    cdf = pmf
    k = 0
    while u > cdf and k < n_trials:
        k += 1
        pmf *= (n_trials - k + 1) / k * ratio
        cdf += pmf
    return k


def simulate_dataset(config, truth, n_rows: int, group_size: int, seed: int) -> Dataset:
    """Draw a grouped dataset from known coefficients under config.links[0].

    Levels are sampled uniformly per declared variable; the linear
    predictor is intercept plus the dummy-coded contribution of each
    sampled level; successes come from Binomial(group_size, g_inv(eta)).
    """
    truth = np.asarray(truth, dtype=float)
    width = 1 + sum(len(spec.coded_levels) for spec in config.variables)
    if truth.shape != (width,):
        raise ValueError(
            f"truth has {truth.shape[0] if truth.ndim == 1 else 'bad'} "
            f"entries; the declared variables imply {width} design columns"
        )
    if n_rows < 1 or group_size < 1:
        raise ValueError("n_rows and group_size must be >= 1")
    fns = link_for(config.links[0])

    offsets = {}
    col = 1
    for spec in config.variables:
        for level in spec.coded_levels:
            offsets[(spec.name, level)] = col
            col += 1

    rng = SplitMix64(seed)
    successes = np.empty(n_rows, dtype=np.int64)
    trials = np.full(n_rows, group_size, dtype=np.int64)
    values = {spec.name: [] for spec in config.variables}
    for i in range(n_rows):
        eta = truth[0]
        for spec in config.variables:
            u = rng.next_float()
            idx = min(int(u * len(spec.levels)), len(spec.levels) - 1)
            level = spec.levels[idx]
            values[spec.name].append(level)
            key = (spec.name, level)
            if key in offsets:
                eta += truth[offsets[key]]
        pi = float(np.asarray(fns.g_inv(eta), dtype=float))
        successes[i] = binomial_draw(rng, group_size, pi)
    return Dataset(
        successes,
        trials,
        {name: tuple(vals) for name, vals in values.items()},
    )


def write_dataset_csv(dataset: Dataset, config, path) -> None:
    """Write a dataset as CSV parseable by ``parse_csv`` with this config."""
    names = [spec.name for spec in config.variables]
    header = names + [config.successes_column, config.trials_column]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(dataset.n_rows):
            row = [dataset.categoricals[name][i] for name in names]
            row.append(int(dataset.successes[i]))
            row.append(int(dataset.trials[i]))
            writer.writerow(row)
