"""Shared helpers for building randomized test inputs."""

from __future__ import annotations

import numpy as np

import qwrng


def random_coin_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_schedule(rng: np.random.Generator, steps: int, lo: float = 0.0, hi: float = 1.0) -> qwrng.CoinSchedule:
    keys = qwrng.CoinSchedule.constant(steps).sorted_keys()
    return qwrng.CoinSchedule(steps, {k: float(rng.uniform(lo, hi)) for k in keys})


def random_distribution(rng: np.random.Generator, steps: int) -> qwrng.Distribution:
    w = rng.uniform(0.05, 1.0, size=steps + 1)
    w /= w.sum()
    return qwrng.Distribution.from_array(steps, w)


def first_iteration_reaching(report: qwrng.TrainReport, goal: float) -> int | None:
    """Earliest trace index whose fidelity is at least the goal."""
    for k, _, fid in report.iterations:
        if fid >= goal:
            return k
    return None
