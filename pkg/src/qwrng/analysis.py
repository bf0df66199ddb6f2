"""Statistical validation of sample streams and schedule robustness checks."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.special import gammaincc

from .training import fidelity
from .walk import CoinSchedule, Distribution, WalkState, measure, run_walk

#: Wave-plate resolution (degrees) of the modeled hardware; a half-wave
#: plate at angle phi rotates polarization by 2*phi, so this grid on phi
#: induces a grid twice as coarse on the coin angle.
DEFAULT_HWP_RESOLUTION_DEG = 0.25


@dataclass(frozen=True)
class ChiSquareReport:
    """Goodness-of-fit summary: statistic, degrees of freedom, p-value."""

    statistic: float
    dof: int
    p_value: float


@dataclass(frozen=True)
class RobustnessCurve:
    """Fidelity under growing schedule perturbations.

    Each point is (perturbation magnitude, mean fidelity, min fidelity)
    across the Monte-Carlo trials at that magnitude.
    """

    points: list[tuple[float, float, float]]


def chi_square_p_value(statistic: float, dof: int) -> float:
    """Upper-tail probability of a chi-square statistic.

    Evaluated as the regularized upper incomplete gamma function at
    (dof/2, statistic/2).
    """
    if statistic < 0.0:
        raise ValueError(f"statistic must be non-negative, got {statistic}")
    if dof < 1:
        raise ValueError(f"degrees of freedom must be positive, got {dof}")
    return float(gammaincc(dof / 2.0, statistic / 2.0))


def chi_square_test(counts: Mapping[int, int], target: Distribution) -> ChiSquareReport:
    """Pearson chi-square test of observed counts against a target.

    Counts are keyed by lattice position; sites missing from the mapping
    count as zero.  The p-value is the regularized upper incomplete gamma
    function at (dof/2, statistic/2).
    """
    sites = target.support()
    extra = sorted(set(counts) - set(sites))
    if extra:
        raise ValueError(f"counts at positions {extra} lie outside the target support")
    observed = {m: int(counts.get(m, 0)) for m in sites}
    if any(c < 0 for c in observed.values()):
        raise ValueError("counts must be non-negative")
    total = sum(observed.values())
    if total < 1:
        raise ValueError("chi-square test needs at least one observation")
    if total < 5 * len(sites):
        warnings.warn(
            f"only {total} observations over {len(sites)} sites;"
            " the chi-square approximation may be poor",
            stacklevel=2,
        )
    statistic = 0.0
    for m in sites:
        expected = total * target.probs[m]
        if expected == 0.0:
            if observed[m]:
                raise ValueError(
                    f"position {m} has zero expected count but {observed[m]} observations"
                )
            continue
        statistic += (observed[m] - expected) ** 2 / expected
    dof = len(sites) - 1
    return ChiSquareReport(
        statistic=float(statistic),
        dof=dof,
        p_value=chi_square_p_value(float(statistic), dof),
    )


def entropy_report(dist: Distribution) -> tuple[float, float]:
    """Shannon entropy and min-entropy of a distribution, in bits."""
    p = dist.as_array()
    nz = p[p > 0.0]
    shannon = float(-(nz * np.log2(nz)).sum())
    min_entropy = float(-np.log2(p.max()))
    return shannon, min_entropy


def quantize_ratio(ratio: float, hwp_resolution_deg: float = DEFAULT_HWP_RESOLUTION_DEG) -> float:
    """Snap one bias ratio onto the grid realizable by the wave plate.

    The coin angle theta = arccos(sqrt(r)) is produced by a half-wave plate
    at phi = theta/2; phi is rounded to the nearest multiple of the
    resolution and mapped back through r = cos^2(2*phi).
    """
    if not (hwp_resolution_deg > 0.0):
        raise ValueError(f"resolution must be positive, got {hwp_resolution_deg}")
    theta_deg = math.degrees(math.acos(min(1.0, math.sqrt(ratio))))
    phi_q = round((theta_deg / 2.0) / hwp_resolution_deg) * hwp_resolution_deg
    return math.cos(math.radians(2.0 * phi_q)) ** 2


def quantize_schedule(
    schedule: CoinSchedule, hwp_resolution_deg: float = DEFAULT_HWP_RESOLUTION_DEG
) -> CoinSchedule:
    """Quantize every ratio of a schedule to the wave-plate grid."""
    return CoinSchedule(
        schedule.steps,
        {key: quantize_ratio(r, hwp_resolution_deg) for key, r in schedule.ratios.items()},
    )


def robustness_sweep(
    schedule: CoinSchedule,
    initial: WalkState,
    target: Distribution,
    magnitudes: Sequence[float],
    trials: int,
    seed: int,
) -> RobustnessCurve:
    """Monte-Carlo fidelity under uniform ratio noise of growing size.

    For each magnitude d, every ratio is shifted by an independent uniform
    offset in [-d, d] (clamped into [0, 1]) and the perturbed walk is
    re-simulated against the target.  Each (magnitude, trial) pair gets its
    own child generator derived from the seed, so results are reproducible
    and independent of any evaluation order.
    """
    mags = [float(d) for d in magnitudes]
    if not mags:
        raise ValueError("need at least one perturbation magnitude")
    if any(d < 0 for d in mags):
        raise ValueError("magnitudes must be non-negative")
    if any(b <= a for a, b in zip(mags, mags[1:])):
        raise ValueError(f"magnitudes must be strictly increasing, got {mags}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")

    base = schedule.to_array()
    points: list[tuple[float, float, float]] = []
    for i, d in enumerate(mags):
        fids = np.empty(trials)
        for t in range(trials):
            rng = np.random.default_rng(np.random.SeedSequence([int(seed), i, t]))
            noisy = np.clip(base + rng.uniform(-d, d, size=base.size), 0.0, 1.0)
            perturbed = schedule.with_array(noisy)
            fids[t] = fidelity(measure(run_walk(initial, perturbed)), target)
        points.append((d, float(fids.mean()), float(fids.min())))
    return RobustnessCurve(points=points)
