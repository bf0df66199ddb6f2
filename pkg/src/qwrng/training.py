"""Gradient-descent training of coin schedules toward a target distribution.

The loss is half the summed squared error between the measured and target
probabilities.  Its gradient with respect to every coin bias ratio is
computed in one reverse (adjoint) sweep through the coin/shift layers: the
evolution is linear with real coefficients, so the real and imaginary parts
of the amplitudes backpropagate through the transposed layers independently.
The result matches central finite differences of the loss to O(h^2) and is
exercised against that oracle in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .walk import (
    CoinSchedule,
    Distribution,
    WalkState,
    coin_from_ratio,
    measure,
    reachable_positions,
    run_walk,
    step,
)


def _check_same_support(y: Distribution, target: Distribution) -> None:
    if y.steps != target.steps:
        raise ValueError(
            f"distributions have different supports ({y.steps} vs {target.steps} steps)"
        )


def mse_loss(output: Distribution, target: Distribution) -> float:
    """Half the summed squared probability error; zero iff the two agree."""
    _check_same_support(output, target)
    return 0.5 * float(np.sum((target.as_array() - output.as_array()) ** 2))


def fidelity(y: Distribution, target: Distribution) -> float:
    """Similarity score sum(y*T) / sum(max(y, T)^2), in [0, 1].

    Equals 1 exactly when the distributions are identical and 0 when their
    masses never overlap.  Symmetric in its arguments.
    """
    _check_same_support(y, target)
    ya = y.as_array()
    ta = target.as_array()
    num = float(np.sum(ya * ta))
    den = float(np.sum(np.maximum(ya, ta) ** 2))
    return num / den


def _coin_derivative(ratio: float) -> np.ndarray:
    """Entrywise derivative of the biased coin with respect to its ratio.

    The true one-sided slope of sqrt at 0 is unbounded; at the exact
    endpoints the diverging term is replaced by 0 so training that clamps a
    ratio onto the boundary keeps a finite gradient and can still move back
    inside.  Interior values are exact.
    """
    d_sr = 0.5 / math.sqrt(ratio) if ratio > 0.0 else 0.0
    d_sq = -0.5 / math.sqrt(1.0 - ratio) if ratio < 1.0 else 0.0
    return np.array([[d_sr, d_sq], [d_sq, -d_sr]], dtype=np.complex128)


def loss_gradient(
    schedule: CoinSchedule, initial: WalkState, target: Distribution
) -> dict[tuple[int, int], float]:
    """Exact partial derivatives of the loss for every schedule entry.

    Forward pass records the state before each step; the backward pass
    carries the loss gradient with respect to the amplitudes (as one complex
    number per slot holding d/d(re) + i*d/d(im)) through the transposed
    shift and coin layers, and contracts it with the coin derivative at each
    position to read off d(loss)/d(ratio).
    """
    n = schedule.steps
    states = [initial]
    state = initial
    for t in range(1, n + 1):
        state = step(state, schedule.step_ratios(t))
        states.append(state)

    output = measure(state)
    _check_same_support(output, target)

    # Loss gradient at the final amplitudes: 2 * (P_m - T_m) * amplitude.
    adj: dict[int, np.ndarray] = {}
    for pos, amp in state.amplitudes.items():
        adj[pos] = 2.0 * (output.probs[pos] - target.probs[pos]) * amp

    grad: dict[tuple[int, int], float] = {}
    zero = np.zeros(2, dtype=np.complex128)
    for t in range(n, 0, -1):
        before = states[t - 1]
        ratios = schedule.step_ratios(t)
        adj_prev: dict[int, np.ndarray] = {}
        for m in reachable_positions(t):
            # Undo the shift: the L slot at m came from m-1, the R slot from m+1.
            lam = np.array(
                [adj.get(m - 1, zero)[0], adj.get(m + 1, zero)[1]],
                dtype=np.complex128,
            )
            psi = before.amplitudes.get(m, zero)
            grad[(t, m)] = float(np.real(np.vdot(lam, _coin_derivative(ratios[m]) @ psi)))
            # The biased coin is symmetric, so its transpose is itself.
            adj_prev[m] = coin_from_ratio(ratios[m]) @ lam
        adj = adj_prev
    return {key: grad[key] for key in schedule.sorted_keys()}


def apply_update(
    schedule: CoinSchedule,
    grad: Mapping[tuple[int, int], float],
    eta: float,
    clamp_margin: float = 0.0,
) -> CoinSchedule:
    """Descend one step: r <- r - eta * grad, clamped into the valid range."""
    if not (0.0 < eta <= 1.0):
        raise ValueError(f"learning rate must lie in (0, 1], got {eta}")
    if not (0.0 <= clamp_margin < 0.5):
        raise ValueError(f"clamp margin must lie in [0, 0.5), got {clamp_margin}")
    if set(grad) != set(schedule.ratios):
        raise ValueError("gradient key set does not match the schedule")
    lo, hi = clamp_margin, 1.0 - clamp_margin
    updated = {
        key: min(hi, max(lo, schedule.ratios[key] - eta * grad[key]))
        for key in schedule.sorted_keys()
    }
    return CoinSchedule(schedule.steps, updated)


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of a training run.

    The schedule starts from a constant grid at ``init_ratio`` unless
    ``init_seed`` is set, in which case every entry is drawn uniformly from
    [0, 1) with that seed.  Training stops as soon as the fidelity reaches
    ``fidelity_goal`` or the loss falls to ``loss_tol``, and gives up after
    ``max_iters`` updates.
    """

    eta: float = 0.1
    max_iters: int = 500
    fidelity_goal: float = 0.999
    loss_tol: float = 1e-8
    init_ratio: float = 0.5
    init_seed: int | None = None
    clamp_margin: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.eta <= 1.0):
            raise ValueError(f"learning rate must lie in (0, 1], got {self.eta}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if not (0.0 < self.fidelity_goal <= 1.0):
            raise ValueError(f"fidelity goal must lie in (0, 1], got {self.fidelity_goal}")
        if self.loss_tol < 0.0:
            raise ValueError(f"loss tolerance must be non-negative, got {self.loss_tol}")
        if not (0.0 <= self.init_ratio <= 1.0):
            raise ValueError(f"init ratio must lie in [0, 1], got {self.init_ratio}")
        if not (0.0 <= self.clamp_margin < 0.5):
            raise ValueError(f"clamp margin must lie in [0, 0.5), got {self.clamp_margin}")


@dataclass(frozen=True)
class TrainReport:
    """Outcome of a training run.

    ``iterations`` holds one (index, loss, fidelity) triple per evaluated
    schedule, starting with the initial one at index 0; index k describes
    the schedule after k updates.  ``converged`` records whether a stopping
    goal was met before the iteration budget ran out; ``output`` is the
    distribution produced by ``final_schedule``.
    """

    iterations: list[tuple[int, float, float]]
    final_schedule: CoinSchedule
    converged: bool
    output: Distribution

    @property
    def final_fidelity(self) -> float:
        return self.iterations[-1][2]


def _initial_schedule(steps: int, config: TrainConfig) -> CoinSchedule:
    if config.init_seed is not None:
        return CoinSchedule.random(steps, config.init_seed)
    return CoinSchedule.constant(steps, config.init_ratio)


def train(
    initial: WalkState, target: Distribution, config: TrainConfig = TrainConfig()
) -> TrainReport:
    """Fit a coin schedule so the walk's output matches the target.

    Plain gradient descent on the bias ratios; fully deterministic for a
    given configuration (including the init seed).  Running out of
    iterations is not an error: the report comes back with
    ``converged=False`` and the complete trace.
    """
    if target.steps < 1:
        raise ValueError("training needs a target over at least one step")
    schedule = _initial_schedule(target.steps, config)
    trace: list[tuple[int, float, float]] = []
    converged = False
    k = 0
    while True:
        output = measure(run_walk(initial, schedule))
        current_loss = mse_loss(output, target)
        current_fid = fidelity(output, target)
        trace.append((k, current_loss, current_fid))
        if current_fid >= config.fidelity_goal or current_loss <= config.loss_tol:
            converged = True
            break
        if k == config.max_iters:
            break
        grad = loss_gradient(schedule, initial, target)
        schedule = apply_update(schedule, grad, config.eta, config.clamp_margin)
        k += 1
    return TrainReport(
        iterations=trace, final_schedule=schedule, converged=converged, output=output
    )


def train_multi_start(
    initial: WalkState,
    target: Distribution,
    config: TrainConfig,
    seeds: Sequence[int],
) -> TrainReport:
    """Run one seeded-random training per seed and keep the best report.

    Selection is by final fidelity; ties go to the earliest seed in sorted
    order, so the result does not depend on evaluation order.
    """
    if not seeds:
        raise ValueError("need at least one seed")
    best: TrainReport | None = None
    for seed in sorted(set(int(s) for s in seeds)):
        report = train(initial, target, replace(config, init_seed=seed))
        if best is None or report.final_fidelity > best.final_fidelity:
            best = report
    assert best is not None
    return best
