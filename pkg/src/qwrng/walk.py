"""Biased 1D discrete-time quantum walk: coins, evolution, measurement.

The walker lives on the integer lattice and carries a two-level coin with
basis states L and R.  One step applies a 2x2 coin at every occupied
position, then the conditional shift: the L component moves one site to the
left, the R component one site to the right.  Coins are parameterized either
by a three-phase rotation (:func:`coin_matrix`) or by a single bias ratio
``r`` (:func:`coin_from_ratio`), where ``r = cos^2(theta)`` and ``r = 0.5``
gives the Hadamard coin.

States are stored sparsely, keyed by occupied position, so the parity and
support invariants of the walk (after ``n`` steps from the origin only sites
``x`` with ``|x| <= n`` and ``x == n (mod 2)`` can be occupied) hold by
construction.  All functions here are pure; every value is treated as
immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

#: Structural tolerance: unitarity, norm conservation, internal identities.
NORM_TOL = 1e-12
#: Tolerance applied to user-supplied vectors that claim to be normalized.
INPUT_NORM_TOL = 1e-9
#: Tolerance on the total mass of a probability distribution.
DIST_SUM_TOL = 1e-9

#: Coin vectors selectable by name (the polarization dictionary used by the
#: command line): L and R are the coin basis states, the circular pair is the
#: balanced superposition with a +/- 90 degree relative phase.
NAMED_COIN_VECTORS: dict[str, tuple[complex, complex]] = {
    "L": (1.0 + 0.0j, 0.0 + 0.0j),
    "R": (0.0 + 0.0j, 1.0 + 0.0j),
    "circ-left": (1.0 / math.sqrt(2.0), 1.0j / math.sqrt(2.0)),
    "circ-right": (1.0 / math.sqrt(2.0), -1.0j / math.sqrt(2.0)),
}

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CoinParams:
    """Parameters of the general three-phase coin rotation.

    ``theta`` is the mixing angle in ``[0, pi/2]``; ``diag_phase`` and
    ``offdiag_phase`` are the phases attached to the cosine (diagonal) and
    sine (off-diagonal) entries; ``global_phase`` multiplies the whole
    matrix.  The defaults reduce the coin to the single-parameter family
    used by the trainer: ``coin_matrix(CoinParams(theta))`` equals
    ``coin_from_ratio(cos(theta)**2)``.
    """

    theta: float
    diag_phase: float = -math.pi / 2.0
    offdiag_phase: float = -math.pi / 2.0
    global_phase: float = math.pi / 2.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi / 2.0):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        for name in ("diag_phase", "offdiag_phase", "global_phase"):
            object.__setattr__(self, name, getattr(self, name) % _TWO_PI)


def coin_matrix(params: CoinParams) -> np.ndarray:
    """Return the 2x2 unitary coin for the given rotation parameters.

    The matrix is ``g * [[d*c, o*s], [-conj(o)*s, conj(d)*c]]`` with
    ``c = cos(theta)``, ``s = sin(theta)`` and ``g, d, o`` the unit phases
    of ``global_phase``, ``diag_phase``, ``offdiag_phase``.
    """
    c = math.cos(params.theta)
    s = math.sin(params.theta)
    g = np.exp(1j * params.global_phase)
    d = np.exp(1j * params.diag_phase)
    o = np.exp(1j * params.offdiag_phase)
    return g * np.array(
        [[d * c, o * s], [-np.conj(o) * s, np.conj(d) * c]], dtype=np.complex128
    )


def coin_from_ratio(ratio: float) -> np.ndarray:
    """Return the real biased coin ``[[sr, sq], [sq, -sr]]``.

    ``sr = sqrt(ratio)`` and ``sq = sqrt(1 - ratio)``; the ratio is the
    weight with which each coin component keeps its own label.  Equal to
    ``coin_matrix(CoinParams(arccos(sqrt(ratio))))``.
    """
    if not (0.0 <= ratio <= 1.0):
        raise ValueError(f"coin bias ratio must lie in [0, 1], got {ratio}")
    sr = math.sqrt(ratio)
    sq = math.sqrt(1.0 - ratio)
    return np.array([[sr, sq], [sq, -sr]], dtype=np.complex128)


def support_positions(steps: int) -> list[int]:
    """Positions reachable after ``steps`` steps from the origin."""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    return list(range(-steps, steps + 1, 2))


def reachable_positions(step_index: int) -> list[int]:
    """Positions that can be occupied just before step ``step_index`` runs.

    Step indices start at 1, so the first step sees only the origin.
    """
    if step_index < 1:
        raise ValueError(f"step index must be >= 1, got {step_index}")
    return list(range(-(step_index - 1), step_index, 2))


def schedule_keys(steps: int) -> list[tuple[int, int]]:
    """All (step, position) pairs a schedule for ``steps`` steps must cover."""
    return [(t, m) for t in range(1, steps + 1) for m in reachable_positions(t)]


@dataclass(frozen=True)
class CoinSchedule:
    """Grid of coin bias ratios, one per (step, position) pair.

    The key set is fixed by the walk geometry: step ``t`` (1-based) covers
    exactly the ``t`` positions reachable before it runs, so an ``n``-step
    schedule has ``n*(n+1)/2`` entries.  This grid is the trainable
    parameter set.
    """

    steps: int
    ratios: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")
        expected = schedule_keys(self.steps)
        got = set(self.ratios)
        if got != set(expected):
            missing = sorted(set(expected) - got)
            extra = sorted(got - set(expected))
            raise ValueError(
                f"schedule key set does not match a {self.steps}-step walk"
                f" (missing {missing[:4]}{'...' if len(missing) > 4 else ''},"
                f" unexpected {extra[:4]}{'...' if len(extra) > 4 else ''})"
            )
        clean: dict[tuple[int, int], float] = {}
        for key in expected:
            r = float(self.ratios[key])
            if not (0.0 <= r <= 1.0):
                raise ValueError(f"ratio at (step, position) {key} is {r}, outside [0, 1]")
            clean[key] = r
        object.__setattr__(self, "ratios", clean)

    @classmethod
    def constant(cls, steps: int, ratio: float = 0.5) -> "CoinSchedule":
        """Schedule with every entry set to ``ratio``."""
        return cls(steps, {key: ratio for key in schedule_keys(steps)})

    @classmethod
    def random(cls, steps: int, seed: int) -> "CoinSchedule":
        """Schedule with independent uniform ratios drawn from a seeded PRNG."""
        rng = np.random.default_rng(np.random.PCG64(seed))
        return cls(steps, {key: float(rng.uniform(0.0, 1.0)) for key in schedule_keys(steps)})

    def step_ratios(self, step_index: int) -> dict[int, float]:
        """Ratios for one step, keyed by position."""
        return {m: self.ratios[(step_index, m)] for m in reachable_positions(step_index)}

    def sorted_keys(self) -> list[tuple[int, int]]:
        return schedule_keys(self.steps)

    def to_array(self) -> np.ndarray:
        """Ratios flattened in sorted (step, position) order."""
        return np.array([self.ratios[key] for key in self.sorted_keys()])

    def with_array(self, values: Iterable[float]) -> "CoinSchedule":
        """New schedule with ratios replaced from a flat array (sorted-key order)."""
        vals = list(values)
        keys = self.sorted_keys()
        if len(vals) != len(keys):
            raise ValueError(f"expected {len(keys)} ratios, got {len(vals)}")
        return CoinSchedule(self.steps, dict(zip(keys, map(float, vals))))


@dataclass(frozen=True, eq=False)
class WalkState:
    """Sparse walker state: occupied position -> (c_L, c_R) amplitudes."""

    step: int
    amplitudes: dict[int, np.ndarray]

    def positions(self) -> list[int]:
        return sorted(self.amplitudes)

    def norm(self) -> float:
        total = 0.0
        for amp in self.amplitudes.values():
            total += float(np.abs(amp[0]) ** 2 + np.abs(amp[1]) ** 2)
        return math.sqrt(total)


def initial_state(coin_vector: Iterable[complex]) -> WalkState:
    """Walker at the origin with the given normalized coin vector.

    Raises ``ValueError`` if the vector is not unit length (within 1e-9);
    inputs are expected to be normalized by the caller, never silently
    rescaled.
    """
    vec = np.asarray(tuple(coin_vector), dtype=np.complex128)
    if vec.shape != (2,):
        raise ValueError(f"coin vector must have two components, got shape {vec.shape}")
    if not np.all(np.isfinite(vec.view(np.float64))):
        raise ValueError("coin vector must be finite")
    sq = float(np.abs(vec[0]) ** 2 + np.abs(vec[1]) ** 2)
    if abs(sq - 1.0) > INPUT_NORM_TOL:
        raise ValueError(f"coin vector is not normalized: |v|^2 = {sq!r}")
    return WalkState(step=0, amplitudes={0: vec.copy()})


def apply_coin_layer(state: WalkState, ratios: Mapping[int, float]) -> WalkState:
    """Apply the per-position biased coin to every occupied position.

    ``ratios`` must define a bias for each occupied position; extra entries
    are ignored.  The step counter is unchanged and the norm is preserved.
    """
    new_amps: dict[int, np.ndarray] = {}
    for pos in state.positions():
        if pos not in ratios:
            raise ValueError(f"no coin ratio for occupied position {pos}")
        new_amps[pos] = coin_from_ratio(ratios[pos]) @ state.amplitudes[pos]
    return WalkState(step=state.step, amplitudes=new_amps)


def apply_shift(state: WalkState) -> WalkState:
    """Move every L component one site left and every R component one right.

    This is a pure relabeling: each target slot receives exactly one
    contribution, so no interference happens here and the norm is exactly
    preserved.  The step counter advances by one.
    """
    moved: dict[int, np.ndarray] = {}

    def slot(pos: int) -> np.ndarray:
        if pos not in moved:
            moved[pos] = np.zeros(2, dtype=np.complex128)
        return moved[pos]

    for pos in state.positions():
        amp = state.amplitudes[pos]
        if amp[0] != 0:
            slot(pos - 1)[0] = amp[0]
        if amp[1] != 0:
            slot(pos + 1)[1] = amp[1]
    ordered = {pos: moved[pos] for pos in sorted(moved)}
    return WalkState(step=state.step + 1, amplitudes=ordered)


def step(state: WalkState, ratios: Mapping[int, float]) -> WalkState:
    """One full walk step: coin layer, then conditional shift."""
    return apply_shift(apply_coin_layer(state, ratios))


def run_walk(initial: WalkState, schedule: CoinSchedule) -> WalkState:
    """Evolve an origin-start state through every step of a schedule."""
    if initial.step != 0 or initial.positions() != [0]:
        raise ValueError("run_walk requires a step-0 state located at the origin")
    state = initial
    for t in range(1, schedule.steps + 1):
        state = step(state, schedule.step_ratios(t))
    return state


@dataclass(frozen=True)
class Distribution:
    """Probabilities over the ``steps + 1`` reachable lattice sites.

    The support is always the full parity-correct grid
    ``-steps, -steps+2, ..., steps``; unreachable outcomes carry probability
    zero rather than being absent.
    """

    steps: int
    probs: dict[int, float]

    def __post_init__(self) -> None:
        expected = support_positions(self.steps)
        if set(self.probs) != set(expected):
            raise ValueError(
                f"distribution support must be exactly {expected}, got {sorted(self.probs)}"
            )
        clean: dict[int, float] = {}
        total = 0.0
        for m in expected:
            p = float(self.probs[m])
            if not math.isfinite(p) or p < 0.0 or p > 1.0 + NORM_TOL:
                raise ValueError(f"probability at position {m} is {p}, outside [0, 1]")
            clean[m] = p
            total += p
        if abs(total - 1.0) > DIST_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", clean)

    def support(self) -> list[int]:
        return support_positions(self.steps)

    def as_array(self) -> np.ndarray:
        """Probabilities ordered by ascending position."""
        return np.array([self.probs[m] for m in self.support()])

    @classmethod
    def from_array(cls, steps: int, values: Iterable[float]) -> "Distribution":
        vals = list(values)
        sites = support_positions(steps)
        if len(vals) != len(sites):
            raise ValueError(f"expected {len(sites)} probabilities, got {len(vals)}")
        return cls(steps, dict(zip(sites, map(float, vals))))


def measure(state: WalkState) -> Distribution:
    """Collapse a state to outcome probabilities |c_L|^2 + |c_R|^2 per site."""
    probs = {m: 0.0 for m in support_positions(state.step)}
    for pos, amp in state.amplitudes.items():
        probs[pos] = float(np.abs(amp[0]) ** 2 + np.abs(amp[1]) ** 2)
    return Distribution(steps=state.step, probs=probs)
