"""Target distributions: uniform, discretized Gaussian, and CSV-loaded."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .walk import Distribution, support_positions

#: How far a user-supplied target may deviate from unit mass before it is
#: rejected instead of renormalized.
LOAD_SUM_TOL = 1e-6

CSV_HEADER = "position,probability"


def uniform_target(steps: int) -> Distribution:
    """Equal probability on each of the ``steps + 1`` reachable sites."""
    if steps < 1:
        raise ValueError(f"a uniform target needs at least one step, got {steps}")
    sites = support_positions(steps)
    p = 1.0 / len(sites)
    return Distribution(steps, {m: p for m in sites})


def gaussian_target(steps: int, mu: float = 0.0, sigma: float = 2.0) -> Distribution:
    """Pointwise-sampled Gaussian density on the walk support, normalized.

    ``T(m)`` is proportional to ``exp(-(m - mu)^2 / (2 sigma^2))`` over the
    parity-correct sites; the weights are shifted in log space before
    exponentiation so extreme parameters cannot underflow to an all-zero
    vector.
    """
    if steps < 1:
        raise ValueError(f"a gaussian target needs at least one step, got {steps}")
    if not (sigma > 0.0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    sites = np.array(support_positions(steps), dtype=float)
    log_w = -((sites - mu) ** 2) / (2.0 * sigma * sigma)
    w = np.exp(log_w - log_w.max())
    w /= w.sum()
    return Distribution.from_array(steps, w)


def _parse_rows(text: str) -> list[tuple[int, float]]:
    rows: list[tuple[int, float]] = []
    first = True
    # tolerate the typographic minus sign in hand-written files
    for lineno, raw in enumerate(text.replace("−", "-").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if first and line.lower() == CSV_HEADER:
            first = False
            continue
        first = False
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'position,probability', got {raw!r}")
        try:
            pos = int(parts[0].strip())
            prob = float(parts[1].strip())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        rows.append((pos, prob))
    if not rows:
        raise ValueError("no data rows found")
    return rows


def load_target(text: str, steps: int) -> Distribution:
    """Parse a 'position,probability' CSV into a target distribution.

    The rows must cover exactly the ``steps + 1`` parity-correct sites, each
    once.  A total mass within ``LOAD_SUM_TOL`` of 1 is renormalized exactly;
    anything further off is rejected as unnormalized input.
    """
    rows = _parse_rows(text)
    seen: dict[int, float] = {}
    for pos, prob in rows:
        if pos in seen:
            raise ValueError(f"duplicate row for position {pos}")
        seen[pos] = prob
    expected = set(support_positions(steps))
    if set(seen) != expected:
        missing = sorted(expected - set(seen))
        extra = sorted(set(seen) - expected)
        raise ValueError(
            f"rows must cover exactly the sites {sorted(expected)};"
            f" missing {missing}, unexpected {extra}"
        )
    for pos, prob in seen.items():
        if not math.isfinite(prob) or prob < 0.0:
            raise ValueError(f"probability at position {pos} is {prob}, outside [0, 1]")
    total = math.fsum(seen.values())
    if abs(total - 1.0) > LOAD_SUM_TOL:
        raise ValueError(f"probabilities sum to {total!r}; expected 1 within {LOAD_SUM_TOL}")
    return Distribution(steps, {pos: prob / total for pos, prob in seen.items()})


def load_target_auto(text: str) -> Distribution:
    """Like :func:`load_target`, inferring the walk length from the rows."""
    rows = _parse_rows(text)
    steps = max(abs(pos) for pos, _ in rows)
    return load_target(text, steps)


def target_from_spec(spec: str, steps: int | None) -> Distribution:
    """Build a target from a compact text spec.

    Accepted forms: ``uniform``, ``gaussian:MU,SIGMA`` and ``file:PATH``.
    ``steps`` may be None only for ``file:`` specs, where it is inferred.
    """
    if spec == "uniform":
        if steps is None:
            raise ValueError("a uniform target needs the number of steps")
        return uniform_target(steps)
    if spec.startswith("gaussian:"):
        if steps is None:
            raise ValueError("a gaussian target needs the number of steps")
        body = spec[len("gaussian:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected gaussian:MU,SIGMA, got {spec!r}")
        try:
            mu, sigma = float(parts[0]), float(parts[1])
        except ValueError:
            raise ValueError(f"expected numeric MU,SIGMA in {spec!r}") from None
        return gaussian_target(steps, mu, sigma)
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        text = path.read_text(encoding="utf-8")
        if steps is None:
            return load_target_auto(text)
        return load_target(text, steps)
    raise ValueError(f"unknown target spec {spec!r} (use uniform, gaussian:MU,SIGMA or file:PATH)")
