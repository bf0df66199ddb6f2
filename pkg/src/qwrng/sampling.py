"""Seeded sampling of walk outcomes and their fixed-width bit encoding.

Outcomes are indices into the ascending support of the source distribution:
index ``i`` stands for lattice position ``-steps + 2*i``.  Draws come from
inverse-CDF lookup (binary search on the cumulative array) driven by a
PCG64 generator, so a (distribution, seed, count) triple always reproduces
the same stream, on any platform.  The streams are deterministic stand-ins
for a physical detection record, not a source of true entropy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .walk import Distribution, support_positions

_MAX_SEED = 2**64


def bit_width(n_outcomes: int) -> int:
    """Bits needed for a fixed-width encoding of indices 0..n_outcomes-1."""
    if n_outcomes < 1:
        raise ValueError(f"need at least one outcome, got {n_outcomes}")
    return (n_outcomes - 1).bit_length()


@dataclass
class SamplerState:
    """Inverse-CDF sampler over one distribution.

    Mutable and single-owner: every :func:`draw` advances ``rng``.  Build
    independent samplers (distinct seeds) for concurrent use.
    """

    positions: np.ndarray
    cdf: np.ndarray
    seed: int
    rng: np.random.Generator = field(repr=False)


@dataclass
class SampleStream:
    """A batch of drawn outcome indices plus its encoding geometry."""

    outcomes: np.ndarray
    n_outcomes: int

    @property
    def count(self) -> int:
        return int(self.outcomes.size)

    @property
    def width(self) -> int:
        return bit_width(self.n_outcomes)

    def positions(self, steps: int) -> np.ndarray:
        """Translate outcome indices to lattice positions."""
        return -steps + 2 * self.outcomes


def build_sampler(dist: Distribution, seed: int) -> SamplerState:
    """Prepare a deterministic sampler for a distribution.

    The cumulative array is normalized by its final entry, which therefore
    equals 1.0 exactly and guarantees every uniform draw lands in range.
    """
    if not (0 <= seed < _MAX_SEED):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    cdf = np.cumsum(dist.as_array())
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    return SamplerState(
        positions=np.array(dist.support(), dtype=np.int64),
        cdf=cdf,
        seed=int(seed),
        rng=np.random.Generator(np.random.PCG64(seed)),
    )


def draw(sampler: SamplerState, count: int) -> SampleStream:
    """Draw ``count`` outcome indices, advancing the sampler state."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    u = sampler.rng.random(count)
    idx = np.searchsorted(sampler.cdf, u, side="right").astype(np.int64)
    return SampleStream(outcomes=idx, n_outcomes=int(sampler.cdf.size))


def encode_bits(stream: SampleStream | np.ndarray, n_outcomes: int) -> np.ndarray:
    """Concatenate each index as a big-endian fixed-width bit field.

    The width is ``ceil(log2(n_outcomes))`` bits.  Individual bits are only
    unbiased when the source distribution is uniform over a power-of-two
    number of outcomes; for other supports the stream is still a faithful
    encoding but the bit marginals inherit the outcome bias.
    """
    outcomes = np.asarray(getattr(stream, "outcomes", stream), dtype=np.int64)
    if outcomes.size and (outcomes.min() < 0 or outcomes.max() >= n_outcomes):
        bad = outcomes[(outcomes < 0) | (outcomes >= n_outcomes)][0]
        raise ValueError(f"outcome index {bad} outside [0, {n_outcomes - 1}]")
    width = bit_width(n_outcomes)
    if width == 0:
        return np.zeros(0, dtype=np.uint8)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((outcomes[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def bits_to_indices(bits: np.ndarray, width: int) -> np.ndarray:
    """Regroup a flat bit array into integers of the given field width."""
    bits = np.asarray(bits, dtype=np.uint8)
    if width < 1:
        if bits.size:
            raise ValueError("zero-width encoding cannot carry bits")
        return np.zeros(0, dtype=np.int64)
    if bits.size % width:
        raise ValueError(f"bit count {bits.size} is not a multiple of the width {width}")
    weights = (1 << np.arange(width - 1, -1, -1, dtype=np.int64))
    return bits.reshape(-1, width).astype(np.int64) @ weights


def decode_bits(bits: np.ndarray, n_outcomes: int) -> np.ndarray:
    """Invert :func:`encode_bits` at the fixed width for ``n_outcomes``."""
    idx = bits_to_indices(bits, bit_width(n_outcomes))
    if idx.size and idx.max() >= n_outcomes:
        raise ValueError(f"decoded index {idx.max()} outside [0, {n_outcomes - 1}]")
    return idx


def pack_bits(bits: np.ndarray) -> tuple[bytes, int]:
    """Pack a bit array into bytes (emission order, zero-padded final byte).

    Returns the buffer and the number of padding bits appended.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    padding = (-bits.size) % 8
    return np.packbits(bits).tobytes(), int(padding)


def unpack_bits(buf: bytes, padding_bits: int) -> np.ndarray:
    """Invert :func:`pack_bits`."""
    if not (0 <= padding_bits < 8):
        raise ValueError(f"padding must be 0..7 bits, got {padding_bits}")
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8))
    if padding_bits > bits.size:
        raise ValueError("padding exceeds the stored bit count")
    return bits[: bits.size - padding_bits]


def counts_by_position(outcomes: np.ndarray, steps: int) -> dict[int, int]:
    """Tally outcome indices into counts per lattice position."""
    outcomes = np.asarray(outcomes, dtype=np.int64)
    sites = support_positions(steps)
    if outcomes.size and (outcomes.min() < 0 or outcomes.max() >= len(sites)):
        raise ValueError(f"outcome indices must lie in [0, {len(sites) - 1}]")
    counts = np.bincount(outcomes, minlength=len(sites))
    return {m: int(c) for m, c in zip(sites, counts)}


def empirical_distribution(outcomes: np.ndarray, steps: int) -> Distribution:
    """Relative frequencies of a stream as a distribution on the support."""
    counts = counts_by_position(outcomes, steps)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("cannot build an empirical distribution from zero samples")
    return Distribution(steps, {m: c / total for m, c in counts.items()})
