"""Seeded Monte Carlo oracle for coefficient tail probabilities.

Sampling is vectorized: a batch of sample pairs is drawn as (size, n)
normal arrays and reduced row-wise to coefficients.  A master seed is
split into independent per-partition streams with numpy's SeedSequence
spawning, and the tail estimate is the aggregated count over partitions.
Determinism contract: (seed, partitions) fixes the estimate exactly, no
matter how many worker threads execute the partitions, because each
partition owns its stream and the aggregation is an order-independent sum
of counts.

Plain Monte Carlo is sample-bound: tail probabilities much below 1e-7 are
out of reach of realistic budgets here (no importance sampling / tilting
is implemented).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .scenarios import Model, Scenario

__all__ = ["McEstimate", "sample_coefficient", "sample_batch", "tail_mc"]

# rows per vectorized chunk, sized to keep the (rows, n) scratch arrays
# in the tens of megabytes
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class McEstimate:
    """Binomial tail estimate: p_hat +- std_err from ``samples`` draws."""

    p_hat: float
    std_err: float
    samples: int
    seed: int


def sample_batch(s: Scenario, n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw ``size`` independent coefficients under scenario ``s``.

    The spherical model draws standard normal vectors (one representative
    of the spherical family; the coefficient's law is the same for all of
    them) with an independent normal partner.  The Gaussian model draws
    (X, rho X + sqrt(1-rho^2) Z) pairs.  Centered variants subtract sample
    means; known-mean variants subtract the true means (zero here).
    """
    if n < 5:
        raise DomainError(f"sample size must be >= 5, got {n}")
    x = rng.standard_normal((size, n))
    z = rng.standard_normal((size, n))
    if s.model is Model.GAUSSIAN_CENTERED:
        y = s.rho * x + math.sqrt(1.0 - s.rho * s.rho) * z
    else:
        y = z
    if not s.known_mean:
        x = x - x.mean(axis=1, keepdims=True)
        y = y - y.mean(axis=1, keepdims=True)
    sx = np.einsum("ij,ij->i", x, x)
    sy = np.einsum("ij,ij->i", y, y)
    sxy = np.einsum("ij,ij->i", x, y)
    denom_sq = sx * sy
    bad = denom_sq <= 0.0
    if np.any(bad):  # probability-zero degeneracy; redraw those rows
        redraw = sample_batch(s, n, rng, int(bad.sum()))
        out = sxy / np.sqrt(np.where(bad, 1.0, denom_sq))
        out[bad] = redraw
        return out
    return sxy / np.sqrt(denom_sq)


def sample_coefficient(s: Scenario, n: int, rng: np.random.Generator) -> float:
    """One draw of the coefficient under scenario ``s``."""
    return float(sample_batch(s, n, rng, 1)[0])


def _partition_count(s: Scenario, n: int, c: float, quota: int, seed_seq) -> int:
    rng = np.random.default_rng(seed_seq)
    rows = max(1, _CHUNK_ELEMENTS // n)
    remaining = quota
    count = 0
    while remaining > 0:
        take = min(rows, remaining)
        count += int(np.count_nonzero(sample_batch(s, n, rng, take) >= c))
        remaining -= take
    return count


def tail_mc(
    s: Scenario,
    n: int,
    c: float,
    samples: int,
    seed: int,
    *,
    partitions: int = 1,
    threads: int = 1,
) -> McEstimate:
    """Estimate P(coefficient >= c) from ``samples`` seeded draws.

    ``samples`` are spread over ``partitions`` independent streams spawned
    from ``seed``; ``threads`` only sets how many partitions run
    concurrently and never affects the estimate.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if partitions < 1 or partitions > samples:
        raise DomainError(f"partitions must be in [1, samples], got {partitions}")
    quotas = [samples // partitions] * partitions
    for i in range(samples % partitions):
        quotas[i] += 1
    children = np.random.SeedSequence(seed).spawn(partitions)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(
                pool.map(lambda args: _partition_count(s, n, c, *args), zip(quotas, children))
            )
    else:
        counts = [_partition_count(s, n, c, q, ss) for q, ss in zip(quotas, children)]

    hits = sum(counts)
    p_hat = hits / samples
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return McEstimate(p_hat, std_err, samples, seed)
