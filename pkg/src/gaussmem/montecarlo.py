"""Monte Carlo validation of the covariance assembly.

Displacements are sampled from the classical Gaussian distributions the
channel model prescribes (noise covariance, modulation covariance) and added
to quadrature draws of the squeezed input state; the empirical covariance of
the sums must reproduce the analytic output covariances.

Sampling is chunked into independent streams spawned deterministically from
the seed, and chunk results are combined in a fixed order, so a batch is a
pure function of (covariance, count, seed) regardless of how the chunks
would be scheduled.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import ChannelParams, InputParams, input_covariance, modulation_covariance, noise_covariance
from .errors import DomainError, NonPhysicalCovarianceError
from .symplectic import BlockCovariance

GENERATOR_NAME = "numpy.random.PCG64"
CHUNK_SIZE = 65536


@dataclass(frozen=True)
class SampleBatch:
    """A reproducible batch of phase-space displacement samples."""

    count: int
    seed: int
    samples: np.ndarray  # (count, 2n)
    generator: str = GENERATOR_NAME


def _spectral_factor(cov: BlockCovariance) -> np.ndarray:
    """L with L @ L.T equal to the full covariance; handles PSD rank
    deficiency by zeroing roundoff-negative eigenvalues."""
    full = cov.full()
    w, v = np.linalg.eigh(full)
    if np.any(w < -kernels.PSD_CLAMP_TOL * max(1.0, float(np.max(np.abs(w))))):
        raise NonPhysicalCovarianceError(
            "cannot sample: covariance is not positive semidefinite"
        )
    return v * np.sqrt(np.clip(w, 0.0, None))


def _sample(factor: np.ndarray, count: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    dim = factor.shape[0]
    out = np.empty((count, dim))
    n_chunks = (count + CHUNK_SIZE - 1) // CHUNK_SIZE
    children = seed_seq.spawn(n_chunks) if n_chunks else []
    start = 0
    for child in children:
        stop = min(start + CHUNK_SIZE, count)
        rng = np.random.default_rng(child)
        z = rng.standard_normal((stop - start, dim))
        out[start:stop] = z @ factor.T
        start = stop
    return out


def sample_correlated_gaussian(cov: BlockCovariance, count: int, seed: int) -> SampleBatch:
    """Draw ``count`` zero-mean Gaussian vectors with the given block-diagonal
    covariance, reproducibly from ``seed``."""
    if count < 1:
        raise DomainError(f"sample count must be >= 1, got {count}")
    factor = _spectral_factor(cov)
    samples = _sample(factor, int(count), np.random.SeedSequence(int(seed)))
    return SampleBatch(count=int(count), seed=int(seed), samples=samples)


def sample_output_displacements(
    channel: ChannelParams,
    input_params: InputParams,
    count: int,
    seed: int,
    include_modulation: bool = True,
) -> SampleBatch:
    """Quadrature samples of channel outputs: input-state draws plus noise
    displacements, plus modulation displacements when enabled.

    Three independent sub-streams are spawned from ``seed``, one per
    displacement source.
    """
    if count < 1:
        raise DomainError(f"sample count must be >= 1, got {count}")
    count = int(count)
    children = np.random.SeedSequence(int(seed)).spawn(3)
    total = _sample(
        _spectral_factor(input_covariance(channel.n, input_params.squeezing)),
        count,
        children[0],
    )
    total += _sample(_spectral_factor(noise_covariance(channel)), count, children[1])
    if include_modulation:
        total += _sample(
            _spectral_factor(modulation_covariance(channel.n, input_params)),
            count,
            children[2],
        )
    return SampleBatch(count=count, seed=int(seed), samples=total)


def empirical_covariance(batch: SampleBatch) -> np.ndarray:
    """Unbiased empirical covariance (2n x 2n) of a sample batch."""
    return np.cov(batch.samples, rowvar=False, ddof=1)


def estimate_output_covariance(
    channel: ChannelParams,
    input_params: InputParams,
    count: int,
    seed: int,
    include_modulation: bool = True,
) -> BlockCovariance:
    """Monte Carlo estimate of the (averaged) output covariance blocks."""
    batch = sample_output_displacements(channel, input_params, count, seed, include_modulation)
    full = empirical_covariance(batch)
    n = channel.n
    q = 0.5 * (full[:n, :n] + full[:n, :n].T)
    p = 0.5 * (full[n:, n:] + full[n:, n:].T)
    return BlockCovariance(q, p)


def covariance_standard_errors(analytic_full: np.ndarray, count: int) -> np.ndarray:
    """Entrywise standard errors of an empirical Gaussian covariance with the
    given analytic covariance: sqrt((V_ii V_jj + V_ij^2) / count)."""
    d = np.diag(analytic_full)
    return np.sqrt((np.outer(d, d) + analytic_full**2) / count)


def random_physical_covariance(n: int, rng: np.random.Generator) -> BlockCovariance:
    """A random physical block-diagonal covariance: thermal occupations
    squeezed by a random symmetric generator, optionally with classical
    noise added. All symplectic eigenvalues are >= 1/2 by construction."""
    m = rng.standard_normal((n, n))
    m = 0.3 * (m + m.T) / 2.0
    w, v = np.linalg.eigh(m)
    e_plus = (v * np.exp(w)) @ v.T
    e_minus = (v * np.exp(-w)) @ v.T
    nu = np.diag(0.5 + rng.uniform(0.0, 2.0, size=n))
    q = e_plus @ nu @ e_plus
    p = e_minus @ nu @ e_minus
    if rng.uniform() < 0.5:
        a = rng.standard_normal((n, n))
        b = rng.standard_normal((n, n))
        q = q + 0.2 * (a @ a.T)
        p = p + 0.2 * (b @ b.T)
    return BlockCovariance(0.5 * (q + q.T), 0.5 * (p + p.T))
