"""Covariance assembly for the correlated-noise channel.

The channel adds classical Gaussian noise with `noise_photons` thermal
photons per mode; nearest-neighbor noise correlations of strength `memory`
are built from the path coupling matrix. Inputs are coherent states,
optionally entangled by a multimode squeezer of strength `squeezing` and
classically modulated with per-use correlation `correlation`, under a mean
photon budget per mode. The regulators epsilon and theta keep the noise and
modulation covariances positive when the respective photon numbers fall
below 1/2.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DomainError,
    InfeasibleCorrelationError,
    InfeasibleMemoryError,
    InfeasibleSqueezingError,
)
from .symplectic import BlockCovariance, coupling_spectrum

AUTO = "auto"


def default_epsilon(noise_photons: float) -> float:
    """Upper end of the allowed noise-regulator band: 1 when the argument is
    at least 1/2, else twice the argument."""
    if noise_photons < 0:
        raise DomainError(f"noise photons must be >= 0, got {noise_photons}")
    return 1.0 if noise_photons >= 0.5 else 2.0 * noise_photons


def default_theta(budget: float) -> float:
    """Upper end of the allowed modulation-regulator band (same rule)."""
    if budget < 0:
        raise DomainError(f"photon budget must be >= 0, got {budget}")
    return 1.0 if budget >= 0.5 else 2.0 * budget


@dataclass(frozen=True)
class ChannelParams:
    """Channel configuration: uses/modes, added thermal photons per mode,
    memory degree, and the positivity regulator epsilon."""

    n: int
    noise_photons: float
    memory: float
    epsilon: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"channel uses must be >= 1, got {self.n}")
        if self.noise_photons < 0:
            raise DomainError(f"noise photons must be >= 0, got {self.noise_photons}")
        if self.memory < 0:
            raise DomainError(f"memory degree must be >= 0, got {self.memory}")
        if self.noise_photons >= 0.5:
            if self.epsilon != 1.0:
                raise DomainError(
                    "epsilon must be 1 when noise photons >= 1/2, got "
                    f"{self.epsilon}"
                )
        elif not 0.0 <= self.epsilon <= 2.0 * self.noise_photons:
            raise DomainError(
                f"epsilon must lie in [0, {2.0 * self.noise_photons}] for "
                f"noise photons {self.noise_photons}, got {self.epsilon}"
            )

    @classmethod
    def create(cls, n, noise_photons, memory=0.0, epsilon=AUTO) -> "ChannelParams":
        """Build channel parameters, resolving ``epsilon="auto"`` to the
        default rule. Feasibility of `memory` is checked when the noise
        covariance is assembled."""
        if epsilon == AUTO:
            epsilon = default_epsilon(noise_photons)
        return cls(int(n), float(noise_photons), float(memory), float(epsilon))


@dataclass(frozen=True)
class InputParams:
    """Input ensemble configuration: photon budget per mode, squeezing
    strength, classical modulation correlation, and the regulator theta."""

    photon_budget: float
    squeezing: float
    correlation: float
    theta: float

    def __post_init__(self):
        if self.photon_budget < 0:
            raise DomainError(f"photon budget must be >= 0, got {self.photon_budget}")
        if self.squeezing < 0:
            raise DomainError(f"squeezing must be >= 0, got {self.squeezing}")
        if self.theta < 0:
            raise DomainError(f"theta must be >= 0, got {self.theta}")

    @classmethod
    def create(cls, n, photon_budget, squeezing=0.0, correlation=0.0, theta=AUTO) -> "InputParams":
        """Build input parameters for an n-use channel, resolving
        ``theta="auto"`` against the budget left after squeezing."""
        budget = residual_budget(int(n), float(photon_budget), float(squeezing))
        if theta == AUTO:
            theta = default_theta(budget)
        theta = float(theta)
        params = cls(float(photon_budget), float(squeezing), float(correlation), theta)
        check_theta_band(budget, theta)
        return params


def check_theta_band(budget: float, theta: float) -> None:
    """Raise unless theta is admissible for the given residual budget:
    exactly 1 when the budget is at least 1/2, within [0, 2*budget] below."""
    if budget >= 0.5:
        if theta != 1.0:
            raise DomainError(
                f"theta must be 1 when the residual budget ({budget:.6g}) is >= 1/2, "
                f"got {theta}"
            )
    elif theta > 2.0 * budget + kernels.DIAG_FEASIBILITY_TOL:
        raise DomainError(
            f"theta must lie in [0, {2.0 * budget:.6g}] for residual budget "
            f"{budget:.6g}, got {theta}"
        )


@dataclass(frozen=True)
class GaussianState:
    """Mean vector (length 2n, q-then-p ordering) and covariance of a
    Gaussian state. The mean never enters entropies; it exists for the
    Monte Carlo machinery."""

    mean: np.ndarray
    cov: BlockCovariance

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        if mean.shape != (2 * self.cov.n,):
            raise DomainError(
                f"mean must have length {2 * self.cov.n}, got shape {mean.shape}"
            )
        object.__setattr__(self, "mean", mean)


def input_covariance(n: int, squeezing: float) -> BlockCovariance:
    """Covariance of the pure multimode-squeezed input: blocks
    exp(-r*T)/2 and exp(+r*T)/2 for squeezing strength r."""
    if squeezing < 0:
        raise DomainError(f"squeezing must be >= 0, got {squeezing}")
    d = coupling_spectrum(n)
    q, p = kernels.input_blocks(d.eigenvalues, d.eigenvectors, float(squeezing))
    return BlockCovariance(q, p)


def squeezed_photons(n: int, squeezing: float) -> float:
    """Mean photons per mode consumed by squeezing strength r:
    (sum_k cosh(r*mu_k) - n) / (2n) over the coupling spectrum."""
    if squeezing < 0:
        raise DomainError(f"squeezing must be >= 0, got {squeezing}")
    d = coupling_spectrum(n)
    return float(kernels.squeezed_photons_from_spectrum(d.eigenvalues, float(squeezing)))


def residual_budget(n: int, photon_budget: float, squeezing: float) -> float:
    """Photon budget per mode left for classical modulation after squeezing.

    Raises when squeezing overconsumes the budget; a deficit within roundoff
    tolerance is clamped to zero.
    """
    budget = photon_budget - squeezed_photons(n, squeezing)
    if budget < -kernels.DIAG_FEASIBILITY_TOL:
        raise InfeasibleSqueezingError(
            f"squeezing {squeezing:.6g} consumes {photon_budget - budget:.6g} "
            f"photons/mode, exceeding the budget {photon_budget:.6g}"
        )
    return max(budget, 0.0)


def noise_covariance(params: ChannelParams) -> BlockCovariance:
    """Covariance of the added classical noise.

    Nearest-neighbor correlations enter through exp(-s*T)/2 on the q block
    and exp(+s*T)/2 on the p block, scaled by epsilon; a diagonal
    compensation pins every diagonal entry to `noise_photons`.
    """
    d = coupling_spectrum(params.n)
    q, p, slack = kernels.regulated_blocks(
        d.eigenvalues, d.eigenvectors, params.noise_photons, params.epsilon, -params.memory
    )
    if slack < -kernels.DIAG_FEASIBILITY_TOL:
        raise InfeasibleMemoryError(
            f"memory degree {params.memory:.6g} drives a diagonal compensation "
            f"entry of the noise covariance to {slack:.3g} < 0 "
            f"(noise photons {params.noise_photons:.6g}, epsilon {params.epsilon:.6g})"
        )
    return BlockCovariance(q, p)


def noise_diag_slack(params: ChannelParams) -> float:
    """Most negative diagonal compensation entry of the noise covariance;
    nonnegative (within roundoff) iff the memory degree is feasible."""
    d = coupling_spectrum(params.n)
    return float(
        kernels.regulated_blocks(
            d.eigenvalues, d.eigenvectors, params.noise_photons, params.epsilon, -params.memory
        )[2]
    )


def modulation_covariance(n: int, input_params: InputParams) -> BlockCovariance:
    """Covariance of the classical modulation.

    Same construction as the noise covariance with the correlation sign
    flipped: exp(+y*T)/2 on the q block, exp(-y*T)/2 on the p block, scaled
    by theta, diagonal pinned to the residual budget.
    """
    budget = residual_budget(n, input_params.photon_budget, input_params.squeezing)
    check_theta_band(budget, input_params.theta)
    d = coupling_spectrum(n)
    q, p, slack = kernels.regulated_blocks(
        d.eigenvalues, d.eigenvectors, budget, input_params.theta, input_params.correlation
    )
    if slack < -kernels.DIAG_FEASIBILITY_TOL:
        raise InfeasibleCorrelationError(
            f"correlation {input_params.correlation:.6g} drives a diagonal "
            f"compensation entry of the modulation covariance to {slack:.3g} < 0 "
            f"(residual budget {budget:.6g}, theta {input_params.theta:.6g})"
        )
    return BlockCovariance(q, p)


def modulation_diag_slack(n: int, input_params: InputParams) -> float:
    """Most negative diagonal compensation entry of the modulation covariance."""
    budget = residual_budget(n, input_params.photon_budget, input_params.squeezing)
    d = coupling_spectrum(n)
    return float(
        kernels.regulated_blocks(
            d.eigenvalues, d.eigenvectors, budget, input_params.theta, input_params.correlation
        )[2]
    )


def output_covariance(channel: ChannelParams, squeezing: float) -> BlockCovariance:
    """Covariance of an individual channel output: input plus noise."""
    return input_covariance(channel.n, squeezing) + noise_covariance(channel)


def averaged_output_covariance(channel: ChannelParams, input_params: InputParams) -> BlockCovariance:
    """Covariance of the modulation-averaged channel output."""
    return output_covariance(channel, input_params.squeezing) + modulation_covariance(
        channel.n, input_params
    )
