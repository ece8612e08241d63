"""Thermal entropy, Gaussian state entropy, and the transmission rate."""

from dataclasses import dataclass

from . import kernels
from .channel import (
    ChannelParams,
    InputParams,
    modulation_covariance,
    output_covariance,
    squeezed_photons,
)
from .errors import DomainError
from .symplectic import BlockCovariance, SymplecticSpectrum, symplectic_eigenvalues


def g(x: float) -> float:
    """Entropy in bits of a thermal state with mean photon number x:
    (x+1)*log2(x+1) - x*log2(x), continuous at 0."""
    x = float(x)
    if x < -kernels.STATE_CLAMP_TOL:
        raise DomainError(f"mean photon number must be >= 0, got {x}")
    return kernels.g_scalar(max(x, 0.0))


def gaussian_entropy(cov: BlockCovariance) -> float:
    """Von Neumann entropy in bits of the Gaussian state with the given
    covariance: sum of g(|lambda_j| - 1/2) over the symplectic spectrum."""
    return entropy_of_spectrum(symplectic_eigenvalues(cov))


def entropy_of_spectrum(spectrum: SymplecticSpectrum) -> float:
    return float(sum(kernels.g_scalar(v - 0.5) for v in spectrum.values))


@dataclass(frozen=True)
class RateResult:
    """Transmission rate in bits per use with its two output spectra and the
    parameters that produced it."""

    rate: float
    avg_spectrum: SymplecticSpectrum
    out_spectrum: SymplecticSpectrum
    channel: ChannelParams
    input: InputParams
    squeezed_photons: float


def transmission_rate(channel: ChannelParams, input_params: InputParams) -> RateResult:
    """Information transmitted per channel use, in bits: the entropy of the
    averaged output minus the entropy of an individual output, divided by
    the number of uses."""
    v_out = output_covariance(channel, input_params.squeezing)
    v_avg = v_out + modulation_covariance(channel.n, input_params)
    out_spectrum = symplectic_eigenvalues(v_out)
    avg_spectrum = symplectic_eigenvalues(v_avg)
    rate = (entropy_of_spectrum(avg_spectrum) - entropy_of_spectrum(out_spectrum)) / channel.n
    return RateResult(
        rate=rate,
        avg_spectrum=avg_spectrum,
        out_spectrum=out_spectrum,
        channel=channel,
        input=input_params,
        squeezed_photons=squeezed_photons(channel.n, input_params.squeezing),
    )
