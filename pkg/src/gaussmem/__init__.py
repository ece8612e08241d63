"""Classical information rates of bosonic Gaussian channels whose additive
classical noise carries nearest-neighbor correlations across uses.

Covariances are block-diagonal in the (q_1..q_n, p_1..p_n) quadrature
ordering throughout; entropies are in bits.
"""

__version__ = "0.1.0"

from ._backend import active_backend
from .channel import (
    ChannelParams,
    GaussianState,
    InputParams,
    averaged_output_covariance,
    default_epsilon,
    default_theta,
    input_covariance,
    modulation_covariance,
    noise_covariance,
    output_covariance,
    residual_budget,
    squeezed_photons,
)
from .entropy import RateResult, g, gaussian_entropy, transmission_rate
from .errors import (
    DomainError,
    EmptyFeasibleRegionError,
    GaussmemError,
    InfeasibleCorrelationError,
    InfeasibleMemoryError,
    InfeasibleParametersError,
    InfeasibleSqueezingError,
    NonPhysicalCovarianceError,
)
from .montecarlo import (
    SampleBatch,
    estimate_output_covariance,
    sample_correlated_gaussian,
    sample_output_displacements,
)
from .optimize import (
    FeasibleRegion,
    SweepPoint,
    SweepResult,
    feasible_region,
    max_over_ry,
    max_over_y,
    sweep_n,
    sweep_r,
)
from .symplectic import (
    BlockCovariance,
    SpectralDecomposition,
    SymplecticSpectrum,
    coupling_matrix,
    coupling_spectrum,
    generic_symplectic_eigenvalues,
    sym_exp,
    symplectic_eigenvalues,
)

__all__ = [
    "__version__",
    "active_backend",
    "ChannelParams",
    "GaussianState",
    "InputParams",
    "averaged_output_covariance",
    "default_epsilon",
    "default_theta",
    "input_covariance",
    "modulation_covariance",
    "noise_covariance",
    "output_covariance",
    "residual_budget",
    "squeezed_photons",
    "RateResult",
    "g",
    "gaussian_entropy",
    "transmission_rate",
    "DomainError",
    "EmptyFeasibleRegionError",
    "GaussmemError",
    "InfeasibleCorrelationError",
    "InfeasibleMemoryError",
    "InfeasibleParametersError",
    "InfeasibleSqueezingError",
    "NonPhysicalCovarianceError",
    "SampleBatch",
    "estimate_output_covariance",
    "sample_correlated_gaussian",
    "sample_output_displacements",
    "FeasibleRegion",
    "SweepPoint",
    "SweepResult",
    "feasible_region",
    "max_over_ry",
    "max_over_y",
    "sweep_n",
    "sweep_r",
    "BlockCovariance",
    "SpectralDecomposition",
    "SymplecticSpectrum",
    "coupling_matrix",
    "coupling_spectrum",
    "generic_symplectic_eigenvalues",
    "sym_exp",
    "symplectic_eigenvalues",
]
