"""Spectral machinery for the nearest-neighbor coupling matrix and
block-diagonal covariances: analytic eigensystem, symmetric matrix
exponentials, and symplectic eigenvalue extraction.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, NonPhysicalCovarianceError

SYMMETRY_TOL = 1e-12


def coupling_matrix(n: int) -> np.ndarray:
    """The n x n symmetric tridiagonal matrix with zero diagonal and unit
    off-diagonal (the path-graph adjacency pattern shared by all coupling
    generators in this model)."""
    if n < 1:
        raise DomainError(f"number of modes must be >= 1, got {n}")
    t = np.zeros((n, n))
    idx = np.arange(n - 1)
    t[idx, idx + 1] = 1.0
    t[idx + 1, idx] = 1.0
    return t


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigensystem of a symmetric matrix: eigenvalues descending, eigenvector
    columns matched to them."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@lru_cache(maxsize=None)
def coupling_spectrum(n: int) -> SpectralDecomposition:
    """Analytic eigensystem of ``coupling_matrix(n)``.

    Eigenvalues are 2*cos(k*pi/(n+1)) for k = 1..n (descending); eigenvector
    components are sqrt(2/(n+1)) * sin(j*k*pi/(n+1)).
    """
    if n < 1:
        raise DomainError(f"number of modes must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    eigenvalues = 2.0 * np.cos(k * np.pi / (n + 1))
    j = np.arange(1, n + 1)
    eigenvectors = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(j, k) * np.pi / (n + 1))
    eigenvalues.flags.writeable = False
    eigenvectors.flags.writeable = False
    return SpectralDecomposition(eigenvalues, eigenvectors)


def sym_exp(decomp: SpectralDecomposition, scale: float) -> np.ndarray:
    """exp(scale * M) for the symmetric matrix with eigensystem ``decomp``."""
    return kernels.sym_exp_spectrum(decomp.eigenvalues, decomp.eigenvectors, float(scale))


def _check_symmetric(block: np.ndarray, name: str) -> np.ndarray:
    block = np.asarray(block, dtype=float)
    if block.ndim != 2 or block.shape[0] != block.shape[1]:
        raise DomainError(f"{name} must be a square matrix, got shape {block.shape}")
    scale = max(1.0, float(np.max(np.abs(block))) if block.size else 1.0)
    if float(np.max(np.abs(block - block.T))) > SYMMETRY_TOL * scale:
        raise DomainError(f"{name} is not symmetric within tolerance")
    return block


@dataclass(frozen=True)
class BlockCovariance:
    """A 2n x 2n covariance matrix that is block-diagonal in the
    (q_1..q_n, p_1..p_n) quadrature ordering, stored as its two n x n blocks."""

    q_block: np.ndarray
    p_block: np.ndarray

    def __post_init__(self):
        q = _check_symmetric(self.q_block, "q_block")
        p = _check_symmetric(self.p_block, "p_block")
        if q.shape != p.shape:
            raise DomainError("q_block and p_block must have the same shape")
        object.__setattr__(self, "q_block", q)
        object.__setattr__(self, "p_block", p)

    @property
    def n(self) -> int:
        return self.q_block.shape[0]

    def full(self) -> np.ndarray:
        """Assemble the 2n x 2n matrix diag(q_block, p_block)."""
        n = self.n
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = self.q_block
        out[n:, n:] = self.p_block
        return out

    def swapped(self) -> "BlockCovariance":
        """The covariance with q and p blocks exchanged."""
        return BlockCovariance(self.p_block, self.q_block)

    def __add__(self, other: "BlockCovariance") -> "BlockCovariance":
        return BlockCovariance(self.q_block + other.q_block, self.p_block + other.p_block)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """The n symplectic eigenvalues |lambda_j| of a physical covariance,
    descending. ``clamped`` counts values raised to 1/2 from roundoff."""

    values: np.ndarray
    clamped: int

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _finalize_state_spectrum(raw: np.ndarray) -> SymplecticSpectrum:
    # Values below 1/2 by less than STATE_CLAMP_TOL are roundoff; clamp them.
    values = np.sort(np.asarray(raw, dtype=float))[::-1].copy()
    low = values < 0.5
    bad = values < 0.5 - kernels.STATE_CLAMP_TOL
    if np.any(bad):
        raise NonPhysicalCovarianceError(
            f"symplectic value {values[bad][-1]:.6g} falls below 1/2 beyond tolerance"
        )
    values[low] = 0.5
    values.flags.writeable = False
    return SymplecticSpectrum(values, int(np.count_nonzero(low)))


def symplectic_eigenvalues(cov: BlockCovariance) -> SymplecticSpectrum:
    """Symplectic eigenvalues of a physical block-diagonal covariance.

    Computed as sqrt(eig(q_block @ p_block)) through the symmetric similar
    form sqrt(q) @ p @ sqrt(q).
    """
    try:
        raw = kernels.block_symplectic_values(cov.q_block, cov.p_block)
    except ValueError as exc:
        raise NonPhysicalCovarianceError(str(exc)) from None
    return _finalize_state_spectrum(raw)


def generic_symplectic_eigenvalues(cov: BlockCovariance) -> SymplecticSpectrum:
    """Independent oracle for :func:`symplectic_eigenvalues`: assembles the
    full 2n x 2n matrix and solves the characteristic problem of the
    symplectic form directly."""
    n = cov.n
    omega = np.zeros((2 * n, 2 * n))
    omega[:n, n:] = np.eye(n)
    omega[n:, :n] = -np.eye(n)
    # Eigenvalues of omega @ V come in pairs +/- i*lambda_j.
    ev = np.linalg.eigvals(omega @ cov.full())
    lam = np.sort(np.abs(ev))[::-1]
    return _finalize_state_spectrum(lam[0::2])
