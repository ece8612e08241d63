"""Shared fixtures, frozen oracle values, and independent reference
implementations used across the test suite."""

import numpy as np
import pytest

# ---------------------------------------------------------------------------
# Frozen high-precision reference values, computed once with mpmath (40
# significant digits) from the defining formulas and rounded to float64:
#   thermal_entropy(x) = (x+1)*log2(x+1) - x*log2(x)
#   G_TWO_THIRDS   = thermal_entropy(2/3)
#   G_EIGHT_THIRDS = thermal_entropy(8/3)
#   MEMORYLESS_RATE = G_EIGHT_THIRDS - G_TWO_THIRDS
# and arccosh values for the closed-form feasibility bounds.
# test_entropy.py re-derives the entropy values with mpmath at runtime.
# ---------------------------------------------------------------------------
G_TWO_THIRDS = 1.618250990757781065
G_EIGHT_THIRDS = 3.0996201009489337579
MEMORYLESS_RATE = 1.4813691101911526929
ARCCOSH_4_3 = 0.79536546122390563053  # largest memory degree, n=2, N=2/3, eps=1
ARCCOSH_4 = 2.0634370688955605467  # largest |y|, n=2, budget=2, theta=1
ARCCOSH_5 = 2.2924316695611776878  # largest r, n=2, budget=2
SQUEEZED_N2_R05 = 0.063812982603190392613  # (2*cosh(0.5) - 2) / 4
SQUEEZED_N3_R05 = 0.086863945507118706492  # (2*cosh(sqrt(2)/2) + 1 - 3) / 6

FIG_NOISE = 2.0 / 3.0
FIG_BUDGET = 2.0


def expm_series(m: np.ndarray, terms: int = 40) -> np.ndarray:
    """Power-series matrix exponential with scaling and squaring; independent
    of the spectral route used by the package."""
    m = np.asarray(m, dtype=float)
    norm = np.max(np.abs(m))
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300))))) + 1 if norm > 0.5 else 0
    a = m / (2.0**squarings)
    result = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms + 1):
        term = term @ a / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def brute_force_tridiagonal(n: int) -> np.ndarray:
    """Explicit zero-diagonal, unit-off-diagonal symmetric tridiagonal matrix."""
    t = np.zeros((n, n))
    for j in range(n - 1):
        t[j, j + 1] = 1.0
        t[j + 1, j] = 1.0
    return t


@pytest.fixture(scope="session")
def warm_kernels():
    from gaussmem import kernels

    kernels.warmup()
    return None
