"""Hot numeric kernels shared by the public modules.

Every function here is written in the numba-compatible subset of numpy and
is JIT-compiled when the numba backend is active (see :mod:`gaussmem._backend`).
The pure-numpy fallback runs the identical source. Kernels assume float64
inputs and do no argument validation beyond the roundoff clamps below;
callers validate and translate kernel errors into the public exceptions.
"""

import math

import numpy as np

from ._backend import jit_if_enabled

LN2 = math.log(2.0)

# Eigenvalues of a PSD matrix in (-PSD_CLAMP_TOL, 0) are treated as roundoff
# zeros; anything more negative is a real violation.
PSD_CLAMP_TOL = 1e-10
# Symplectic values of a state may fall below 1/2 by at most this much.
STATE_CLAMP_TOL = 1e-9
# Diagonal compensation entries of the noise/modulation covariances may be
# negative by at most this much (boundary points must survive roundoff).
DIAG_FEASIBILITY_TOL = 1e-12


@jit_if_enabled
def g_scalar(x):
    # Thermal-state entropy in bits for mean photon number x; the log1p form
    # keeps (x+1)*log2(x+1) accurate for small x, and x*log2(x) -> 0.
    if x < 1e-12:
        return 0.0
    return ((x + 1.0) * math.log1p(x) - x * math.log(x)) / LN2


@jit_if_enabled
def sym_exp_spectrum(mu, basis, scale):
    # exp(scale*T) for the symmetric matrix T with eigensystem (mu, basis).
    if scale == 0.0:
        return np.eye(mu.shape[0])
    return (basis * np.exp(scale * mu)) @ basis.T


@jit_if_enabled
def sym_sqrt_psd(a):
    # Principal square root of a symmetric PSD matrix via eigh, clamping
    # roundoff-negative eigenvalues.
    w, v = np.linalg.eigh(a)
    for i in range(w.shape[0]):
        if w[i] < 0.0:
            if w[i] < -PSD_CLAMP_TOL:
                raise ValueError("matrix is not positive semidefinite")
            w[i] = 0.0
    return (v * np.sqrt(w)) @ v.T


@jit_if_enabled
def block_symplectic_values(a, b):
    # Symplectic values of the block-diagonal covariance diag(a, b): the
    # square roots of eig(a @ b), obtained from the symmetric similar form
    # sqrt(a) @ b @ sqrt(a). Returned descending.
    ra = sym_sqrt_psd(a)
    w = np.linalg.eigvalsh(ra @ b @ ra)
    n = w.shape[0]
    out = np.empty(n)
    for i in range(n):
        wi = w[n - 1 - i]  # eigvalsh is ascending
        if wi < 0.0:
            if wi < -PSD_CLAMP_TOL:
                raise ValueError("matrix is not positive semidefinite")
            wi = 0.0
        out[i] = math.sqrt(wi)
    return out


@jit_if_enabled
def entropy_from_values(values):
    # State entropy in bits from symplectic values; values may dip below 1/2
    # by roundoff only.
    total = 0.0
    for i in range(values.shape[0]):
        x = values[i] - 0.5
        if x < 0.0:
            if x < -STATE_CLAMP_TOL:
                raise ValueError("symplectic value below 1/2: not a physical state")
            x = 0.0
        total += g_scalar(x)
    return total


@jit_if_enabled
def state_entropy(a, b):
    return entropy_from_values(block_symplectic_values(a, b))


@jit_if_enabled
def squeezed_photons_from_spectrum(mu, r):
    # Mean photons per mode consumed by the squeezing operation of strength r.
    n = mu.shape[0]
    total = 0.0
    for i in range(n):
        total += math.cosh(r * mu[i])
    return (total - n) / (2.0 * n)


@jit_if_enabled
def input_blocks(mu, basis, r):
    # Covariance blocks of the pure multimode-squeezed input.
    aq = sym_exp_spectrum(mu, basis, -r) * 0.5
    ap = sym_exp_spectrum(mu, basis, r) * 0.5
    return aq, ap


@jit_if_enabled
def regulated_blocks(mu, basis, level, regulator, q_scale):
    # Classical covariance with every diagonal entry equal to `level`:
    #   M = D + regulator * M2,  M2 = (exp(q_scale*T)/2, exp(-q_scale*T)/2)
    # with D diagonal compensating M2's diagonal. Returns (q, p, slack) where
    # slack is the most negative compensation entry before clamping; the
    # caller decides whether slack < -tol is an error.
    m2q = sym_exp_spectrum(mu, basis, q_scale) * 0.5
    m2p = sym_exp_spectrum(mu, basis, -q_scale) * 0.5
    n = mu.shape[0]
    q = regulator * m2q
    p = regulator * m2p
    slack = np.inf
    for j in range(n):
        dq = level - regulator * m2q[j, j]
        dp = level - regulator * m2p[j, j]
        if dq < slack:
            slack = dq
        if dp < slack:
            slack = dp
        q[j, j] += max(dq, 0.0)
        p[j, j] += max(dp, 0.0)
    return q, p, slack


@jit_if_enabled
def output_stage(mu, basis, noise_q, noise_p, r):
    # Individual-output covariance blocks and entropy for squeezing r;
    # fixed while the modulation correlation is being searched.
    iq, ip = input_blocks(mu, basis, r)
    aout = iq + noise_q
    bout = ip + noise_p
    return aout, bout, state_entropy(aout, bout)


@jit_if_enabled
def averaged_entropy(aout, bout, mu, basis, budget, theta, y):
    # Entropy of the ensemble-averaged output; NaN signals an infeasible y.
    kq, kp, slack = regulated_blocks(mu, basis, budget, theta, y)
    if slack < -DIAG_FEASIBILITY_TOL:
        return np.nan
    return state_entropy(aout + kq, bout + kp)


@jit_if_enabled
def rate_eval(mu, basis, noise_photons, memory, epsilon, photon_budget, r, y, theta):
    # Transmission rate in bits per use; theta < 0 selects the default rule.
    # NaN signals an infeasible parameter combination.
    n = mu.shape[0]
    noise_q, noise_p, nslack = regulated_blocks(mu, basis, noise_photons, epsilon, -memory)
    if nslack < -DIAG_FEASIBILITY_TOL:
        return np.nan
    budget = photon_budget - squeezed_photons_from_spectrum(mu, r)
    if budget < -DIAG_FEASIBILITY_TOL:
        return np.nan
    if budget < 0.0:
        budget = 0.0
    if theta < 0.0:
        theta = 1.0 if budget >= 0.5 else 2.0 * budget
    aout, bout, s_out = output_stage(mu, basis, noise_q, noise_p, r)
    s_avg = averaged_entropy(aout, bout, mu, basis, budget, theta, y)
    return (s_avg - s_out) / n


def warmup(n: int = 2) -> None:
    """Force compilation of the full kernel call tree (no-op on numpy backend)."""
    k = np.arange(1, n + 1)
    mu = 2.0 * np.cos(k * np.pi / (n + 1))
    j = np.arange(1, n + 1)
    basis = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(j, k) * np.pi / (n + 1))
    rate_eval(mu, basis, 2.0 / 3.0, 0.1, 1.0, 2.0, 0.1, 0.1, -1.0)
