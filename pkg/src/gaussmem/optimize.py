"""Feasible-region bounds and constrained maximization of the transmission
rate over the modulation correlation y and the squeezing strength r.

The rate is observed unimodal in each search variable for this model
family, so each 1-d maximization runs a bracketing grid followed by
golden-section refinement; the refined value is never allowed to fall
below the best grid point. All routines are deterministic for fixed grid
settings. Grid-point evaluations are independent pure computations; the
argmax reduction breaks ties toward smaller r, then smaller |y|, then
negative y.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .channel import (
    AUTO,
    ChannelParams,
    InputParams,
    check_theta_band,
    default_theta,
    noise_covariance,
    squeezed_photons,
)
from .entropy import RateResult, transmission_rate
from .errors import EmptyFeasibleRegionError, GaussmemError, InfeasibleParametersError
from .symplectic import coupling_spectrum

BISECTION_TOL = 1e-10
# Doubling cap for constraint bracketing; far beyond any physically sensible
# bound and still safe from exp overflow.
BRACKET_CAP = 350.0

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _bisect_largest(slack: Callable[[float], float], tol: float = BISECTION_TOL) -> float:
    """Largest x >= 0 with slack(x) >= 0, for slack nonincreasing in x.

    Returns inf when the constraint never binds below the bracketing cap.
    """
    if slack(0.0) < -kernels.DIAG_FEASIBILITY_TOL:
        raise EmptyFeasibleRegionError("constraint violated even at the origin")
    hi = 1.0
    while slack(hi) >= 0.0:
        hi *= 2.0
        if hi > BRACKET_CAP:
            return math.inf
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if slack(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float):
    """Golden-section maximization of a unimodal f on [a, b]; returns (x, f(x))."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(500):
        if b - a <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    if fc > fd:
        return c, fc
    return d, fd


class _Evaluator:
    """Precomputed noise blocks and staged rate evaluation for one channel.

    The individual-output covariance depends on r only, so it is built once
    per r and reused across the y search.
    """

    def __init__(self, channel: ChannelParams, photon_budget: float, theta=AUTO):
        if photon_budget < 0:
            raise InfeasibleParametersError(
                f"photon budget must be >= 0, got {photon_budget}"
            )
        self.channel = channel
        self.photon_budget = float(photon_budget)
        self.theta_policy = theta
        d = coupling_spectrum(channel.n)
        self.mu = d.eigenvalues
        self.basis = d.eigenvectors
        nc = noise_covariance(channel)  # validates the memory degree
        self.noise_q = nc.q_block
        self.noise_p = nc.p_block

    def raw_budget(self, r: float) -> float:
        return self.photon_budget - squeezed_photons(self.channel.n, r)

    def budget(self, r: float) -> float:
        b = self.raw_budget(r)
        if b < -kernels.DIAG_FEASIBILITY_TOL:
            raise InfeasibleParametersError(
                f"squeezing {r:.6g} exceeds the photon budget"
            )
        return max(b, 0.0)

    def theta_at(self, budget: float) -> float:
        if self.theta_policy == AUTO:
            return default_theta(budget)
        theta = float(self.theta_policy)
        check_theta_band(budget, theta)
        return theta

    def stage(self, r: float):
        return kernels.output_stage(self.mu, self.basis, self.noise_q, self.noise_p, float(r))

    def modulation_slack(self, budget: float, theta: float, y: float) -> float:
        return float(
            kernels.regulated_blocks(self.mu, self.basis, budget, theta, float(y))[2]
        )

    def rate_from_stage(self, stage, budget: float, theta: float, y: float) -> float:
        aout, bout, s_out = stage
        s_avg = kernels.averaged_entropy(
            aout, bout, self.mu, self.basis, budget, theta, float(y)
        )
        return (s_avg - s_out) / self.channel.n

    def y_bound(self, r: float) -> float:
        """Largest |y| keeping the modulation covariance feasible at this r."""
        budget = self.budget(r)
        theta = self.theta_at(budget)
        # A single mode has no neighbor to correlate with, and theta = 0
        # removes the correlated part entirely; y is inert in both cases.
        if self.channel.n == 1 or theta == 0.0:
            return 0.0
        return _bisect_largest(lambda y: self.modulation_slack(budget, theta, y))


class FeasibleRegion:
    """Feasibility bounds for one channel at a given photon budget.

    ``r_max`` is the largest squeezing the budget allows (with a fixed theta
    override, also the largest r keeping the modulation feasible at y = 0);
    ``s_max`` the largest feasible memory degree at the channel's epsilon;
    ``y_max(r)`` the largest feasible |correlation| at squeezing r.
    """

    def __init__(self, channel: ChannelParams, photon_budget: float, theta=AUTO):
        if channel.noise_photons == 0.0 and channel.epsilon == 0.0:
            raise EmptyFeasibleRegionError(
                "noise covariance degenerates to zero (no added photons and "
                "epsilon forced to 0); there is no noisy-channel operating point"
            )
        self._evaluator = _Evaluator(channel, photon_budget, theta)
        self.channel = channel
        self.photon_budget = float(photon_budget)
        self.theta = theta
        self.s_max = self._compute_s_max()
        self.r_max = self._compute_r_max()

    def _compute_s_max(self) -> float:
        ch = self.channel
        if ch.epsilon == 0.0:
            return math.inf  # noise stays diagonal for every memory degree
        d = coupling_spectrum(ch.n)

        def slack(s: float) -> float:
            return float(
                kernels.regulated_blocks(
                    d.eigenvalues, d.eigenvectors, ch.noise_photons, ch.epsilon, -s
                )[2]
            )

        return _bisect_largest(slack)

    def _compute_r_max(self) -> float:
        ev = self._evaluator
        if self.channel.n == 1:
            return 0.0  # squeezing is inert without a neighboring mode
        if self.theta == AUTO:
            slack = ev.raw_budget
        else:
            # With a fixed theta the modulation must stay feasible at y = 0,
            # [K1]_jj = budget - theta/2 >= 0.
            theta = float(self.theta)

            def slack(r: float) -> float:
                return ev.raw_budget(r) - theta / 2.0

        return _bisect_largest(slack)

    def y_max(self, squeezing: float) -> float:
        return self._evaluator.y_bound(squeezing)


def feasible_region(channel: ChannelParams, photon_budget: float, theta=AUTO) -> FeasibleRegion:
    """Compute the feasibility bounds for ``channel`` at ``photon_budget``."""
    return FeasibleRegion(channel, photon_budget, theta)


def _better_y(rate: float, y: float, best_rate: float, best_y: float) -> bool:
    if math.isnan(rate):
        return False
    if rate != best_rate:
        return rate > best_rate
    if abs(y) != abs(best_y):
        return abs(y) < abs(best_y)
    return y < best_y


def _max_over_y_fast(ev: _Evaluator, r: float, y_grid_points: int, y_tol: float):
    budget = ev.budget(r)
    theta = ev.theta_at(budget)
    stage = ev.stage(r)
    y_hi = ev.y_bound(r)
    best_y = 0.0
    best_rate = ev.rate_from_stage(stage, budget, theta, 0.0)
    if y_hi <= 0.0:
        return best_y, best_rate
    grid = np.linspace(-y_hi, y_hi, y_grid_points)
    rates = [ev.rate_from_stage(stage, budget, theta, y) for y in grid]
    best_idx = 0
    for i, (y, rate) in enumerate(zip(grid, rates)):
        if _better_y(rate, y, best_rate, best_y):
            best_y, best_rate, best_idx = y, rate, i
    lo = grid[max(best_idx - 1, 0)]
    hi = grid[min(best_idx + 1, y_grid_points - 1)]
    y_ref, rate_ref = _golden_max(
        lambda y: ev.rate_from_stage(stage, budget, theta, y), lo, hi, y_tol
    )
    if _better_y(rate_ref, y_ref, best_rate, best_y):
        best_y, best_rate = y_ref, rate_ref
    return best_y, best_rate


def _result_at(channel: ChannelParams, photon_budget: float, r: float, y: float, theta) -> RateResult:
    input_params = InputParams.create(
        channel.n, photon_budget, squeezing=r, correlation=y, theta=theta
    )
    return transmission_rate(channel, input_params)


def max_over_y(
    channel: ChannelParams,
    photon_budget: float,
    squeezing: float,
    *,
    theta=AUTO,
    y_grid_points: int = 129,
    y_tol: float = 1e-6,
):
    """Maximize the rate over the modulation correlation at fixed squeezing.

    Searches the symmetric feasible interval with a bracketing grid and
    golden-section refinement; returns ``(y_opt, RateResult)``.
    """
    ev = _Evaluator(channel, photon_budget, theta)
    y_star, _ = _max_over_y_fast(ev, float(squeezing), y_grid_points, y_tol)
    return y_star, _result_at(channel, photon_budget, float(squeezing), y_star, theta)


def max_over_ry(
    channel: ChannelParams,
    photon_budget: float,
    *,
    theta=AUTO,
    r_grid_points: int = 65,
    y_grid_points: int = 129,
    r_tol: float = 1e-5,
    y_tol: float = 1e-6,
):
    """Jointly maximize the rate over squeezing and correlation.

    Outer grid plus golden-section refinement in r, with the full y
    maximization nested inside; returns ``(r_opt, y_opt, RateResult)``.
    """
    region = feasible_region(channel, photon_budget, theta)
    ev = region._evaluator
    r_hi = region.r_max
    if not math.isfinite(r_hi):
        raise GaussmemError("squeezing bound is unbounded; cannot grid the search")

    def inner(r: float):
        return _max_over_y_fast(ev, r, y_grid_points, y_tol)

    grid = np.linspace(0.0, r_hi, r_grid_points) if r_hi > 0 else np.array([0.0])
    best_r, (best_y, best_rate) = grid[0], inner(grid[0])
    best_idx = 0
    for i, r in enumerate(grid[1:], start=1):
        y, rate = inner(r)
        if _better_ry(rate, r, y, best_rate, best_r, best_y):
            best_r, best_y, best_rate, best_idx = r, y, rate, i
    if len(grid) > 1:
        lo = grid[max(best_idx - 1, 0)]
        hi = grid[min(best_idx + 1, len(grid) - 1)]
        r_ref, rate_ref = _golden_max(lambda r: inner(r)[1], lo, hi, r_tol)
        y_ref = inner(r_ref)[0]
        if _better_ry(rate_ref, r_ref, y_ref, best_rate, best_r, best_y):
            best_r, best_y = r_ref, y_ref
    result = _result_at(channel, photon_budget, best_r, best_y, theta)
    return float(best_r), float(best_y), result


def _better_ry(rate, r, y, best_rate, best_r, best_y) -> bool:
    if math.isnan(rate):
        return False
    if rate != best_rate:
        return rate > best_rate
    if r != best_r:
        return r < best_r
    if abs(y) != abs(best_y):
        return abs(y) < abs(best_y)
    return y < best_y


@dataclass(frozen=True)
class SweepPoint:
    """One optimized operating point of a parameter sweep."""

    memory: float
    n: int
    squeezing: float
    correlation: float
    rate: float


@dataclass(frozen=True)
class SweepResult:
    """Rows of a parameter sweep plus the configuration that produced them."""

    kind: str
    points: tuple
    photon_budget: float
    channels: tuple
    settings: dict = field(default_factory=dict)


def sweep_r(
    channels: Sequence[ChannelParams],
    photon_budget: float,
    r_values: Sequence[float],
    *,
    theta=AUTO,
    y_grid_points: int = 129,
    y_tol: float = 1e-6,
) -> SweepResult:
    """Rate maximized over y at each squeezing value, for each channel."""
    points = []
    for ch in channels:
        ev = _Evaluator(ch, photon_budget, theta)
        for r in r_values:
            y, rate = _max_over_y_fast(ev, float(r), y_grid_points, y_tol)
            points.append(
                SweepPoint(
                    memory=ch.memory, n=ch.n, squeezing=float(r), correlation=y, rate=rate
                )
            )
    return SweepResult(
        kind="squeezing-sweep",
        points=tuple(points),
        photon_budget=float(photon_budget),
        channels=tuple(channels),
        settings={"theta": theta, "y_grid_points": y_grid_points, "y_tol": y_tol},
    )


def sweep_n(
    channel_template: ChannelParams,
    photon_budget: float,
    n_values: Sequence[int],
    *,
    theta=AUTO,
    r_grid_points: int = 65,
    y_grid_points: int = 129,
    r_tol: float = 1e-5,
    y_tol: float = 1e-6,
) -> SweepResult:
    """Jointly optimized rate for each number of channel uses."""
    points = []
    channels = []
    for n in n_values:
        ch = ChannelParams(
            int(n),
            channel_template.noise_photons,
            channel_template.memory,
            channel_template.epsilon,
        )
        channels.append(ch)
        r_opt, y_opt, result = max_over_ry(
            ch,
            photon_budget,
            theta=theta,
            r_grid_points=r_grid_points,
            y_grid_points=y_grid_points,
            r_tol=r_tol,
            y_tol=y_tol,
        )
        points.append(
            SweepPoint(
                memory=ch.memory,
                n=ch.n,
                squeezing=r_opt,
                correlation=y_opt,
                rate=result.rate,
            )
        )
    return SweepResult(
        kind="uses-sweep",
        points=tuple(points),
        photon_budget=float(photon_budget),
        channels=tuple(channels),
        settings={
            "theta": theta,
            "r_grid_points": r_grid_points,
            "y_grid_points": y_grid_points,
            "r_tol": r_tol,
            "y_tol": y_tol,
        },
    )
