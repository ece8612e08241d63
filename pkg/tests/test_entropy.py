import numpy as np
import pytest

from conftest import FIG_BUDGET, FIG_NOISE, G_EIGHT_THIRDS, G_TWO_THIRDS, MEMORYLESS_RATE
from gaussmem import (
    BlockCovariance,
    ChannelParams,
    DomainError,
    InputParams,
    averaged_output_covariance,
    g,
    gaussian_entropy,
    input_covariance,
    output_covariance,
    squeezed_photons,
    transmission_rate,
)


def mpmath_g(x):
    """High-precision oracle for the thermal entropy."""
    from mpmath import log, mp, mpf

    mp.dps = 40
    x = mpf(x)
    if x == 0:
        return 0.0
    return float(((x + 1) * log(x + 1) - x * log(x)) / log(2))


class TestThermalEntropy:
    def test_zero(self):
        assert g(0.0) == 0.0

    def test_one(self):
        assert g(1.0) == pytest.approx(2.0, abs=1e-15)

    def test_frozen_fig_values(self):
        assert g(2.0 / 3.0) == pytest.approx(G_TWO_THIRDS, abs=1e-14)
        assert g(8.0 / 3.0) == pytest.approx(G_EIGHT_THIRDS, abs=1e-14)

    @pytest.mark.parametrize("x", [1e-8, 1e-4, 0.1, 2.0 / 3.0, 1.0, 8.0 / 3.0, 10.0, 1e4])
    def test_against_mpmath(self, x):
        assert g(x) == pytest.approx(mpmath_g(x), rel=1e-13, abs=1e-15)

    def test_continuous_at_zero(self):
        assert g(1e-13) == 0.0
        assert 0.0 < g(1e-9) < 1e-7

    def test_strictly_increasing(self):
        xs = np.logspace(-10, 3, 60)
        values = [g(x) for x in xs]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            g(-0.01)

    def test_tiny_negative_clamped(self):
        assert g(-1e-12) == 0.0


class TestGaussianEntropy:
    def test_vacuum_and_pure_squeezed(self):
        for n, r in [(1, 0.0), (3, 0.0), (2, 0.6), (4, 1.0)]:
            assert gaussian_entropy(input_covariance(n, r)) == pytest.approx(0.0, abs=1e-9)

    def test_thermal(self):
        for n, occ in [(1, 2.0 / 3.0), (3, 0.4), (5, 2.2)]:
            cov = BlockCovariance((occ + 0.5) * np.eye(n), (occ + 0.5) * np.eye(n))
            assert gaussian_entropy(cov) == pytest.approx(n * g(occ), abs=1e-12)

    def test_single_mode_fig_noise(self):
        cov = BlockCovariance(
            (FIG_NOISE + 0.5) * np.eye(1), (FIG_NOISE + 0.5) * np.eye(1)
        )
        assert gaussian_entropy(cov) == pytest.approx(G_TWO_THIRDS, abs=1e-13)

    def test_additive_over_direct_sums(self):
        from gaussmem.montecarlo import random_physical_covariance

        rng = np.random.default_rng(3)
        for _ in range(10):
            a = random_physical_covariance(int(rng.integers(1, 4)), rng)
            b = random_physical_covariance(int(rng.integers(1, 4)), rng)
            na, nb = a.n, b.n
            q = np.zeros((na + nb, na + nb))
            p = np.zeros((na + nb, na + nb))
            q[:na, :na], q[na:, na:] = a.q_block, b.q_block
            p[:na, :na], p[na:, na:] = a.p_block, b.p_block
            combined = BlockCovariance(q, p)
            assert gaussian_entropy(combined) == pytest.approx(
                gaussian_entropy(a) + gaussian_entropy(b), abs=1e-10
            )


def _rate(n, noise, s, nbar, r, y, epsilon="auto", theta="auto"):
    channel = ChannelParams.create(n, noise, s, epsilon)
    inp = InputParams.create(n, nbar, r, y, theta)
    return transmission_rate(channel, inp)


class TestTransmissionRate:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_memoryless_closed_form(self, n):
        result = _rate(n, FIG_NOISE, 0.0, FIG_BUDGET, 0.0, 0.0)
        assert result.rate == pytest.approx(MEMORYLESS_RATE, abs=1e-12)
        assert result.rate == pytest.approx(g(FIG_BUDGET + FIG_NOISE) - g(FIG_NOISE), abs=1e-12)

    def test_no_budget_no_rate(self):
        assert _rate(2, FIG_NOISE, 0.0, 0.0, 0.0, 0.0).rate == pytest.approx(0.0, abs=1e-12)

    def test_budget_fully_squeezed_gives_zero(self):
        r = 0.8
        nbar = squeezed_photons(3, r)  # entire budget consumed by squeezing
        result = _rate(3, FIG_NOISE, 0.0, nbar, r, 0.0)
        assert result.rate == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("s,r,y", [(0.0, 0.0, 0.0), (0.2, 0.1, 0.2), (0.1, 0.3, -0.4), (0.3, 0.0, 0.8)])
    def test_nonnegative(self, s, r, y):
        assert _rate(3, FIG_NOISE, s, FIG_BUDGET, r, y).rate >= -1e-10

    def test_memoryless_squeezing_penalty(self):
        base = _rate(3, FIG_NOISE, 0.0, FIG_BUDGET, 0.0, 0.0).rate
        for r in (0.1, 0.4, 0.8, 1.2):
            assert _rate(3, FIG_NOISE, 0.0, FIG_BUDGET, r, 0.0).rate <= base + 1e-12

    def test_block_swap_invariance(self):
        channel = ChannelParams.create(3, FIG_NOISE, 0.25)
        inp = InputParams.create(3, FIG_BUDGET, 0.2, 0.3)
        v_out = output_covariance(channel, inp.squeezing)
        v_avg = averaged_output_covariance(channel, inp)
        direct = gaussian_entropy(v_avg) - gaussian_entropy(v_out)
        swapped = gaussian_entropy(v_avg.swapped()) - gaussian_entropy(v_out.swapped())
        assert swapped == pytest.approx(direct, abs=1e-10)

    def test_result_recomputable_from_spectra(self):
        result = _rate(3, FIG_NOISE, 0.2, FIG_BUDGET, 0.15, 0.25)
        recomputed = (
            sum(g(v - 0.5) for v in result.avg_spectrum.values)
            - sum(g(v - 0.5) for v in result.out_spectrum.values)
        ) / result.channel.n
        assert result.rate == pytest.approx(recomputed, abs=1e-14)

    def test_epsilon_independent_at_zero_memory(self):
        rates = [
            _rate(2, 0.3, 0.0, FIG_BUDGET, 0.1, 0.2, epsilon=e).rate
            for e in (0.0, 0.2, 0.4, 0.6)
        ]
        assert np.ptp(rates) < 1e-12
