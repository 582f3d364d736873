import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringsqueeze import (
    CavityParams,
    CoverageError,
    FrequencyGrid,
    InvalidArgumentError,
    PumpField,
    cw_pump_input,
    gaussian_pump_input,
    intracavity_pump,
    make_grid,
    pump_grid_for,
    temporal_profile,
)
from ringsqueeze.grids import LN2, sample_at_sums


class TestMakeGrid:
    def test_four_point_example(self):
        grid = make_grid(span=4.0, n_points=4)
        assert np.allclose(grid.points, [-1.5, -0.5, 0.5, 1.5])

    def test_two_point_example(self):
        grid = make_grid(span=2.0, n_points=2)
        assert np.allclose(grid.points, [-0.5, 0.5])

    def test_large_grid_arithmetic(self):
        grid = make_grid(span=128.0, n_points=1024)
        assert grid.step == pytest.approx(0.125, abs=0)
        assert grid.points[0] == pytest.approx(-63.9375, abs=0)

    @pytest.mark.parametrize("span,n", [(-1.0, 8), (0.0, 8), (4.0, 1), (4.0, 0)])
    def test_invalid_arguments(self, span, n):
        with pytest.raises(InvalidArgumentError):
            make_grid(span, n)

    @given(span=st.floats(1e-3, 1e4), n=st.integers(2, 2048))
    @settings(max_examples=60, deadline=None)
    def test_invariants(self, span, n):
        grid = make_grid(span, n)
        diffs = np.diff(grid.points)
        assert np.all(diffs > 0)
        assert np.allclose(diffs, grid.step, rtol=1e-12)
        # symmetric about zero to within one step
        assert abs(grid.points[0] + grid.points[-1]) <= grid.step * (1 + 1e-12)
        assert grid.step == pytest.approx(span / n)


class TestCavityParams:
    def test_gamma_is_exact_sum(self):
        p = CavityParams(gamma_i=0.125, gamma_c=0.875, gamma_p=2.0, gamma_pc=2.0)
        assert p.gamma == 0.125 + 0.875

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(gamma_i=-0.1, gamma_c=1.0, gamma_p=2.0, gamma_pc=2.0),
            dict(gamma_i=0.1, gamma_c=0.0, gamma_p=2.0, gamma_pc=2.0),
            dict(gamma_i=0.1, gamma_c=1.0, gamma_p=0.0, gamma_pc=0.1),
            dict(gamma_i=0.1, gamma_c=1.0, gamma_p=2.0, gamma_pc=2.5),
            dict(gamma_i=0.1, gamma_c=1.0, gamma_p=2.0, gamma_pc=0.0),
            dict(gamma_i=0.1, gamma_c=1.0, gamma_p=2.0, gamma_pc=2.0, kappa=-1.0),
        ],
    )
    def test_rejects_bad_rates(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            CavityParams(**kwargs)


class TestGaussianPump:
    def test_peak_at_center(self):
        grid = make_grid(8.0, 33)
        pump = gaussian_pump_input(delta=1.0, peak=2.0 + 1.0j, grid=grid)
        center = np.argmin(np.abs(grid.points))
        assert pump.amplitude[center] == pytest.approx(2.0 + 1.0j)
        assert pump.kind == "input"

    def test_half_peak_at_half_fwhm(self):
        delta = 2.0
        grid = FrequencyGrid(n_points=5, span=5 * delta / 2.0)  # points at k*delta/2
        pump = gaussian_pump_input(delta=delta, peak=1.0, grid=grid)
        at_half = pump.amplitude[grid.points == delta / 2.0]
        assert at_half[0] == pytest.approx(0.5, rel=1e-12)

    def test_flat_limit(self):
        grid = make_grid(4.0, 16)
        pump = gaussian_pump_input(delta=1e6, peak=1.0, grid=grid)
        assert np.all(np.abs(pump.amplitude - 1.0) < 1e-9)

    def test_rejects_nonpositive_delta(self):
        grid = make_grid(4.0, 8)
        with pytest.raises(InvalidArgumentError):
            gaussian_pump_input(delta=0.0, peak=1.0, grid=grid)


class TestIntracavityPump:
    def test_on_resonance_lorentzian(self, params):
        grid = FrequencyGrid(n_points=3, span=3.0)  # contains mu = 0
        pump = gaussian_pump_input(delta=50.0, peak=1.0, grid=grid)
        cav = intracavity_pump(pump, params)
        center = np.argmin(np.abs(grid.points))
        expect = pump.amplitude[center] * np.sqrt(params.gamma_pc) / (params.gamma_p / 2)
        assert cav.amplitude[center] == pytest.approx(expect)
        assert cav.kind == "intracavity"

    def test_half_power_at_half_linewidth(self, params):
        # flat input: |eps(gamma_p/2)|^2 = |eps(0)|^2 / 2
        step = params.gamma_p / 2
        grid = FrequencyGrid(n_points=5, span=5 * step)
        flat = PumpField(grid=grid, amplitude=np.ones(5, dtype=complex), kind="input")
        cav = intracavity_pump(flat, params)
        i0 = np.argmin(np.abs(grid.points))
        ihalf = np.argmin(np.abs(grid.points - step))
        assert abs(cav.amplitude[ihalf]) ** 2 == pytest.approx(
            abs(cav.amplitude[i0]) ** 2 / 2, rel=1e-12
        )

    def test_roll_off(self, params):
        grid = make_grid(4000.0, 64)
        pump = PumpField(grid=grid, amplitude=np.ones(64, dtype=complex), kind="input")
        cav = intracavity_pump(pump, params)
        assert abs(cav.amplitude[0]) < 1e-2 * np.sqrt(params.gamma_pc)

    def test_linearity_in_input(self, params):
        grid = make_grid(16.0, 33)
        pump = gaussian_pump_input(delta=2.0, peak=1.0, grid=grid)
        cav = intracavity_pump(pump, params)
        c = 0.3 - 1.7j
        scaled = PumpField(grid=grid, amplitude=c * pump.amplitude, kind="input")
        cav2 = intracavity_pump(scaled, params)
        assert np.allclose(cav2.amplitude, c * cav.amplitude, rtol=1e-14, atol=0)

    def test_requires_input_kind(self, params):
        grid = make_grid(4.0, 8)
        pump = gaussian_pump_input(delta=1.0, peak=1.0, grid=grid)
        cav = intracavity_pump(pump, params)
        with pytest.raises(InvalidArgumentError):
            intracavity_pump(cav, params)

    def test_symmetric_pump_symmetric_magnitude(self, params):
        grid = FrequencyGrid(n_points=33, span=33.0)
        pump = intracavity_pump(gaussian_pump_input(2.0, 1.0, grid), params)
        mag = np.abs(pump.amplitude)
        assert np.allclose(mag, mag[::-1], rtol=1e-12)
        # phases conjugate-symmetric: eps(-mu) = conj(eps(mu))
        assert np.allclose(pump.amplitude, pump.amplitude[::-1].conj(), rtol=1e-12)


class TestTemporalProfile:
    def test_single_line_is_constant(self):
        grid = FrequencyGrid(n_points=9, span=9.0)
        pump = cw_pump_input(3.0, grid)
        prof = temporal_profile(pump)
        intensity = np.abs(prof.samples) ** 2
        assert np.allclose(intensity, intensity[0], rtol=1e-12)
        assert prof.peak_intensity == pytest.approx(
            (3.0 * grid.step / (2 * np.pi)) ** 2
        )

    def test_gaussian_matches_closed_form_transform(self):
        # independent oracle: analytic Fourier transform of the Gaussian
        delta = 2.0
        grid = make_grid(64.0, 512)
        pump = gaussian_pump_input(delta, 1.0, grid)
        prof = temporal_profile(pump)
        a = 4 * LN2 / delta**2
        expect = (1 / (2 * np.pi)) * np.sqrt(np.pi / a) * np.exp(
            -prof.times**2 / (4 * a)
        )
        assert np.allclose(prof.samples, expect, atol=1e-8 * expect.max())
        # amplitude FWHM of the pair is 8 ln2 / delta
        half = np.abs(prof.samples) >= np.abs(prof.samples).max() / 2
        width = prof.times[half][-1] - prof.times[half][0]
        assert width == pytest.approx(8 * LN2 / delta, rel=0.02)

    def test_two_tone_beat(self):
        grid = FrequencyGrid(n_points=8, span=8.0)
        mu0 = 0.5
        amp = np.zeros(8, dtype=complex)
        amp[grid.points == mu0] = 1.0
        amp[grid.points == -mu0] = 1.0
        prof = temporal_profile(PumpField(grid=grid, amplitude=amp, kind="input"))
        # closed form: (step/pi) cos(mu0 t), full-contrast beat at 2*mu0
        expect = (grid.step / np.pi) * np.cos(mu0 * prof.times)
        assert np.allclose(prof.samples, expect, atol=1e-15)
        intensity = np.abs(prof.samples) ** 2
        assert intensity.min() == pytest.approx(0.0, abs=1e-28)
        assert intensity.max() == pytest.approx((grid.step / np.pi) ** 2, rel=1e-12)

    @given(delta=st.floats(0.5, 8.0), n=st.sampled_from([64, 128, 256]))
    @settings(max_examples=20, deadline=None)
    def test_parseval(self, delta, n):
        grid = make_grid(32.0, n)
        pump = gaussian_pump_input(delta, 1.3 - 0.2j, grid)
        prof = temporal_profile(pump)
        dt = (2 * np.pi / grid.step) / n
        lhs = grid.step * np.sum(np.abs(pump.amplitude) ** 2)
        rhs = 2 * np.pi * dt * np.sum(np.abs(prof.samples) ** 2)
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestPumpGrid:
    def test_contains_zero_and_covers_sums(self):
        grid = make_grid(16.0, 64)
        pgrid = pump_grid_for(grid)
        assert np.any(pgrid.points == 0.0)
        assert pgrid.step == pytest.approx(grid.step)
        sums = grid.points[:, None] + grid.points[None, :]
        assert pgrid.points[0] <= sums.min()
        assert pgrid.points[-1] >= sums.max()

    def test_sample_at_sums_exact_and_symmetric(self, params):
        grid = make_grid(8.0, 16)
        pump = intracavity_pump(
            gaussian_pump_input(2.0, 1.0, pump_grid_for(grid)), params
        )
        eps = sample_at_sums(pump, grid)
        assert np.array_equal(eps, eps.T)
        # spot-check one exact lookup
        j, k = 3, 11
        mu = grid.points[j] + grid.points[k]
        idx = np.argmin(np.abs(pump.grid.points - mu))
        assert eps[j, k] == pump.amplitude[idx]

    def test_interpolation_path_stays_symmetric(self, params):
        grid = make_grid(8.0, 16)
        # misaligned pump grid forces interpolation
        pgrid = make_grid(40.0, 63)
        pump = intracavity_pump(gaussian_pump_input(2.0, 1.0, pgrid), params)
        eps = sample_at_sums(pump, grid)
        assert np.array_equal(eps, eps.T)

    def test_coverage_error(self, params):
        grid = make_grid(8.0, 16)
        narrow = make_grid(4.0, 16)
        pump = intracavity_pump(gaussian_pump_input(2.0, 1.0, narrow), params)
        with pytest.raises(CoverageError):
            sample_at_sums(pump, grid)
