import math

import numpy as np
import pytest

from lpmult import GridSpec, SampledFunction, bessel_potential, spectrum_as_function
from lpmult.counterexample import (
    CounterexampleParams,
    build_K,
    build_eta,
    build_mk,
    check_L_finiteness,
    check_blowup,
    decay_envelope_check,
    eta_band,
    h_function,
    necessary_condition_norms,
)
from lpmult.grid import freq_magnitude, x_magnitude
from lpmult.profiles import random_band_limited
from lpmult.quadrature import adaptive_simpson

BASE = CounterexampleParams(1.0, 1.0, 0.6)
GRID = GridSpec(1, 8192, 16.0)


class TestParams:
    def test_derived_quantities(self):
        assert BASE.t == 1.0
        assert BASE.tau == pytest.approx(1.0 / 0.6)
        lo, hi = BASE.gamma_window
        assert lo == pytest.approx(1.2) and hi == 2.0
        assert lo < BASE.gamma_value < hi

    def test_rejects_out_of_window(self):
        with pytest.raises(ValueError):
            CounterexampleParams(1.0, 1.0, 1.5)  # s >= d/min(1,p,q)
        with pytest.raises(ValueError):
            CounterexampleParams(1.0, 1.0, 0.6, gamma=1.0)  # gamma <= 2/tau


class TestKernel:
    def test_value_at_origin(self):
        h = h_function(BASE, GRID)
        assert h.samples[GRID.n // 2].real == 1.0

    def test_radially_decreasing_on_axis(self):
        h = h_function(BASE, GRID).samples.real
        right = h[GRID.n // 2 :]
        assert np.all(np.diff(right) < 0)

    def test_point_value_against_scalar_formula(self):
        # t = 2 requires min(1,p,q) = 1/2; gamma = 1 sits in the window
        params = CounterexampleParams(0.5, 0.5, 1.2, gamma=1.0)
        assert params.t == 2.0
        grid = GridSpec(1, 4096, 16.0)
        h = h_function(params, grid)
        idx = grid.n // 2 + round(1.0 / grid.spacing)  # x = 1
        base = 1.0 + 4.0 * math.pi**2
        expected = 1.0 / (base ** (2.0 / 2.0) * (1.0 + math.log(base)) ** 0.5)
        assert h.samples[idx].real == pytest.approx(expected, rel=1e-14)

    def test_super_multiplicative(self):
        h = h_function(BASE, GRID).samples.real
        rng = np.random.default_rng(0)
        n = GRID.n
        for _ in range(200):
            i, j = rng.integers(n // 4, 3 * n // 4, size=2)
            diff = (i - j + n // 2) % n  # index of x_i - x_j on the grid
            assert h[diff] >= h[i] * h[j]


class TestEta:
    def test_nonnegative_exactly(self):
        eta = build_eta(GRID)
        assert eta.samples.real.min() >= 0.0
        assert np.abs(eta.samples.imag).max() == 0.0

    def test_spectrum_vanishes_outside_band(self):
        eta = build_eta(GRID)
        mag = freq_magnitude(GRID)
        outside = mag >= 0.2
        level = np.abs(eta.spectrum[outside]).max()
        assert level <= 1e-14 * np.abs(eta.spectrum).max()

    def test_positive_on_core(self):
        eta = build_eta(GRID)
        core = x_magnitude(GRID) <= 0.01
        assert eta.samples.real[core].min() > 0.0

    def test_resolution_guard(self):
        with pytest.raises(ValueError):
            build_eta(GridSpec(1, 64, 4.0))  # freq spacing too coarse


class TestDilatedSymbols:
    def test_kernel_nonnegative_and_band_limited(self):
        K = build_K(BASE, GRID)
        assert K.samples.real.min() >= -1e-12 * K.samples.real.max()
        from lpmult import is_band_limited

        assert is_band_limited(K, 2.0 * eta_band(GRID)[1])

    def test_kernel_value_against_direct_sum(self):
        K = build_K(BASE, GRID)
        h = h_function(BASE, GRID).samples.real
        eta = build_eta(GRID).samples.real
        n = GRID.n
        # K(0) = cell * sum_y H(-y) eta(y); index of -y is mirrored around 0
        direct = GRID.cell_volume * sum(
            h[(n // 2 - (j - n // 2)) % n] * eta[j] for j in range(n)
        )
        assert K.samples[n // 2].real == pytest.approx(direct, rel=1e-8)

    def test_symbol_identity_and_k_independence(self):
        K = build_K(BASE, GRID)
        khat = K.spectrum
        m = np.arange(-8, 9)
        for k in (0, 1, 3):
            mk = build_mk(BASE, GRID, k)
            lhs = mk.samples[(2**k * m) % GRID.n]
            assert np.abs(lhs - khat[m % GRID.n]).max() <= 1e-10 * np.abs(khat).max()

    def test_rejects_negative_scale_and_band_overflow(self):
        with pytest.raises(ValueError):
            build_mk(BASE, GRID, -1)
        with pytest.raises(ValueError):
            build_mk(BASE, GRID, 12)


class TestTrends:
    def test_control_integral_closed_form_exponent_two(self):
        radii = [2.0**j for j in range(0, 9)]
        rep = check_L_finiteness(BASE, radii, exponent=2.0)
        for r, value in zip(rep.radii, rep.values):
            closed = 0.5 * (1.0 - 1.0 / (1.0 + 2.0 * math.log(r)))
            assert value == pytest.approx(closed, rel=1e-6, abs=1e-12)

    def test_control_integral_boundary_exponent(self):
        radii = [2.0**j for j in range(0, 9)]
        rep = check_L_finiteness(BASE, radii, exponent=1.0)
        for r, value in zip(rep.radii, rep.values):
            closed = 0.5 * math.log(1.0 + 2.0 * math.log(r))
            assert value == pytest.approx(closed, rel=1e-6, abs=1e-12)

    def test_empty_interval(self):
        rep = check_L_finiteness(BASE, [1.0, 2.0])
        assert rep.values[0] == 0.0

    def test_admissible_increments_decrease(self):
        radii = [2.0**j for j in range(0, 11)]
        rep = check_L_finiteness(BASE, radii)
        inc = rep.increments
        assert all(b < a for a, b in zip(inc, inc[1:]))

    def test_blowup_positive_and_bounded_below(self):
        radii = [2.0**j for j in range(0, 11)]
        rep = check_blowup(BASE, radii)
        assert rep.values[0] > 0.0
        assert min(rep.increments[-4:]) > 0.01
        # comparison against the asymptotic integrand floor
        gm = rep.extras["exponent"]
        r_last = radii[-2]
        floor = adaptive_simpson(
            lambda x: (1.0 / (np.pi * x)) * (1.0 + 2.0 * np.log(2 * np.pi * x)) ** (-gm),
            r_last,
            2 * r_last,
        )
        assert rep.increments[-1] >= 0.9 * floor

    def test_contrast_flip(self):
        radii = [2.0**j for j in range(0, 11)]
        convergent_mass = check_blowup(BASE, radii, exponent=2.0)
        assert convergent_mass.increments[-1] < 0.25 * max(convergent_mass.increments)
        slow_control = check_L_finiteness(BASE, radii, exponent=1.0)
        assert slow_control.increments[-1] > 1e-3


class TestDecayEnvelope:
    def test_exact_weight_transfer_identity(self):
        # Bessel-weighting the transform equals transforming the
        # pointwise-weighted kernel: exact on the grid
        params = BASE
        lhs = bessel_potential(spectrum_as_function(h_function(params, GRID)), params.s)
        shifted = CounterexampleParams(
            params.p, params.q, params.s, gamma=params.gamma_value
        )
        weighted_kernel = SampledFunction(
            GRID,
            (1.0 + 4.0 * np.pi**2 * x_magnitude(GRID) ** 2) ** (params.s / 2.0)
            * h_function(params, GRID).samples,
        )
        rhs = spectrum_as_function(weighted_kernel)
        scale = np.abs(rhs.samples).max()
        assert np.abs(lhs.samples - rhs.samples).max() <= 1e-10 * scale

    def test_fit_is_consistent_and_stable(self):
        env = decay_envelope_check(BASE, GRID)
        assert env["shape_consistent"]
        finer = decay_envelope_check(BASE, GridSpec(1, 2 * GRID.n, GRID.half_width))
        ratio = finer["fitted_constant"] / env["fitted_constant"]
        assert 0.5 < ratio < 2.0


class TestNecessaryConditions:
    def test_mass_identity_for_square_kernel(self):
        g = GridSpec(1, 1024, 8.0)
        gen = random_band_limited(g, 0.4, np.random.default_rng(1))
        kernel = SampledFunction(g, np.abs(gen.samples) ** 2)
        record = necessary_condition_norms(kernel, 1.5, 2.0)
        assert record["mass_identity_gap"] <= 1e-8 * record["l1_norm"]

    def test_zero_kernel(self):
        g = GridSpec(1, 256, 8.0)
        record = necessary_condition_norms(SampledFunction(g, np.zeros(256)), 1.5, 2.0)
        assert record["lp_small"] == 0.0 and record["symbol_sup"] == 0.0

    def test_band_limited_norm_comparison(self):
        # quasi-norm comparison for band-limited kernels: higher exponent
        # controlled by lower with an ensemble-stable constant
        g = GridSpec(1, 1024, 8.0)
        ratios = []
        for seed in range(6):
            f = random_band_limited(g, 1.0, np.random.default_rng(seed))
            from lpmult.norms import lp_norm

            ratios.append(
                lp_norm(f.samples, 2.0, g.cell_volume)
                / lp_norm(f.samples, 1.0, g.cell_volume)
            )
        assert max(ratios) < 5.0
        assert max(ratios) / min(ratios) < 4.0
