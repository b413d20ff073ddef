import numpy as np
import pytest

from lpmult import (
    CubeCoefficients,
    GridSpec,
    SampledFunction,
    VectorField,
    band_project,
    is_band_limited,
)
from lpmult.cubes import DyadicCube, corner_index, cubes_at_scale
from lpmult.frames import PsiFamily, psi_translate
from lpmult.grid import freq_values, x_values
from lpmult.norms import fpq_discrete_norm, lp_lq_norm
from lpmult.profiles import random_vector_field, trial_rng
from lpmult.transform import analyze, duality_pairing, roundtrip, synthesize


def reproducing_field(grid, k_range, seed):
    return random_vector_field(grid, k_range, trial_rng(seed, 0), band="reproducing")


class TestAnalyze:
    def test_zero_field(self):
        g = GridSpec(1, 128, 4.0)
        field = VectorField.unchecked(g, {1: SampledFunction(g, np.zeros(128))})
        b = analyze(field)
        assert all(v == 0 for v in b.entries.values())

    def test_constant_component(self):
        g = GridSpec(1, 128, 4.0)
        c = 2.0 - 1.0j
        field = VectorField.unchecked(g, {1: SampledFunction(g, np.full(128, c))})
        b = analyze(field)
        for cube, value in b.entries.items():
            assert value == pytest.approx(2.0 ** (-cube.k / 2.0) * c, rel=1e-14)

    def test_matches_index_arithmetic_oracle(self):
        g = GridSpec(1, 256, 4.0)
        field = reproducing_field(g, (0, 3), seed=1)
        b = analyze(field)
        for cube, value in b.entries.items():
            # oracle: locate the corner by rounding its coordinate
            x_corner = cube.corner[0]
            idx = round((x_corner + g.half_width) / g.spacing)
            expected = 2.0 ** (-cube.k / 2.0) * field[cube.k].samples[idx]
            assert value == expected  # bit for bit


class TestSynthesize:
    def test_single_origin_coefficient_is_mother_window(self):
        g = GridSpec(1, 256, 4.0)
        b = CubeCoefficients({DyadicCube(0, (0,)): 1.0 + 0j}, 4.0, g)
        out = synthesize(b)
        fam = PsiFamily(g, 0, 0)
        assert np.abs(out[0].samples - fam.psi_physical(0).samples).max() < 1e-13

    def test_zero_coefficients(self):
        g = GridSpec(1, 128, 4.0)
        b = CubeCoefficients({DyadicCube(1, (0,)): 0.0 + 0j}, 4.0, g)
        out = synthesize(b)
        assert np.abs(out[1].samples).max() == 0.0

    def test_matches_cube_by_cube_summation(self):
        g = GridSpec(1, 64, 2.0)
        rng = np.random.default_rng(3)
        fam = PsiFamily(g, 0, 2)
        cubes = cubes_at_scale(2, 2.0, 1)
        chosen = rng.choice(len(cubes), size=5, replace=False)
        entries = {cubes[i]: complex(rng.normal(), rng.normal()) for i in chosen}
        b = CubeCoefficients(entries, 2.0, g)
        out = synthesize(b, k_range=(2, 2), psi=fam)
        direct = np.zeros(64, dtype=complex)
        for cube, value in entries.items():
            direct += value * psi_translate(fam, cube).samples
        assert np.abs(out[2].samples - direct).max() < 1e-10 * np.abs(direct).max()

    def test_output_band_certificate(self):
        g = GridSpec(1, 256, 4.0)
        field = reproducing_field(g, (0, 3), seed=4)
        out = synthesize(analyze(field), k_range=(0, 3))
        for k in range(0, 4):
            assert is_band_limited(out[k], 2.0**k)


class TestRoundtrip:
    def test_zero(self):
        g = GridSpec(1, 128, 4.0)
        field = VectorField.unchecked(g, {1: SampledFunction(g, np.zeros(128))})
        out = roundtrip(field)
        assert np.abs(out[1].samples).max() == 0.0

    def test_band_projected_gaussian(self):
        g = GridSpec(1, 512, 4.0)
        x = x_values(g)[0]
        gauss = SampledFunction(g, np.exp(-np.pi * x**2))
        comps = {k: band_project(gauss, 2.0 ** (k - 2)) for k in (2, 3)}
        field = VectorField(g, comps)
        out = roundtrip(field)
        for k, f in field.items():
            err = np.abs(out[k].samples - f.samples).max() / np.abs(f.samples).max()
            assert err < 1e-8

    def test_random_ensemble_exact(self):
        g = GridSpec(1, 256, 4.0)
        for seed in range(10):
            field = reproducing_field(g, (0, 3), seed=seed)
            out = roundtrip(field)
            for k, f in field.items():
                err = np.abs(out[k].samples - f.samples).max() / np.abs(f.samples).max()
                assert err < 1e-8

    def test_pure_frequency_amplitude_and_phase(self):
        g = GridSpec(1, 256, 4.0)
        k = 3
        spectrum = np.zeros(256, dtype=complex)
        xi = freq_values(g)[0]
        target = np.argmin(np.abs(xi - 1.25))  # |xi0| < 2^(k-2) = 2
        amp = 1.3 * np.exp(0.7j)
        spectrum[target] = amp
        f = SampledFunction.from_spectrum(g, spectrum)
        field = VectorField(g, {k: f})
        out = roundtrip(field)
        rec = out[k].spectrum[target]
        assert abs(rec - amp) < 1e-10 * abs(amp)

    def test_refuses_wide_band(self):
        g = GridSpec(1, 256, 4.0)
        field = random_vector_field(g, (0, 3), trial_rng(5, 0), band="class")
        with pytest.raises(ValueError):
            roundtrip(field)

    def test_analysis_coefficients_idempotent(self):
        g = GridSpec(1, 256, 4.0)
        field = reproducing_field(g, (0, 3), seed=6)
        b1 = analyze(field)
        b2 = analyze(synthesize(b1, k_range=field.k_range))
        top = max(abs(v) for v in b1.entries.values())
        for cube, value in b1.entries.items():
            assert abs(b2.entries[cube] - value) < 1e-8 * top


class TestDualityPairing:
    def test_zero_coefficients(self):
        g = GridSpec(1, 128, 4.0)
        field = reproducing_field(g, (0, 2), seed=7)
        b = CubeCoefficients({DyadicCube(1, (0,)): 0.0 + 0j}, 4.0, g)
        assert duality_pairing(field, b) == 0.0

    def test_single_plane_wave_single_coefficient(self):
        g = GridSpec(1, 256, 4.0)
        k = 2
        xi = freq_values(g)[0]
        target = np.argmin(np.abs(xi - 0.5))
        spectrum = np.zeros(256, dtype=complex)
        spectrum[target] = 2.0
        f = SampledFunction.from_spectrum(g, spectrum)
        field = VectorField(g, {k: f})
        cube = DyadicCube(k, (3,))
        b = CubeCoefficients({cube: 1.5 + 0.5j}, 4.0, g)
        # closed form: b_Q |Q|^(1/2) integral of f_k(x) psi_k(x - x_Q) dx
        #            = b_Q |Q|^(1/2) f_hat_k conjugate-free pairing at xi0
        # with psi_hat = 1 on the band: integral = b_Q |Q|^(1/2) f_k(x_Q)
        expected = (1.5 + 0.5j) * cube.volume**0.5 * f.samples[corner_index(g, cube)[0]]
        assert duality_pairing(field, b) == pytest.approx(expected, rel=1e-10)

    def test_two_sided_identity(self):
        g = GridSpec(1, 256, 4.0)
        rng = trial_rng(8, 0)
        field = random_vector_field(g, (0, 3), rng, band="reproducing")
        cubes = cubes_at_scale(2, 4.0, 1)
        entries = {
            cubes[i]: complex(rng.standard_normal(), rng.standard_normal())
            for i in rng.choice(len(cubes), size=8, replace=False)
        }
        b = CubeCoefficients(entries, 4.0, g)
        lhs = duality_pairing(field, b)
        coeffs = analyze(field)
        rhs = sum(coeffs.entries[cube] * value for cube, value in entries.items())
        assert abs(lhs - rhs) < 1e-8 * max(abs(lhs), 1.0)

    def test_hoelder_bound_ensemble(self):
        g = GridSpec(1, 128, 4.0)
        p, q = 1.5, 2.0
        pp, qq = p / (p - 1.0), q / (q - 1.0)
        worst = 0.0
        for seed in range(8):
            rng = trial_rng(9, seed)
            field = random_vector_field(g, (0, 2), rng, band="reproducing")
            cubes = cubes_at_scale(1, 4.0, 1)
            entries = {
                cubes[i]: complex(rng.standard_normal(), rng.standard_normal())
                for i in rng.choice(len(cubes), size=6, replace=False)
            }
            b = CubeCoefficients(entries, 4.0, g)
            pairing = abs(duality_pairing(field, b))
            bound = lp_lq_norm(field, pp, qq) * fpq_discrete_norm(b, p, q)
            worst = max(worst, pairing / bound)
        assert worst < 10.0  # empirical frame constant stays modest
