"""Cube-corner analysis and coefficient-comb synthesis.

Analysis samples each component at the corners of its own dyadic scale;
synthesis scatters coefficients onto the corner lattice and applies one
reproducing window per scale spectrally (one FFT instead of a cube-by-cube
sum).  For components whose spectrum vanishes at and beyond ``2**(k-2)`` the
composition is the identity: the corner comb aliases with period ``2**k``
and the window's support radius ``(3/4) 2**k`` stays clear of every alias
copy, so the windowed comb spectrum equals the original spectrum exactly.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cubes import cells_per_axis, corner_index, cubes_at_scale
from .fields import CubeCoefficients, VectorField
from .frames import PsiFamily
from .grid import GridSpec, SampledFunction, is_band_limited

__all__ = ["analyze", "synthesize", "roundtrip", "duality_pairing"]

SYNTHESIS_BAND_CONSTANT = 0.5  # synthesized scale-k output lives in |xi| <= (3/4) 2^k


@lru_cache(maxsize=16)
def _psi_for(grid: GridSpec, k_min: int, k_max: int) -> PsiFamily:
    return PsiFamily(grid, k_min, k_max)


def analyze(field: VectorField) -> CubeCoefficients:
    """``b_Q = |Q|^(1/2) f_k(x_Q)`` over all torus cubes of each scale."""
    grid = field.grid
    entries: dict = {}
    n_half = grid.n // 2
    for k, f in field.items():
        g = cells_per_axis(grid, k)  # raises if corners are off-grid
        amp = 2.0 ** (-k * grid.dim / 2.0)
        for q_cube in cubes_at_scale(k, grid.half_width, grid.dim):
            idx = tuple(g * li + n_half for li in q_cube.l)
            entries[q_cube] = amp * complex(f.samples[idx])
    return CubeCoefficients(entries, grid.half_width, grid)


def synthesize(
    b: CubeCoefficients,
    k_range: tuple[int, int] | None = None,
    psi: PsiFamily | None = None,
) -> VectorField:
    """``f_k = sum_{Q in D_k} b_Q Psi^Q`` per scale via one spectral product.

    Scales with no coefficients inside ``k_range`` come out as zero
    components.  Output components are exactly band-limited to
    ``(3/4) 2**k`` (certified through the window's exact spectral support).
    """
    grid = b.require_grid()
    by_scale = b.by_scale()
    if k_range is None:
        if not by_scale:
            raise ValueError("cannot infer scales from empty coefficients")
        k_range = (min(by_scale), max(by_scale))
    k_min, k_max = k_range
    fam = psi if psi is not None else _psi_for(grid, min(k_min, 0), k_max)
    components: dict[int, SampledFunction] = {}
    for k in range(k_min, k_max + 1):
        comb = np.zeros(grid.shape, dtype=np.complex128)
        amp = (2.0 ** (-k * grid.dim / 2.0)) / grid.cell_volume
        for q_cube, value in by_scale.get(k, []):
            comb[corner_index(grid, q_cube)] += amp * value
        comb_fn = SampledFunction(grid, comb)
        components[k] = SampledFunction.from_spectrum(
            grid, comb_fn.spectrum * fam.psi_hat(k)
        )
    return VectorField(grid, components, band_constant=SYNTHESIS_BAND_CONSTANT)


def roundtrip(field: VectorField) -> VectorField:
    """``synthesize(analyze(field))``; requires every component band-limited
    to ``2**(k-2)``.  Content beyond that radius would alias under corner
    sampling into the window's transition band, so the call refuses."""
    for k, f in field.items():
        if not is_band_limited(f, 2.0 ** (k - 2)):
            raise ValueError(
                f"component {k}: spectrum must vanish beyond |xi| = 2^(k-2) "
                "for exact reconstruction"
            )
    return synthesize(analyze(field), k_range=field.k_range)


def duality_pairing(field: VectorField, b: CubeCoefficients) -> complex:
    """Bilinear pairing ``int sum_k f_k(x) (sum_Q b_Q Psi^Q)(x) dx`` as a
    Riemann sum (no conjugation)."""
    grid = field.grid
    if b.grid is not None and b.grid != grid:
        raise ValueError("coefficients live on a different grid")
    if b.grid is None:
        b = CubeCoefficients(b.entries, b.half_width, grid)
    k_min, k_max = field.k_range
    scales = b.scales
    if scales:
        k_min = min(k_min, min(scales))
        k_max = max(k_max, max(scales))
    synth = synthesize(b, k_range=(k_min, k_max))
    total = 0.0 + 0.0j
    for k, f in field.items():
        total += (f.samples * synth[k].samples).sum()
    return complex(grid.cell_volume * total)
