"""Exactly evaluable multiplier profiles and seeded random ensembles.

Multiplier symbols are represented by trigonometric polynomials (optionally
times a closed-form radial window), so they can be evaluated exactly at
arbitrary points: both at rescaled grid frequencies when applying the
family and on the sample grid when taking Sobolev norms of the rescaled
profile.  No interpolation is involved anywhere.

Random band-limited fields are drawn directly on the frequency lattice
inside the band, in a fixed lattice order.  This is the same law as
band-projecting white noise, but a fixed seed then denotes the same
continuum function at every grid resolution, which is what makes
refinement-stability checks meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fields import VectorField
from .grid import GridSpec, SampledFunction

__all__ = [
    "trial_rng",
    "TrigPolynomial",
    "SymbolProfile",
    "random_symbol_profile",
    "random_band_limited",
    "random_vector_field",
]


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Independent per-trial stream, a pure function of (seed, trial)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(trial,)))


def _lattice_points(spacing: float, radius: float, dim: int, strict: bool) -> np.ndarray:
    """Frequency lattice points with |xi| <= radius (or <) in a fixed order
    (by |m|^2, then lexicographic), independent of any grid size."""
    m_max = int(np.ceil(radius / spacing)) + 1
    rng_axis = np.arange(-m_max, m_max + 1)
    if dim == 1:
        pts = rng_axis[:, None]
    else:
        mx, my = np.meshgrid(rng_axis, rng_axis, indexing="ij")
        pts = np.stack([mx.ravel(), my.ravel()], axis=-1)
    norms2 = (pts.astype(float) ** 2).sum(axis=1)
    r_units = radius / spacing
    keep = norms2 < r_units**2 if strict else norms2 <= r_units**2 + 1e-12
    pts = pts[keep]
    norms2 = norms2[keep]
    order = np.lexsort(tuple(pts[:, i] for i in reversed(range(dim))) + (norms2,))
    return pts[order] * spacing


@dataclass
class TrigPolynomial:
    """``u(y) = sum_m coeffs[m] exp(2 pi i <freqs[m], y>)``."""

    freqs: np.ndarray  # (m, dim)
    coeffs: np.ndarray  # (m,)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        scalar_axis = pts.ndim == 1 and self.freqs.shape[1] == 1
        if scalar_axis:
            pts = pts[:, None]
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, self.freqs.shape[1])
        out = np.zeros(flat.shape[0], dtype=np.complex128)
        chunk = 1 << 16
        for start in range(0, flat.shape[0], chunk):
            block = flat[start : start + chunk]
            phases = np.exp(2j * np.pi * (block @ self.freqs.T))
            out[start : start + chunk] = phases @ self.coeffs
        return out.reshape(shape)


@dataclass
class SymbolProfile:
    """Trig polynomial times an optional radial factor (closed form)."""

    trig: TrigPolynomial
    radial: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        vals = self.trig(pts)
        if self.radial is not None:
            if pts.ndim >= 2:
                mag = np.sqrt((pts**2).sum(axis=-1))
            else:
                mag = np.abs(pts)
            vals = vals * self.radial(mag)
        return vals

    def with_radial(self, factor: Callable[[np.ndarray], np.ndarray]) -> "SymbolProfile":
        if self.radial is None:
            return SymbolProfile(self.trig, factor)
        old = self.radial
        return SymbolProfile(self.trig, lambda t: old(t) * factor(t))

    def sample(self, grid: GridSpec) -> SampledFunction:
        from .grid import x_values

        axes = x_values(grid)
        if grid.dim == 1:
            pts = axes[0]
        else:
            gx, gy = np.meshgrid(axes[0], axes[1], indexing="ij")
            pts = np.stack([gx, gy], axis=-1)
        return SampledFunction(grid, self(pts))

    @classmethod
    def constant(cls, value: complex, dim: int) -> "SymbolProfile":
        return cls(TrigPolynomial(np.zeros((1, dim)), np.array([value], dtype=complex)))


def random_symbol_profile(
    rng: np.random.Generator,
    grid: GridSpec,
    bandwidth: float = 4.0,
    envelope_exponent: float = 2.0,
) -> SymbolProfile:
    """Random smooth profile: complex Gaussian trig coefficients damped by
    ``(1 + |omega|^2)^(-a/2)``; larger ``a`` means a smoother symbol.

    The coefficient lattice matches the grid's frequency lattice so that
    sampling the profile on the grid is leakage-free.
    """
    pts = _lattice_points(grid.freq_spacing, bandwidth, grid.dim, strict=False)
    count = pts.shape[0]
    raw = (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / np.sqrt(2.0)
    envelope = (1.0 + (pts**2).sum(axis=1)) ** (-envelope_exponent / 2.0)
    return SymbolProfile(TrigPolynomial(pts, raw * envelope))


def random_band_limited(
    grid: GridSpec,
    radius: float,
    rng: np.random.Generator,
    strict: bool = True,
) -> SampledFunction:
    """Gaussian random function with spectrum supported in the ball.

    Coefficients sit on the grid's frequency lattice, drawn in lattice
    order; with ``strict`` the open ball ``|xi| < radius`` is used.
    """
    if radius >= grid.nyquist:
        raise ValueError(f"band radius {radius} reaches Nyquist {grid.nyquist}")
    pts = _lattice_points(grid.freq_spacing, radius, grid.dim, strict=strict)
    count = pts.shape[0]
    if count == 0:
        raise ValueError(f"no grid frequencies inside band radius {radius}")
    coeffs = (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / np.sqrt(2.0)
    spectrum = np.zeros(grid.shape, dtype=np.complex128)
    idx = np.rint(pts / grid.freq_spacing).astype(int)  # lattice units
    for row, c in zip(idx, coeffs):
        spectrum[tuple(int(m) % grid.n for m in row)] = c
    return SampledFunction.from_spectrum(grid, spectrum)


def random_vector_field(
    grid: GridSpec,
    k_range: tuple[int, int],
    rng: np.random.Generator,
    band: str = "reproducing",
    band_constant: float = 0.25,
) -> VectorField:
    """Independent random band-limited components for k_min..k_max.

    ``band="reproducing"`` draws strictly inside ``2**(k-2)`` (the corner
    sampling hypothesis); ``band="class"`` draws strictly inside the class
    bound ``band_constant * 2**(k+1)``.
    """
    k_min, k_max = k_range
    comps = {}
    for k in range(k_min, k_max + 1):
        if band == "reproducing":
            radius = 2.0 ** (k - 2)
        elif band == "class":
            radius = band_constant * 2.0 ** (k + 1)
        else:
            raise ValueError("band must be 'reproducing' or 'class'")
        comps[k] = random_band_limited(grid, radius, rng, strict=True)
    return VectorField(grid, comps, band_constant=band_constant)
