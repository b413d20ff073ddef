"""Littlewood-Paley annulus family and the reproducing bump family.

Both families are generated by an explicit smooth radial plateau

    chi(t) = 1                                   t <= inner
    chi(t) = g(outer - t) / (g(outer - t) + g(t - inner))   inner < t < outer
    chi(t) = 0                                   t >= outer

with ``g(t) = exp(-1/t)``.  The annulus family uses radii (1, 2), so the
pieces ``phi_k`` tile frequency space with exact telescoping.

The reproducing family uses plateau radius 1/2 and support radius 3/4.
The tighter support is what makes corner-sampling synthesis exact: a scale-k
coefficient comb on the ``2**-k`` corner lattice aliases with period
``2**k``, and a window supported in ``{|xi| <= (3/4) 2**k}`` never sees the
alias copies of spectra contained in ``{|xi| < (1/4) 2**k}``.  A window
with support up to ``2**k`` would overlap the first alias copy and break
reconstruction at order one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cubes import DyadicCube, corner_index
from .grid import GridSpec, SampledFunction, freq_magnitude, freq_values

__all__ = [
    "smooth_plateau",
    "LPFamily",
    "PsiFamily",
    "build_phi0",
    "build_psi0",
    "psi_translate",
    "PSI_PLATEAU",
    "PSI_SUPPORT",
]

PSI_PLATEAU = 0.5
PSI_SUPPORT = 0.75


def _g(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > 0, np.exp(-1.0 / safe), 0.0)


def smooth_plateau(t, inner: float, outer: float) -> np.ndarray:
    """C-infinity radial profile: 1 on [0, inner], 0 on [outer, inf)."""
    t = np.asarray(t, dtype=float)
    up = _g(outer - t)
    down = _g(t - inner)
    with np.errstate(invalid="ignore"):
        out = np.where(t <= inner, 1.0, np.where(t >= outer, 0.0, up / (up + down)))
    return out


@dataclass(frozen=True)
class LPFamily:
    """Annulus partition: ``phi_hat_k(xi) = chi(|xi|/2^k) - chi(|xi|/2^(k-1))``."""

    grid: GridSpec
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.k_min > self.k_max:
            raise ValueError("empty scale range")
        if 2.0 ** (self.k_max + 1) >= self.grid.nyquist:
            raise ValueError(
                f"k_max={self.k_max} puts the top annulus at the Nyquist radius "
                f"{self.grid.nyquist}"
            )

    @property
    def phi0_hat(self) -> SampledFunction:
        """Spectrum-side carrier of the generating plateau."""
        return SampledFunction(self.grid, self.mother_profile(freq_magnitude(self.grid)))

    @staticmethod
    def mother_profile(t) -> np.ndarray:
        return smooth_plateau(t, 1.0, 2.0)

    @staticmethod
    def annulus_profile(t) -> np.ndarray:
        """Radial profile of a single piece at scale 0."""
        return smooth_plateau(t, 1.0, 2.0) - smooth_plateau(2.0 * np.asarray(t, float), 1.0, 2.0)

    def phi_hat(self, k: int) -> np.ndarray:
        """Grid values of ``phi_hat_k``; supported in ``2^(k-1) <= |xi| <= 2^(k+1)``."""
        mag = freq_magnitude(self.grid)
        return self.mother_profile(mag / 2.0**k) - self.mother_profile(mag / 2.0 ** (k - 1))

    def partition_sum(self) -> np.ndarray:
        total = np.zeros(self.grid.shape)
        for k in range(self.k_min, self.k_max + 1):
            total = total + self.phi_hat(k)
        return total


def build_phi0(grid: GridSpec, k_min: int, k_max: int) -> LPFamily:
    return LPFamily(grid, k_min, k_max)


@dataclass(frozen=True)
class PsiFamily:
    """Reproducing bumps: plateau on ``|xi| <= 2^(k-1)``, support in
    ``|xi| <= (3/4) 2^k``."""

    grid: GridSpec
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.k_min > self.k_max:
            raise ValueError("empty scale range")
        if 2.0**self.k_max >= self.grid.nyquist:
            raise ValueError(
                f"k_max={self.k_max} reaches the Nyquist radius {self.grid.nyquist}"
            )

    @property
    def psi0_hat(self) -> SampledFunction:
        return SampledFunction(self.grid, self.mother_profile(freq_magnitude(self.grid)))

    @staticmethod
    def mother_profile(t) -> np.ndarray:
        return smooth_plateau(t, PSI_PLATEAU, PSI_SUPPORT)

    def psi_hat(self, k: int) -> np.ndarray:
        """Grid values of ``psi_hat_k(xi) = psi_hat_0(2**-k xi)``."""
        return self.mother_profile(freq_magnitude(self.grid) / 2.0**k)

    def psi_physical(self, k: int) -> SampledFunction:
        """The window ``psi_k = 2^{kd} psi_0(2^k .)`` realized spectrally."""
        return SampledFunction.from_spectrum(self.grid, self.psi_hat(k).astype(complex))


def build_psi0(grid: GridSpec, k_min: int, k_max: int) -> PsiFamily:
    return PsiFamily(grid, k_min, k_max)


@lru_cache(maxsize=32)
def _psi_hat_cached(fam: PsiFamily, k: int) -> np.ndarray:
    out = fam.psi_hat(k)
    out.setflags(write=False)
    return out


def psi_translate(fam: PsiFamily, q: DyadicCube) -> SampledFunction:
    """``|Q|^(1/2) psi_k(x - x_Q)`` sampled on the grid (spectral shift).

    The corner ``x_Q`` is required to be a grid point, so the modulation
    ``exp(-2 pi i <x_Q, xi>)`` is exact on grid frequencies.
    """
    k = q.k
    if not (fam.k_min <= k <= fam.k_max):
        raise ValueError(f"scale {k} outside family range [{fam.k_min}, {fam.k_max}]")
    corner_index(fam.grid, q)  # validates grid alignment and raises otherwise
    corner = q.corner
    axes = freq_values(fam.grid)
    if fam.grid.dim == 1:
        modulation = np.exp(-2j * np.pi * corner[0] * axes[0])
    else:
        modulation = np.exp(-2j * np.pi * corner[0] * axes[0])[:, None] * np.exp(
            -2j * np.pi * corner[1] * axes[1]
        )[None, :]
    amp = q.volume**0.5
    return SampledFunction.from_spectrum(fam.grid, amp * _psi_hat_cached(fam, k) * modulation)
