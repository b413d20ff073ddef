"""Sampled functions on a periodic grid and their spectral calculus.

The computational domain is the torus ``[-L, L)^d`` sampled at ``n`` points
per axis.  The forward transform is normalized as a Riemann sum with cell
volume ``(2L/n)^d`` so that it approximates the continuum transform
``f_hat(xi) = \\int f(x) exp(-2 pi i <x, xi>) dx`` at the grid frequencies
``xi in (1/2L) Z^d``.  With this normalization Plancherel and the
convolution theorem hold on the grid with no stray ``2 pi`` factors.

Spectra are stored in FFT index layout (index 0 = DC).  The unaliased
frequency representative lives in ``(-n/4L, n/4L]`` per axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "GridSpec",
    "SampledFunction",
    "BandRadius",
    "fft_forward",
    "fft_inverse",
    "band_project",
    "bessel_potential",
    "convolve",
    "is_band_limited",
    "is_strictly_band_limited",
    "dyadic_dilate",
    "spectrum_as_function",
    "freq_values",
    "freq_magnitude",
    "x_values",
    "x_magnitude",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on the torus ``[-half_width, half_width)^dim``."""

    dim: int
    n: int
    half_width: float

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if not _is_power_of_two(self.n) or self.n < 8:
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def freq_spacing(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @property
    def nyquist(self) -> float:
        """Largest resolvable frequency magnitude, ``n / (4 L)``."""
        return self.n / (4.0 * self.half_width)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def size(self) -> int:
        return self.n**self.dim


@lru_cache(maxsize=None)
def _axis_phase(n: int) -> np.ndarray:
    # (-1)^j alternation; equals (-1)^m for the frequency index m = j mod n
    # because n is even.
    out = np.ones(n)
    out[1::2] = -1.0
    return out


def _phase(grid: GridSpec) -> np.ndarray:
    p = _axis_phase(grid.n)
    if grid.dim == 1:
        return p
    return np.multiply.outer(p, p)


@lru_cache(maxsize=None)
def _axis_freq_index(n: int) -> np.ndarray:
    # Integer frequency index with the Nyquist representative at +n/2.
    m = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
    m[m == -n // 2] = n // 2
    return m


@lru_cache(maxsize=None)
def freq_values(grid: GridSpec) -> tuple[np.ndarray, ...]:
    """Per-axis frequency values in FFT layout, Nyquist folded to +n/(4L)."""
    vals = _axis_freq_index(grid.n) * grid.freq_spacing
    return (vals,) * grid.dim


@lru_cache(maxsize=None)
def freq_magnitude(grid: GridSpec) -> np.ndarray:
    """Euclidean magnitude |xi| of the unaliased frequency representative."""
    axes = freq_values(grid)
    if grid.dim == 1:
        return np.abs(axes[0])
    fx, fy = np.meshgrid(axes[0], axes[1], indexing="ij")
    return np.sqrt(fx**2 + fy**2)


@lru_cache(maxsize=None)
def x_values(grid: GridSpec) -> tuple[np.ndarray, ...]:
    """Per-axis sample coordinates, ``-L + j h`` for ``j = 0 .. n-1``."""
    ax = -grid.half_width + grid.spacing * np.arange(grid.n)
    return (ax,) * grid.dim


@lru_cache(maxsize=None)
def x_magnitude(grid: GridSpec) -> np.ndarray:
    axes = x_values(grid)
    if grid.dim == 1:
        return np.abs(axes[0])
    gx, gy = np.meshgrid(axes[0], axes[1], indexing="ij")
    return np.sqrt(gx**2 + gy**2)


def freq_points(grid: GridSpec) -> np.ndarray:
    """All grid frequencies as an ``(size, dim)`` array in FFT flat order."""
    axes = freq_values(grid)
    if grid.dim == 1:
        return axes[0][:, None]
    fx, fy = np.meshgrid(axes[0], axes[1], indexing="ij")
    return np.stack([fx.ravel(), fy.ravel()], axis=-1)


class SampledFunction:
    """Complex samples of a function on a :class:`GridSpec`.

    The spectrum (Riemann-normalized discrete Fourier transform) is computed
    lazily and cached; no public operation mutates ``samples``.
    """

    __slots__ = ("grid", "samples", "_spectrum")

    def __init__(self, grid: GridSpec, samples: np.ndarray):
        samples = np.asarray(samples, dtype=np.complex128)
        if samples.shape != grid.shape:
            raise ValueError(f"samples shape {samples.shape} != grid shape {grid.shape}")
        self.grid = grid
        self.samples = samples
        self._spectrum = None

    @classmethod
    def from_spectrum(cls, grid: GridSpec, spectrum: np.ndarray) -> "SampledFunction":
        spectrum = np.asarray(spectrum, dtype=np.complex128)
        if spectrum.shape != grid.shape:
            raise ValueError(f"spectrum shape {spectrum.shape} != grid shape {grid.shape}")
        samples = np.fft.ifftn(spectrum * _phase(grid)) / grid.cell_volume
        out = cls(grid, samples)
        out._spectrum = spectrum.copy()
        return out

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            self._spectrum = self.grid.cell_volume * _phase(self.grid) * np.fft.fftn(self.samples)
        return self._spectrum

    def copy(self) -> "SampledFunction":
        out = SampledFunction(self.grid, self.samples.copy())
        if self._spectrum is not None:
            out._spectrum = self._spectrum.copy()
        return out

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.samples + other.samples)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, self.samples - other.samples)

    def __mul__(self, scalar) -> "SampledFunction":
        return SampledFunction(self.grid, self.samples * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class BandRadius:
    """Dyadic band bookkeeping: effective radius is ``a_constant * 2**k``."""

    k: int
    a_constant: float = 0.25

    def __post_init__(self):
        if not self.a_constant > 0:
            raise ValueError("a_constant must be positive")

    @property
    def radius(self) -> float:
        return self.a_constant * 2.0**self.k

    def fits(self, grid: GridSpec) -> bool:
        return self.radius < grid.nyquist


def _check_same_grid(f: SampledFunction, g: SampledFunction):
    if f.grid != g.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {g.grid}")


def fft_forward(f: SampledFunction) -> SampledFunction:
    """Frequency-side carrier whose samples are the spectrum values."""
    return SampledFunction(f.grid, f.spectrum.copy())


def fft_inverse(F: SampledFunction) -> SampledFunction:
    """Inverse of :func:`fft_forward`; ``F.samples`` are read as a spectrum."""
    return SampledFunction.from_spectrum(F.grid, F.samples)


def band_project(f: SampledFunction, radius: float) -> SampledFunction:
    """Zero the spectrum at grid frequencies with ``|xi| > radius``.

    Refuses ``radius >= nyquist``: beyond the unaliased band the projection
    would silently keep aliased content.
    """
    if radius >= f.grid.nyquist:
        raise ValueError(f"radius {radius} >= Nyquist band radius {f.grid.nyquist}")
    spectrum = f.spectrum.copy()
    spectrum[freq_magnitude(f.grid) > radius] = 0.0
    return SampledFunction.from_spectrum(f.grid, spectrum)


def is_band_limited(f: SampledFunction, radius: float) -> bool:
    """Exact check: spectrum vanishes at every grid frequency with |xi| > radius."""
    return bool(np.all(f.spectrum[freq_magnitude(f.grid) > radius] == 0))


def is_strictly_band_limited(f: SampledFunction, radius: float) -> bool:
    """Exact check with the closed ball excluded: zero for |xi| >= radius."""
    return bool(np.all(f.spectrum[freq_magnitude(f.grid) >= radius] == 0))


def bessel_potential(f: SampledFunction, s: float) -> SampledFunction:
    """Multiply the spectrum pointwise by ``(1 + 4 pi^2 |xi|^2)^(s/2)``."""
    if s == 0:
        return f.copy()
    weight = (1.0 + 4.0 * np.pi**2 * freq_magnitude(f.grid) ** 2) ** (s / 2.0)
    return SampledFunction.from_spectrum(f.grid, f.spectrum * weight)


def convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """Periodic convolution with Riemann-sum normalization (spectral product)."""
    _check_same_grid(f, g)
    return SampledFunction.from_spectrum(f.grid, f.spectrum * g.spectrum)


def dyadic_dilate(f: SampledFunction, k: int) -> SampledFunction:
    """Return ``2**(k d) f(2**k x)`` sampled on the same grid, ``k >= 0``.

    The dilated sample positions ``2**k x_j`` land exactly on grid points
    (periodically wrapped), so this is pure index arithmetic.
    """
    if k < 0:
        raise ValueError("dyadic_dilate supports k >= 0 only")
    n = f.grid.n
    j = np.arange(n)
    idx = ((2**k) * j + (1 - 2**k) * (n // 2)) % n
    if f.grid.dim == 1:
        samples = f.samples[idx]
    else:
        samples = f.samples[np.ix_(idx, idx)]
    return SampledFunction(f.grid, (2.0 ** (k * f.grid.dim)) * samples)


def spectrum_as_function(f: SampledFunction) -> SampledFunction:
    """Reinterpret the spectrum of ``f`` as samples on the dual grid.

    The dual grid is the torus ``[-nyquist, nyquist)^d`` sampled at the
    grid frequencies; index j on the dual grid carries the spectrum value at
    frequency ``(j - n/2) / (2L)``.  Useful for taking Sobolev norms of a
    frequency-side function.
    """
    dual = GridSpec(f.grid.dim, f.grid.n, f.grid.nyquist)
    samples = np.fft.fftshift(f.spectrum)
    return SampledFunction(dual, samples)
