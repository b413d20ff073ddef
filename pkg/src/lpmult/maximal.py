"""Maximal operators: Hardy-Littlewood, power variant, Peetre, dyadic,
dyadic-sharp, and the dyadic sharp vector functional.

Cube families are finite and grid-aligned, so every sup here is a max over
an explicit finite family; continuum sups are approximated from below.
Clarity is preferred over speed everywhere except the FFT paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .cubes import block_reduce, cells_per_axis, max_scale_for_grid, min_scale_for_torus
from .fields import VectorField
from .grid import GridSpec, SampledFunction
from .norms import lp_norm

__all__ = [
    "MaximalConfig",
    "hl_maximal",
    "power_maximal",
    "peetre_maximal",
    "dyadic_maximal",
    "dyadic_sharp",
    "sharp_vector_functional",
]


@dataclass(frozen=True)
class MaximalConfig:
    window: str = "all"  # "all" grid-aligned cubes, or "dyadic"
    t_power: float = 1.0
    sigma: float = 1.5

    def __post_init__(self):
        if self.window not in ("all", "dyadic"):
            raise ValueError("window must be 'all' or 'dyadic'")
        if self.t_power <= 0 or self.sigma <= 0:
            raise ValueError("t_power and sigma must be positive")


def _wrap_pad(arr: np.ndarray, w: int, axis: int) -> np.ndarray:
    lead = arr.take(range(arr.shape[axis] - (w - 1), arr.shape[axis]), axis=axis)
    return np.concatenate([lead, arr], axis=axis)


def _window_sums(mags: np.ndarray, w: int) -> np.ndarray:
    """Sums of |f| over periodic windows of w cells per axis; entry j is the
    window starting at cell j."""
    out = mags
    for axis in range(mags.ndim):
        padded = _wrap_pad(out, w, axis)
        # windows ending at position j correspond to start j-(w-1); roll so
        # entry j is the window *starting* at j.
        sums = sliding_window_view(padded, w, axis=axis).sum(axis=-1)
        out = np.roll(sums, -(w - 1), axis=axis)
    return out


def _containing_max(per_start: np.ndarray, w: int) -> np.ndarray:
    """Max over the w windows containing each point, given per-start values."""
    out = per_start
    for axis in range(per_start.ndim):
        padded = _wrap_pad(out, w, axis)
        out = sliding_window_view(padded, w, axis=axis).max(axis=-1)
    return out


def hl_maximal(f: SampledFunction, config: MaximalConfig | None = None) -> SampledFunction:
    """Hardy-Littlewood maximal function over the configured cube family.

    Default family: all axis-aligned periodic cubes with grid-aligned
    corners and side lengths ``w * spacing``, ``1 <= w <= n``.
    """
    config = config or MaximalConfig()
    if config.window == "dyadic":
        return dyadic_maximal(f)
    mags = np.abs(f.samples)
    n = f.grid.n
    d = f.grid.dim
    best = np.zeros_like(mags)
    for w in range(1, n + 1):
        means = _window_sums(mags, w) / float(w**d)
        np.maximum(best, _containing_max(means, w), out=best)
    return SampledFunction(f.grid, best)


def power_maximal(
    f: SampledFunction, t: float, config: MaximalConfig | None = None
) -> SampledFunction:
    """``(M(|f|^t))^(1/t)``."""
    if t <= 0:
        raise ValueError("t must be positive")
    powered = SampledFunction(f.grid, np.abs(f.samples) ** t)
    return SampledFunction(f.grid, hl_maximal(powered, config).samples.real ** (1.0 / t))


def _torus_offsets(grid: GridSpec) -> np.ndarray:
    """|y| for every grid offset y, wrapped to the representative in [-L, L)."""
    n, L = grid.n, grid.half_width
    offs = grid.spacing * np.arange(n)
    offs = np.where(offs >= L, offs - 2 * L, offs)
    if grid.dim == 1:
        return np.abs(offs)
    ox, oy = np.meshgrid(offs, offs, indexing="ij")
    return np.sqrt(ox**2 + oy**2)


def peetre_maximal(f: SampledFunction, k: int, sigma: float) -> SampledFunction:
    """``sup_y |f(x - y)| / (1 + 2**k |y|)^sigma`` over grid offsets with
    periodic distance."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    mags = np.abs(f.samples)
    weights = (1.0 + 2.0**k * _torus_offsets(f.grid)) ** (-sigma)
    n = f.grid.n
    best = np.zeros_like(mags)
    if f.grid.dim == 1:
        for shift in range(n):
            np.maximum(best, np.roll(mags, shift) * weights[shift], out=best)
    else:
        for s0 in range(n):
            rolled0 = np.roll(mags, s0, axis=0)
            for s1 in range(n):
                np.maximum(
                    best, np.roll(rolled0, s1, axis=1) * weights[s0, s1], out=best
                )
    return SampledFunction(f.grid, best)


def _dyadic_scales(grid: GridSpec) -> range:
    return range(min_scale_for_torus(grid.half_width), max_scale_for_grid(grid) + 1)


def _broadcast_blocks(per_block: np.ndarray, cells: int) -> np.ndarray:
    out = np.repeat(per_block, cells, axis=0)
    if per_block.ndim == 2:
        out = np.repeat(out, cells, axis=1)
    return out


def dyadic_maximal(f: SampledFunction) -> SampledFunction:
    """Sup of |f|-averages over dyadic cubes containing each point."""
    mags = np.abs(f.samples)
    best = np.zeros_like(mags)
    for nu in _dyadic_scales(f.grid):
        cells = cells_per_axis(f.grid, nu)
        means = block_reduce(mags, cells, "mean")
        np.maximum(best, _broadcast_blocks(means, cells), out=best)
    return SampledFunction(f.grid, best)


def dyadic_sharp(f: SampledFunction) -> SampledFunction:
    """Sup over dyadic cubes of the mean oscillation ``avg_P |f - f_P|``."""
    samples = f.samples
    best = np.zeros(f.grid.shape)
    for nu in _dyadic_scales(f.grid):
        cells = cells_per_axis(f.grid, nu)
        means = block_reduce(samples, cells, "mean")
        dev = np.abs(samples - _broadcast_blocks(means, cells))
        osc = block_reduce(dev, cells, "mean")
        np.maximum(best, _broadcast_blocks(osc, cells), out=best)
    return SampledFunction(f.grid, best)


def sharp_vector_functional(field: VectorField, q: float, p: float) -> float:
    """L^p norm in x of the dyadic sharp characterization functional

    ``sup_{P: x in P} ((1/|P|) int_P sum_{k >= scale(P)} |f_k|^q)^(1/q)``.

    Requires ``0 < q < p < inf``.
    """
    if not (0 < q < p < inf):
        raise ValueError("sharp_vector_functional needs 0 < q < p < inf")
    grid = field.grid
    ks = field.scales
    powers = {k: np.abs(field[k].samples) ** q for k in ks}
    best = np.zeros(grid.shape)
    for nu in _dyadic_scales(grid):
        tail_ks = [k for k in ks if k >= nu]
        if not tail_ks:
            continue
        tail = np.zeros(grid.shape)
        for k in tail_ks:
            tail += powers[k]
        cells = cells_per_axis(grid, nu)
        means = block_reduce(tail, cells, "mean")
        np.maximum(best, _broadcast_blocks(means, cells), out=best)
    return lp_norm(best ** (1.0 / q), p, grid.cell_volume)
