"""Norm functionals: L^p(l^q), dyadic-cube F-infinity norms, discrete
sequence norms, Sobolev norms.

All space-side integrals are Riemann sums with cell volume ``(2L/n)^d``;
``p = inf`` or ``q = inf`` degrade to grid maxima.
"""

from __future__ import annotations

import warnings
from math import inf

import numpy as np

from .cubes import (
    block_reduce,
    cells_per_axis,
    corner_index,
    max_scale_for_grid,
    min_scale_for_torus,
)
from .fields import CubeCoefficients, VectorField
from .grid import GridSpec, SampledFunction, bessel_potential

__all__ = [
    "lp_norm",
    "lq_combine",
    "lp_lq_norm",
    "finfty_q_norm",
    "fpq_discrete_norm",
    "finfty_discrete_norm",
    "sobolev_norm",
    "scale_components",
]


def lp_norm(values: np.ndarray, p: float, cell_volume: float) -> float:
    """Discrete L^p norm of a sample array; grid max for ``p = inf``."""
    mags = np.abs(values)
    if p == inf:
        return float(mags.max())
    if p <= 0:
        raise ValueError("p must be positive")
    return float((cell_volume * (mags**p).sum()) ** (1.0 / p))


def lq_combine(stack: np.ndarray, q: float) -> np.ndarray:
    """Pointwise l^q norm across the leading (scale) axis."""
    mags = np.abs(stack)
    if q == inf:
        return mags.max(axis=0)
    if q <= 0:
        raise ValueError("q must be positive")
    return (mags**q).sum(axis=0) ** (1.0 / q)


def lp_lq_norm(field: VectorField, p: float, q: float) -> float:
    """``|| ||{f_k(x)}||_{l^q} ||_{L^p}`` over the grid."""
    if not field.components:
        warnings.warn("empty scale range: lp_lq_norm is 0", stacklevel=2)
        return 0.0
    inner = lq_combine(field.stack(), q)
    return lp_norm(inner, p, field.grid.cell_volume)


def _admissible_scales(grid: GridSpec, mu: int) -> range:
    lo = max(mu, min_scale_for_torus(grid.half_width))
    hi = max_scale_for_grid(grid)
    if lo > hi:
        raise ValueError(
            f"mu={mu} leaves no dyadic cubes representable on the grid "
            f"(valid scales are {min_scale_for_torus(grid.half_width)}..{hi})"
        )
    return range(lo, hi + 1)


def finfty_q_norm(field: VectorField, q: float, mu: int) -> float:
    """Sup over dyadic ``P`` with side ``<= 2**-mu`` of the cube-averaged
    tail, ``((1/|P|) int_P sum_{k >= scale(P)} |f_k|^q)^(1/q)``.

    The integral is a Riemann sum over the grid cells in ``P``; the scale
    sum truncates at the finest populated component.
    """
    if not 0 < q < inf:
        raise ValueError("finfty_q_norm needs 0 < q < inf")
    grid = field.grid
    scales = _admissible_scales(grid, mu)
    ks = field.scales
    powers = {k: np.abs(field[k].samples) ** q for k in ks}
    best = 0.0
    for nu in scales:
        tail_ks = [k for k in ks if k >= nu]
        if not tail_ks:
            continue
        tail = np.zeros(grid.shape)
        for k in tail_ks:
            tail += powers[k]
        means = block_reduce(tail, cells_per_axis(grid, nu), "mean")
        best = max(best, float(means.max()))
    return best ** (1.0 / q)


def _paint_scale(
    grid: GridSpec, items: list, weight_exponent: float = -0.5
) -> np.ndarray:
    """Render ``|b_Q| |Q|^weight_exponent`` onto the grid cells of each Q."""
    out = np.zeros(grid.shape)
    for q_cube, value in items:
        g = cells_per_axis(grid, q_cube.k)
        idx = corner_index(grid, q_cube)
        val = abs(value) * q_cube.volume**weight_exponent
        if grid.dim == 1:
            out[idx[0] : idx[0] + g] = val
        else:
            out[idx[0] : idx[0] + g, idx[1] : idx[1] + g] = val
    return out


def square_function(b: CubeCoefficients) -> dict[int, np.ndarray]:
    """Per-scale grid rendering of ``|b_Q| |Q|^(-1/2) chi_Q``; at each point
    and scale exactly one cube contributes, so this is a lookup."""
    grid = b.require_grid()
    return {k: _paint_scale(grid, items) for k, items in b.by_scale().items()}


def fpq_discrete_norm(b: CubeCoefficients, p: float, q: float) -> float:
    """Discrete sequence norm: L^p norm of the l^q square function."""
    if not b.entries:
        return 0.0
    grid = b.require_grid()
    layers = square_function(b)
    stack = np.stack(list(layers.values()))
    return lp_norm(lq_combine(stack, q), p, grid.cell_volume)


def finfty_discrete_norm(b: CubeCoefficients, q: float, mu: int) -> float:
    """Closed-form cube-sum norm, integer-indexed (no grid quadrature):

    ``sup_P ((1/|P|) sum_{Q subset P} (|b_Q| |Q|^(-1/2))^q |Q|)^(1/q)``
    over dyadic ``P`` with side ``<= 2**-mu``.
    """
    if not 0 < q < inf:
        raise ValueError("finfty_discrete_norm needs 0 < q < inf")
    if not b.entries:
        return 0.0
    nu_lo = max(mu, min_scale_for_torus(b.half_width))
    totals: dict = {}
    for q_cube, value in b.entries.items():
        if q_cube.k < nu_lo:
            continue
        w = abs(value) ** q * q_cube.volume ** (1.0 - q / 2.0)
        cursor = q_cube
        for nu in range(q_cube.k, nu_lo - 1, -1):
            if cursor.k != nu:
                shift = cursor.k - nu
                cursor = type(cursor)(nu, tuple(li >> shift for li in cursor.l))
            totals[cursor] = totals.get(cursor, 0.0) + w
    if not totals:
        return 0.0
    best = max(total / p_cube.volume for p_cube, total in totals.items())
    return best ** (1.0 / q)


def sobolev_norm(f: SampledFunction, s: float, r: float) -> float:
    """``L^r`` Riemann-sum norm of the Bessel potential ``(I - Lap)^(s/2) f``."""
    return lp_norm(bessel_potential(f, s).samples, r, f.grid.cell_volume)


def scale_components(field: VectorField, alpha: float) -> VectorField:
    """Weight component k by ``2**(alpha k)`` (smoothness-index pre-scaling)."""
    return field.map(lambda k, f: (2.0 ** (alpha * k)) * f, band_constant=field.band_constant)
