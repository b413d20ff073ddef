"""Integer-indexed dyadic cubes and block reductions on grid arrays.

A cube ``Q_{k,l}`` has side ``2**-k`` and lower-left corner ``2**-k * l``;
all geometry (containment, enumeration, dilation) is integer arithmetic.
Cubes are half-open ``[corner, corner + side)`` so that at each scale every
point lies in exactly one cube.  A cube is valid on a torus ``[-L, L)^d``
only if it fits without wrapping, which for ``L = 2**j`` means scales
``k >= -j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

import numpy as np

__all__ = [
    "DyadicCube",
    "DyadicBox",
    "cubes_in",
    "cubes_at_scale",
    "cube_fits_torus",
    "min_scale_for_torus",
    "max_scale_for_grid",
    "ancestor",
    "concentric_dilate",
    "corner_index",
    "cells_per_axis",
    "block_reduce",
]


@dataclass(frozen=True)
class DyadicCube:
    k: int
    l: tuple[int, ...]

    def __post_init__(self):
        if len(self.l) < 1:
            raise ValueError("l must have at least one entry")

    @property
    def dim(self) -> int:
        return len(self.l)

    @property
    def side(self) -> float:
        return 2.0**-self.k

    @property
    def volume(self) -> float:
        return 2.0 ** (-self.k * self.dim)

    @property
    def corner(self) -> tuple[float, ...]:
        return tuple(2.0**-self.k * li for li in self.l)

    def contains(self, other: "DyadicCube") -> bool:
        """True iff ``other`` is contained in this cube (dyadic nesting)."""
        if other.dim != self.dim or self.k > other.k:
            return False
        shift = other.k - self.k
        return all(lo >> shift == ls for lo, ls in zip(other.l, self.l))

    def contains_point(self, x) -> bool:
        side = self.side
        return all(ci <= xi < ci + side for ci, xi in zip(self.corner, np.atleast_1d(x)))


@dataclass(frozen=True)
class DyadicBox:
    """Axis-aligned union of same-scale cubes: corner ``lo`` (inclusive) and
    ``side_cubes`` cubes per axis, all in scale-k integer units."""

    k: int
    lo: tuple[int, ...]
    side_cubes: int

    def contains_cube(self, q: DyadicCube) -> bool:
        if q.k < self.k:
            return False
        shift = q.k - self.k
        return all(
            lo <= (ql >> shift) < lo + self.side_cubes for lo, ql in zip(self.lo, q.l)
        )


def ancestor(q: DyadicCube, scale: int) -> DyadicCube:
    """The unique cube of the given coarser scale containing ``q``."""
    if scale > q.k:
        raise ValueError("ancestor scale must be <= cube scale")
    shift = q.k - scale
    return DyadicCube(scale, tuple(li >> shift for li in q.l))


def cubes_in(k: int, parent: DyadicCube) -> list[DyadicCube]:
    """All ``2**((k - parent.k) * d)`` scale-k cubes inside ``parent``.

    Returns [] for ``k < parent.k`` (no finer-than-parent enumeration).
    """
    if k < parent.k:
        return []
    span = 2 ** (k - parent.k)
    base = tuple(li * span for li in parent.l)
    d = parent.dim
    if d == 1:
        return [DyadicCube(k, (base[0] + i,)) for i in range(span)]
    return [
        DyadicCube(k, (base[0] + i, base[1] + j))
        for i in range(span)
        for j in range(span)
    ]


def min_scale_for_torus(half_width: float) -> int:
    """Coarsest scale whose cubes fit in ``[-L, L)`` without wrapping."""
    j = log2(half_width)
    if j != int(j):
        raise ValueError("half_width must be a power of two for dyadic tiling")
    return -int(j)


def max_scale_for_grid(grid) -> int:
    """Finest scale whose cubes still contain at least one grid cell."""
    return int(log2(grid.n / (2 * grid.half_width)))


def cube_fits_torus(q: DyadicCube, half_width: float) -> bool:
    lim = half_width * 2.0**q.k
    return all(-lim <= li and li + 1 <= lim for li in q.l)


def cubes_at_scale(k: int, half_width: float, dim: int) -> list[DyadicCube]:
    """Every scale-k cube inside the torus, lexicographic order."""
    lim = half_width * 2.0**k
    if lim < 1:
        return []
    lim = int(lim)
    rng = range(-lim, lim)
    if dim == 1:
        return [DyadicCube(k, (i,)) for i in rng]
    return [DyadicCube(k, (i, j)) for i in rng for j in rng]


def concentric_dilate(q: DyadicCube, factor: int) -> DyadicBox:
    """Concentric dilate by an odd integer factor, as a same-scale box."""
    if factor < 1 or factor % 2 == 0:
        raise ValueError("dilation factor must be a positive odd integer")
    r = (factor - 1) // 2
    return DyadicBox(q.k, tuple(li - r for li in q.l), factor)


def cells_per_axis(grid, k: int) -> int:
    """Grid cells per cube axis at scale k; refuses off-grid corners."""
    ratio = grid.n * 2.0**-k / (2.0 * grid.half_width)
    if ratio != int(ratio) or ratio < 1:
        raise ValueError(
            f"scale {k} cubes are not grid-aligned on n={grid.n}, L={grid.half_width}"
        )
    return int(ratio)


def corner_index(grid, q: DyadicCube) -> tuple[int, ...]:
    """Grid index of the cube's lower-left corner."""
    g = cells_per_axis(grid, q.k)
    return tuple(g * li + grid.n // 2 for li in q.l)


def block_reduce(arr: np.ndarray, cells: int, op: str = "mean") -> np.ndarray:
    """Reduce an array over disjoint blocks of ``cells`` per axis."""
    if arr.ndim == 1:
        view = arr.reshape(arr.shape[0] // cells, cells)
        axes = 1
    else:
        n0, n1 = arr.shape
        view = arr.reshape(n0 // cells, cells, n1 // cells, cells)
        axes = (1, 3)
    if op == "mean":
        return view.mean(axis=axes)
    if op == "sum":
        return view.sum(axis=axes)
    if op == "max":
        return view.max(axis=axes)
    raise ValueError(f"unknown block op {op!r}")
