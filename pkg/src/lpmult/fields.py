"""Vector fields (dyadically band-limited families) and cube coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cubes import DyadicCube, cube_fits_torus, cells_per_axis, min_scale_for_torus
from .grid import GridSpec, SampledFunction, is_band_limited

__all__ = ["VectorField", "CubeCoefficients"]


class VectorField:
    """Finite family ``{f_k}`` with each ``f_k`` band-limited to
    ``band_constant * 2**(k+1)`` (checked exactly on the grid).

    Construction also enforces the grid-compatibility contract used by the
    cube-corner transform: scale-``k_max`` cube corners must be grid points
    and scale-``k_min`` cubes must fit inside the torus.
    """

    __slots__ = ("grid", "components", "band_constant")

    def __init__(
        self,
        grid: GridSpec,
        components: dict[int, SampledFunction],
        band_constant: float = 0.25,
        _validate: bool = True,
    ):
        self.grid = grid
        self.components = dict(sorted(components.items()))
        self.band_constant = band_constant
        if _validate and components:
            self._validate()

    @classmethod
    def unchecked(
        cls, grid: GridSpec, components: dict[int, SampledFunction], band_constant: float = 0.25
    ) -> "VectorField":
        """Skip band validation (for derived families such as maximal-function
        outputs that are no longer band-limited)."""
        return cls(grid, components, band_constant, _validate=False)

    def _validate(self):
        k_min, k_max = self.k_range
        if cells_per_axis(self.grid, k_max) < 1:
            raise ValueError("finest-scale cube corners are not grid points")
        if k_min < min_scale_for_torus(self.grid.half_width):
            raise ValueError(
                f"scale {k_min} cubes do not fit inside the torus "
                f"[-{self.grid.half_width}, {self.grid.half_width})"
            )
        for k, f in self.components.items():
            if f.grid != self.grid:
                raise ValueError(f"component {k} lives on a different grid")
            radius = self.band_constant * 2.0 ** (k + 1)
            if radius >= self.grid.nyquist:
                raise ValueError(f"band radius {radius} at scale {k} reaches Nyquist")
            if not is_band_limited(f, radius):
                raise ValueError(f"component {k} is not band-limited to {radius}")

    @property
    def k_range(self) -> tuple[int, int]:
        ks = self.components.keys()
        return min(ks), max(ks)

    @property
    def scales(self) -> list[int]:
        return list(self.components.keys())

    def __getitem__(self, k: int) -> SampledFunction:
        return self.components[k]

    def __contains__(self, k: int) -> bool:
        return k in self.components

    def items(self):
        return self.components.items()

    def map(self, fn, band_constant: float | None = None) -> "VectorField":
        """Apply ``fn`` to every component; output is left unchecked."""
        out = {k: fn(k, f) for k, f in self.components.items()}
        bc = self.band_constant if band_constant is None else band_constant
        return VectorField.unchecked(self.grid, out, bc)

    def stack(self) -> np.ndarray:
        """Samples stacked along a leading scale axis (ascending k)."""
        return np.stack([f.samples for f in self.components.values()])


@dataclass
class CubeCoefficients:
    """Map from dyadic cubes to complex coefficients.

    ``grid`` is optional: it is required for grid-quadrature norms and for
    synthesis, while the purely combinatorial operations (discrete norms,
    atoms) only need ``half_width`` to know the torus.
    """

    entries: dict[DyadicCube, complex]
    half_width: float
    grid: GridSpec | None = None

    def __post_init__(self):
        for q, v in self.entries.items():
            if not cube_fits_torus(q, self.half_width):
                raise ValueError(f"cube {q} does not fit inside the torus")
            if not np.isfinite(v):
                raise ValueError(f"non-finite coefficient at {q}")

    @property
    def scales(self) -> list[int]:
        return sorted({q.k for q in self.entries})

    def by_scale(self) -> dict[int, list[tuple[DyadicCube, complex]]]:
        out: dict[int, list[tuple[DyadicCube, complex]]] = {}
        for q, v in self.entries.items():
            out.setdefault(q.k, []).append((q, v))
        return {k: out[k] for k in sorted(out)}

    def require_grid(self) -> GridSpec:
        if self.grid is None:
            raise ValueError("this operation needs coefficients bound to a grid")
        return self.grid

    def __len__(self) -> int:
        return len(self.entries)
