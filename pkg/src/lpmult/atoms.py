"""Cube-supported atoms for the discrete sequence spaces and a constructive
level-set decomposition.

The decomposition buckets coefficients by the dyadic threshold level their
square function clears, groups each bucket by the maximal dyadic cubes of
the level set, and normalizes each group by a power of two.  Power-of-two
normalizers make the reconstruction ``sum_j lambda_j r_j = b`` exact in
floating point (scaling by ``2**e`` is lossless), at the cost of at most a
factor 2 in the scalar bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, log2

import numpy as np

from .cubes import DyadicCube, min_scale_for_torus
from .fields import CubeCoefficients

__all__ = ["InfinityAtom", "verify_atom", "decompose_atoms"]


@dataclass
class InfinityAtom:
    support_cube: DyadicCube
    coefficients: CubeCoefficients
    p: float
    q: float


def _cell_geometry(entries: dict, half_width: float):
    k_hi = max(q.k for q in entries)
    offset = round(half_width * 2.0**k_hi)
    n_cells = 2 * offset
    return k_hi, offset, n_cells


def _paint_cells(entries: dict, half_width: float, q: float):
    """Square-function data on the finest-scale cell lattice.

    Returns (k_hi, offset, acc) where acc holds ``sum (|b||Q|^-1/2)^q`` per
    cell for finite q, or the running max for q = inf.
    """
    k_hi, offset, n_cells = _cell_geometry(entries, half_width)
    dim = len(next(iter(entries)).l)
    acc = np.zeros((n_cells,) * dim)
    for cube, value in entries.items():
        span = 2 ** (k_hi - cube.k)
        lo = tuple(li * span + offset for li in cube.l)
        contrib = abs(value) * cube.volume**-0.5
        sl = tuple(slice(a, a + span) for a in lo)
        if q == inf:
            np.maximum(acc[sl], contrib, out=acc[sl])
        else:
            acc[sl] += contrib**q
    return k_hi, offset, acc


def _gq_sup(entries: dict, half_width: float, q: float) -> float:
    """Exact sup of the l^q square function, integer-indexed."""
    if not entries:
        return 0.0
    _, _, acc = _paint_cells(entries, half_width, q)
    top = float(acc.max())
    return top if q == inf else top ** (1.0 / q)


def verify_atom(atom: InfinityAtom) -> bool:
    """Check the support condition and the sup-density bound
    ``||g^q(r)||_inf <= |Q_0|^(-1/p)`` by integer-indexed evaluation (no
    grid quadrature).  The comparison carries a 1e-12 relative slack so a
    case scaled exactly to the boundary is not rejected for the ulp lost in
    the power round-trip."""
    entries = {q: v for q, v in atom.coefficients.entries.items() if v != 0}
    if not all(atom.support_cube.contains(cube) for cube in entries):
        return False
    bound = atom.support_cube.volume ** (-1.0 / atom.p)
    return _gq_sup(entries, atom.coefficients.half_width, atom.q) <= bound * (1.0 + 1e-12)


def _pow2_at_least(target: float) -> int:
    """Exponent e with 2**e >= target * (1 + 1e-12); the margin absorbs
    re-evaluation round-off in the certified bound."""
    e = int(np.ceil(np.log2(target)))
    while 2.0**e < target * (1.0 + 1e-12):
        e += 1
    return e


def decompose_atoms(
    b: CubeCoefficients, p: float, q: float
) -> tuple[list[float], list[InfinityAtom]]:
    """Split ``b`` into scalars and atoms with exact reconstruction.

    Requires ``0 < p <= 1`` and ``p <= q <= inf``.  Every returned atom
    passes :func:`verify_atom`; ``sum_j lambda_j * atom_j`` reproduces the
    coefficients with zero tolerance.
    """
    if not 0 < p <= 1:
        raise ValueError("decompose_atoms needs 0 < p <= 1")
    if q < p:
        raise ValueError("decompose_atoms needs q >= p")
    entries = {cube: v for cube, v in b.entries.items() if v != 0}
    if not entries:
        return [], []

    half_width = b.half_width
    nu_lo = min_scale_for_torus(half_width)
    k_hi, offset, acc = _paint_cells(entries, half_width, q)
    gamma = acc if q == inf else acc ** (1.0 / q)

    # Threshold level of each entry: largest j with the whole cube above 2^j.
    def level(cube: DyadicCube) -> int:
        span = 2 ** (k_hi - cube.k)
        sl = tuple(slice(li * span + offset, (li + 1) * span + offset) for li in cube.l)
        m = float(gamma[sl].min())
        j = int(np.floor(np.log2(m)))
        if 2.0**j >= m:
            j -= 1
        return j

    buckets: dict[int, list[DyadicCube]] = {}
    for cube in entries:
        buckets.setdefault(level(cube), []).append(cube)

    lambdas: list[float] = []
    atoms: list[InfinityAtom] = []
    for j in sorted(buckets, reverse=True):
        covered = gamma > 2.0**j
        # Fully-covered indicator per scale, finest to coarsest.
        full = {k_hi: covered}
        for nu in range(k_hi - 1, nu_lo - 1, -1):
            child = full[nu + 1]
            if child.ndim == 1:
                full[nu] = child.reshape(-1, 2).all(axis=1)
            else:
                m0, m1 = child.shape
                full[nu] = child.reshape(m0 // 2, 2, m1 // 2, 2).all(axis=(1, 3))

        def maximal_ancestor(cube: DyadicCube) -> DyadicCube:
            best = cube
            for nu in range(cube.k - 1, nu_lo - 1, -1):
                shift = cube.k - nu
                cand = DyadicCube(nu, tuple(li >> shift for li in cube.l))
                idx = tuple(li + round(half_width * 2.0**nu) for li in cand.l)
                if full[nu][idx]:
                    best = cand
                else:
                    break
            return best

        groups: dict[DyadicCube, dict] = {}
        for cube in buckets[j]:
            m_cube = maximal_ancestor(cube)
            groups.setdefault(m_cube, {})[cube] = entries[cube]

        for m_cube in sorted(groups, key=lambda c: (c.k, c.l)):
            group = groups[m_cube]
            sup = _gq_sup(group, half_width, q)
            lam = 2.0 ** _pow2_at_least(sup * m_cube.volume ** (1.0 / p))
            scaled = {cube: v / lam for cube, v in group.items()}
            atoms.append(
                InfinityAtom(
                    m_cube,
                    CubeCoefficients(scaled, half_width, b.grid),
                    p,
                    q,
                )
            )
            lambdas.append(lam)
    return lambdas, atoms
