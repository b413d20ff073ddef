"""Adaptive Simpson quadrature.

Kept deliberately independent of the grid machinery: radial integrals in
the sharpness construction use this as a separate evaluation channel, so a
grid bug and a quadrature bug cannot cancel.
"""

from __future__ import annotations

__all__ = ["adaptive_simpson"]


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f,
    a: float,
    b: float,
    rtol: float = 1e-9,
    max_depth: int = 50,
    min_depth: int = 5,
) -> float:
    """Integrate ``f`` on ``[a, b]`` to the requested relative tolerance.

    ``min_depth`` forces a few initial bisections so that an integrand whose
    oscillation is commensurate with the first Simpson nodes cannot pass the
    error test spuriously.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    scale = max(abs(whole), 1e-300)

    def recurse(a, fa, b, fb, m, fm, whole, depth):
        lm, flm, left = _simpson(f, a, fa, m, fm)
        rm, frm, right = _simpson(f, m, fm, b, fb)
        delta = left + right - whole
        deep_enough = depth <= max_depth - min_depth
        if depth <= 0 or (deep_enough and abs(delta) <= 15.0 * rtol * scale):
            return left + right + delta / 15.0
        return recurse(a, fa, m, fm, lm, flm, left, depth - 1) + recurse(
            m, fm, b, fb, rm, frm, right, depth - 1
        )

    return recurse(a, fa, b, fb, m, fm, whole, max_depth)
