"""Exponent bookkeeping: critical indices and admissibility windows.

Every validator returns a list of human-readable violation strings with the
computed left/right values, so a caller can surface exactly which
inequality failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

__all__ = [
    "tau_sp",
    "tau_spq",
    "ExponentTuple",
    "validate_lemma61",
    "validate_theorem11",
    "validate_theorem12",
    "validate_counterexample",
]


def _tau(s: float, floor_exponent: float, d: int) -> float:
    denom = s - (d / floor_exponent - d)
    if denom == 0:
        return inf
    return d / denom


def tau_sp(s: float, p: float, d: int) -> float:
    """``d / (s - (d/min(1,p) - d))``."""
    return _tau(s, min(1.0, p), d)


def tau_spq(s: float, p: float, q: float, d: int) -> float:
    """``d / (s - (d/min(1,p,q) - d))``."""
    return _tau(s, min(1.0, p, q), d)


@dataclass(frozen=True)
class ExponentTuple:
    p: float
    q: float
    s: float
    r: float
    d: int = 1

    def __post_init__(self):
        if not (0 < self.p <= inf and 0 < self.q <= inf):
            raise ValueError("p and q must lie in (0, inf]")
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        if not (1 < self.r < inf):
            raise ValueError("r must lie in (1, inf)")

    @property
    def tau_sp(self) -> float:
        return tau_sp(self.s, self.p, self.d)

    @property
    def tau_spq(self) -> float:
        return tau_spq(self.s, self.p, self.q, self.d)


def _window(violations: list, name: str, lo: float, value: float, hi: float):
    if not lo < value:
        violations.append(f"require {name} > {lo:.6g}: got {name} = {value:.6g}")
    if not value < hi:
        violations.append(f"require {name} < {hi:.6g}: got {name} = {value:.6g}")


def validate_lemma61(p: float, s: float, r: float, d: int) -> list[str]:
    """Window ``|d/p - d/2| < s < d/min(1,p)`` and ``r > tau(s,p)``."""
    v: list[str] = []
    dp = 0.0 if p == inf else d / p
    _window(v, "s", abs(dp - d / 2), s, d / min(1.0, p))
    tau = tau_sp(s, p, d)
    if not r > tau:
        v.append(f"require r > tau(s,p) = {tau:.6g}: got r = {r:.6g}")
    return v


def validate_theorem11(p: float, q: float, s: float, r: float, d: int) -> list[str]:
    """Window ``max(|d/p-d/2|, |d/q-d/2|) < s < d/min(1,p,q)``, ``r > tau(s,p,q)``."""
    v: list[str] = []
    dp = 0.0 if p == inf else d / p
    dq = 0.0 if q == inf else d / q
    lo = max(abs(dp - d / 2), abs(dq - d / 2))
    _window(v, "s", lo, s, d / min(1.0, p, q))
    tau = tau_spq(s, p, q, d)
    if not r > tau:
        v.append(f"require r > tau(s,p,q) = {tau:.6g}: got r = {r:.6g}")
    return v


def validate_theorem12(q: float, s: float, r: float, d: int) -> list[str]:
    """Window ``|d/q - d/2| < s < d/min(1,q)`` and ``r > tau(s,q)``."""
    v: list[str] = []
    if not 0 < q < inf:
        v.append(f"require 0 < q < inf: got q = {q:.6g}")
        return v
    _window(v, "s", abs(d / q - d / 2), s, d / min(1.0, q))
    tau = tau_sp(s, q, d)
    if not r > tau:
        v.append(f"require r > tau(s,q) = {tau:.6g}: got r = {r:.6g}")
    return v


def validate_counterexample(p: float, q: float, s: float, gamma: float, d: int) -> list[str]:
    """Window ``d/min(1,p,q) - d < s < d/min(1,p,q)`` and
    ``2/tau(s,p,q) < gamma < 2/min(1,p,q)``."""
    v: list[str] = []
    m = min(1.0, p, q)
    _window(v, "s", d / m - d, s, d / m)
    tau = tau_spq(s, p, q, d)
    if not 2.0 / tau < gamma:
        v.append(f"require gamma > 2/tau(s,p,q) = {2.0 / tau:.6g}: got gamma = {gamma:.6g}")
    if not gamma < 2.0 / m:
        v.append(f"require gamma < 2/min(1,p,q) = {2.0 / m:.6g}: got gamma = {gamma:.6g}")
    return v
