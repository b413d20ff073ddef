#!/usr/bin/env python3
"""The multiplier-theorem experiment suites.

Norm inequalities over infinite-dimensional spaces cannot be proved on a
grid; what a desk-scale experiment CAN certify is that seeded ensemble max
ratios stay finite and stable under grid refinement, and that the discrete
model is exactly dilation covariant (the uniform-in-scale statement).
"""

from math import inf

from lpmult.multipliers import (
    run_lemma61_suite,
    run_theorem11_suite,
    run_theorem12_suite,
)

print("single-scale bound: ratio ||(m f^)v||_p / (||m(2^k .)||_{L^r_s} ||f||_p)")
rep = run_lemma61_suite(n=512, half_width=4.0, p=0.8, s=1.0, r=1.5, trials=25, seed=1)
print(f"  ensemble max {rep.ensemble_max:.4f}, median {rep.ensemble_median:.4f}")
print(f"  ratio variation across dyadic rescalings k=0..5: "
      f"{rep.trend['k_sweep']['max_relative_variation']:.2e}")
print(f"  ensemble max drift under n -> 2n: {rep.trend['refinement']['drift']:.4f}")

print("\nvector-valued bound in L^p(l^q), several exponent pairs:")
for p, q, s, r in ((0.5, 1.0, 1.75, 1.5), (1.0, 2.0, 0.75, 1.5), (2.0, inf, 0.75, 1.5)):
    rep = run_theorem11_suite(
        n=256, half_width=4.0, k_min=0, k_max=2, p=p, q=q, s=s, r=r,
        trials=40, seed=2,
    )
    print(f"  (p, q) = ({p}, {q}): max ratio {rep.ensemble_max:.4f}, "
          f"drift {rep.trend['refinement']['drift']:.4f}")

print("\ncube-averaged tail norms with a mu sweep (uniformity surrogate):")
rep = run_theorem12_suite(
    n=256, half_width=4.0, k_min=-1, k_max=2, q=1.0, s=0.6, r=2.6,
    mu_values=(-2, -1, 0, 1), trials=30, seed=3,
)
for mu, top in zip(rep.trend["mu_sweep"]["mu"], rep.trend["mu_sweep"]["ensemble_max"]):
    print(f"  mu = {mu:3d}: max ratio {top:.4f}")
print(f"  spread across mu: {rep.trend['mu_sweep']['spread']:.4f}")
