#!/usr/bin/env python3
"""Gallery of maximal operators and the inequalities that drive the theory.

Every sup here ranges over an explicit finite cube family, so small cases
can be checked against brute force; the vector-valued bound and the Peetre
domination are rendered as seeded ensemble constants.
"""

import numpy as np

from lpmult import GridSpec, SampledFunction
from lpmult.maximal import (
    dyadic_maximal,
    dyadic_sharp,
    hl_maximal,
    peetre_maximal,
    power_maximal,
    sharp_vector_functional,
)
from lpmult.norms import lp_lq_norm
from lpmult.profiles import random_band_limited, random_vector_field, trial_rng

grid = GridSpec(1, 128, 4.0)
rng = np.random.default_rng(5)
f = random_band_limited(grid, 2.0, rng)

hl = hl_maximal(f).samples.real
dy = dyadic_maximal(f).samples.real
sharp = dyadic_sharp(f).samples.real
print("pointwise structure on a random band-limited function:")
print(f"  |f| <= dyadic maximal everywhere: {np.all(np.abs(f.samples) <= dy + 1e-12)}")
print(f"  dyadic <= all-window maximal:     {np.all(dy <= hl * (1 + 1e-12))}")
print(f"  sharp <= 2 * dyadic maximal:      {np.all(sharp <= 2 * dy * (1 + 1e-12))}")

k, sigma = 2, 1.0
peetre = peetre_maximal(f, k, sigma).samples.real
ratio = (peetre / power_maximal(f, 1.0).samples.real).max()
print(f"\nPeetre vs averaged maximal, band 2^{k - 1}: sup ratio {ratio:.2f}")

print("\nvector maximal inequality over a seeded ensemble (p = q = 2):")
for n in (128, 256):
    g = GridSpec(1, n, 4.0)
    consts = []
    for seed in range(6):
        field = random_vector_field(g, (0, 2), trial_rng(40, seed), band="class")
        maximal_field = field.map(lambda k, comp: power_maximal(comp, 1.0))
        consts.append(lp_lq_norm(maximal_field, 2, 2) / lp_lq_norm(field, 2, 2))
    print(f"  n = {n}: ensemble constant {max(consts):.4f}")

field = random_vector_field(grid, (0, 2), trial_rng(41, 0), band="class")
lhs = sharp_vector_functional(field, 1.0, 2.0)
rhs = lp_lq_norm(field, 2.0, 1.0)
print(f"\nsharp-functional characterization ratio (q=1 < p=2): {lhs / rhs:.3f}")
