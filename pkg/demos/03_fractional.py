"""
Fractional scoring
==================

Paper number r of n owns the percentage interval ((r-1)*100/n, r*100/n] and
receives the width-weighted mean weight of the classes it overlaps. The
weights then always sum to n times the scheme mean, 1.91 for six classes.
"""

# %%
import random
from fractions import Fraction

import numpy as np

from percentrank import FRACTIONAL, SIX_PR, Dataset, Paper, r_indicator, weigh
from percentrank.core import theoretical_mean
from percentrank.oracle import OracleConfig, fractional_weight_bruteforce

for n in (16, 40, 111):
    ds = Dataset(f"n{n}", tuple(Paper(i, "_", i) for i in range(1, n + 1)))
    top = weigh(ds, SIX_PR, FRACTIONAL)[-1].weight
    print(f"n={n:>3}: top paper weight {top} = {float(top):.4f}, share of R {float(top / n):.4f}")

# %%
# Exact rationals against a numpy midpoint-slicing estimate.
n = 37
exact = np.array([float(wp.weight) for wp in weigh(
    Dataset("n37", tuple(Paper(i, "_", i) for i in range(n))), SIX_PR, FRACTIONAL)])
sliced = np.array([fractional_weight_bruteforce(r, n, SIX_PR, OracleConfig(1000)) for r in range(1, n + 1)])
print(f"n={n}: max |exact - sliced(1000)| = {np.abs(exact - sliced).max():.2e}")

# %%
# The total never drifts, whatever the tie structure.
rng = random.Random(7)
totals = set()
for _ in range(200):
    cites = [rng.choice([0, 0, 1, 2, 5]) for _ in range(rng.randint(1, 90))]
    totals.add(r_indicator(Dataset("r", tuple(Paper(i, "_", c) for i, c in enumerate(cites))), SIX_PR, FRACTIONAL))
print("R over 200 random sets:", totals, "theoretical:", theoretical_mean(SIX_PR))
assert totals == {Fraction(191, 100)}
