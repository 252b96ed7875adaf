"""
Tie policies side by side
=========================

The same nine snapshots scored under every counting rule and tie policy.
Averaging weights (rather than ranks) is the only discrete policy that keeps
the totals flat, because the papers' positions themselves never move.
"""

# %%
from percentrank import SIX_PR, i3
from percentrank.evolution import example_a, replay
from percentrank.scoring import CountingRule, ScoringPolicy, TiePolicy

snapshots = replay(example_a())
policies = [ScoringPolicy(c, t) for c in CountingRule for t in TiePolicy]
policies.append(ScoringPolicy(fractional=True))

print(f"{'policy':<28}" + "".join(f"{s.label:>7}" for s in snapshots))
for policy in policies:
    row = [i3(s, SIX_PR, policy) for s in snapshots]
    cells = "".join(f"{float(v):>7.2f}" for v in row)
    flat = "  flat" if len(set(row)) == 1 else ""
    print(f"{str(policy):<28}{cells}{flat}")

# %%
# Averaged ranks: 12 uncited and 18 singly cited papers, then one citation more.
from percentrank import Dataset
from percentrank.scoring import group_weights

avg_rank = ScoringPolicy(ties=TiePolicy.AVERAGE_RANK)
for counts in ({0: 12, 1: 18, 3: 6, 5: 2, 7: 2}, {0: 11, 1: 19, 3: 6, 5: 2, 7: 2}):
    ds = Dataset.from_counts("pg", counts)
    pct, k, w = group_weights(ds, SIX_PR, avg_rank)[1]
    print(f"{counts[1]} singly cited: mean percentile {float(pct):.4f} -> class {k}, "
          f"I3 = {i3(ds, SIX_PR, avg_rank)}")
